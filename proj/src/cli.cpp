#include "hstoda/cli.hpp"

#include "hstoda/closed_form.hpp"
#include "hstoda/json_io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace hstoda {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

DeformationSequence sequence_from_json(const json& j, int n, const char* what) {
    try {
        if (j.is_number()) return DeformationSequence::constant(n, j.get<double>());
        if (!j.is_array()) throw ConfigError(std::string(what) + " must be a number or an array");
        auto v = j.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != n) throw ConfigError(std::string(what) + " must have n entries");
        return DeformationSequence(std::move(v));
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

std::vector<InvariantId> ids_from_json(const json& j, const char* what) {
    std::vector<InvariantId> ids;
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of invariant ids");
    for (const auto& e : j) {
        if (!e.is_string()) throw ConfigError(std::string(what) + " entries must be strings");
        try {
            ids.push_back(InvariantId::parse(e.get<std::string>()));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string(what) + ": " + ex.what());
        }
    }
    return ids;
}

RunMode mode_from_string(const std::string& s) {
    if (s == "verify") return RunMode::verify;
    if (s == "simulate") return RunMode::simulate;
    if (s == "casimir") return RunMode::casimir;
    if (s == "closed-form") return RunMode::closed_form;
    if (s == "sweep") return RunMode::sweep;
    throw ConfigError("unknown mode '" + s + "'");
}

const char* mode_name(RunMode m) {
    switch (m) {
        case RunMode::verify: return "verify";
        case RunMode::simulate: return "simulate";
        case RunMode::casimir: return "casimir";
        case RunMode::closed_form: return "closed-form";
        case RunMode::sweep: return "sweep";
    }
    return "?";
}

void write_file(const fs::path& p, const std::string& s) {
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

void write_json(const fs::path& p, const json& j) { write_file(p, j.dump(2) + "\n"); }

DeformationSequence sequence_a(const RunConfig& cfg, std::mt19937_64& rng) {
    if (cfg.a) return *cfg.a;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(cfg.n));
    for (auto& x : v) x = u(rng);
    return DeformationSequence(v);
}

BracketKind make_kind(const RunConfig& cfg, const DeformationSequence& a) {
    const std::string kind = get_or<std::string>(cfg.bracket, "kind", "plus_alpha");
    try {
        if (kind == "canonical") return BracketKind::canonical(cfg.n);
        if (kind == "plus_alpha") return BracketKind::plus_alpha(build_alpha(a));
        if (kind == "minus0") return BracketKind::minus0(cfg.n);
        if (kind == "eta") {
            DiagonalVector eta = cfg.bracket.contains("eta") ? vector_from_json(cfg.bracket["eta"]) : build_alpha(a).eta;
            if (eta.size() != cfg.n) throw ConfigError("bracket.eta must have n entries");
            return BracketKind::eta_kind(eta);
        }
        if (kind == "k_diagonal") return BracketKind::k_diagonal(cfg.n, get_or<int>(cfg.bracket, "k", 2));
        if (kind == "pencil") {
            if (!cfg.b) throw ConfigError("pencil bracket needs sequence b");
            return BracketKind::pencil(a, *cfg.b, get_or<double>(cfg.bracket, "eps", 1.0));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bracket: ") + e.what());
    }
    throw ConfigError("unknown bracket kind '" + kind + "'");
}

InvariantContext make_context(const RunConfig& cfg, const DeformationSequence& a) {
    return cfg.b ? InvariantContext(a, *cfg.b) : InvariantContext(a);
}

ScalarField make_hamiltonian(const json& h, const InvariantContext& ctx, int n) {
    try {
        if (h.is_string()) {
            const auto s = h.get<std::string>();
            if (s == "cubic") return cubic_hamiltonian();
            return invariant_field(InvariantId::parse(s), ctx);
        }
        if (h.is_object() && h.contains("terms")) {
            ScalarField sum = ScalarField::constant(0.0);
            for (const auto& t : h["terms"])
                sum = sum + t.value("coef", 1.0) * make_hamiltonian(t.at("id"), ctx, n);
            return sum;
        }
        if (h.is_object() && h.contains("linear")) {
            Operator W = operator_from_json(h["linear"]);
            if (W.rows() != n || W.cols() != n) throw ConfigError("hamiltonian.linear must be n x n");
            return ScalarField::linear(W);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("hamiltonian: ") + e.what());
    }
    throw ConfigError("hamiltonian must be an invariant id, \"cubic\", {\"terms\": [...]} or {\"linear\": [[...]]}");
}

Operator make_initial(const RunConfig& cfg, const BracketKind& kind, std::mt19937_64& rng) {
    if (cfg.initial.contains("matrix")) {
        Operator p;
        try {
            p = operator_from_json(cfg.initial["matrix"]);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("initial.matrix: ") + e.what());
        }
        if (p.rows() != cfg.n || p.cols() != cfg.n) throw ConfigError("initial.matrix must be n x n");
        try {
            check_point(kind, p);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("initial.matrix: ") + e.what());
        }
        return p;
    }
    const double scale = cfg.initial.contains("random") ? get_or<double>(cfg.initial["random"], "scale", 0.5) : 0.5;
    std::normal_distribution<double> nd(0.0, 1.0);
    Operator p = Operator::Zero(cfg.n, cfg.n);
    for (auto [i, j] : chart(kind)) p(i, j) = scale * nd(rng);
    return p;
}

json drift_json(const ConservationReport& rep) {
    json inv = json::object();
    for (const auto& [name, st] : rep.invariants)
        inv[name] = {{"initial", st.initial}, {"max_abs_drift", st.max_abs}, {"max_rel_drift", st.max_rel}};
    return {{"invariants", inv}, {"state_max_drift", rep.state_max_drift}};
}

json header(const RunConfig& cfg) { return {{"mode", mode_name(cfg.mode)}, {"n", cfg.n}, {"seed", cfg.seed}}; }

std::vector<std::pair<std::string, TrajectoryFunction>> invariant_functions(const std::vector<InvariantId>& ids,
                                                                            const BracketKind& kind,
                                                                            const InvariantContext& ctx) {
    std::vector<std::pair<std::string, TrajectoryFunction>> fns;
    for (const auto& id : ids)
        fns.emplace_back(id.name(), [kind, ctx, id](const Eigen::VectorXd& v) {
            return eval_invariant(id, ctx, unpack_chart(kind, v));
        });
    return fns;
}

// ---- modes ---------------------------------------------------------------------------

int run_simulate(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const auto a = sequence_a(cfg, rng);
    const auto kind = make_kind(cfg, a);
    const auto ctx = make_context(cfg, a);
    if (cfg.hamiltonian.is_null()) throw ConfigError("simulate needs a hamiltonian");
    const auto h = make_hamiltonian(cfg.hamiltonian, ctx, cfg.n);
    const Operator p0 = make_initial(cfg, kind, rng);
    const auto names = chart_names(kind);
    for (const auto& c : cfg.plot_coordinates)
        if (std::find(names.begin(), names.end(), c) == names.end())
            throw ConfigError("plot coordinate '" + c + "' is not in the chart");

    const Trajectory traj = flow(kind, h, p0, cfg.integrator);
    write_file(cfg.out_dir / "trajectory.csv", trajectory_csv(traj));
    auto fns = invariant_functions(cfg.watch, kind, ctx);
    fns.emplace_back("hamiltonian", [&](const Eigen::VectorXd& v) { return h(unpack_chart(kind, v)); });
    json out = header(cfg);
    out["a"] = a.values();
    out["conservation"] = drift_json(conservation_report(traj, fns));
    write_json(cfg.out_dir / "conservation.json", out);
    if (!cfg.plot_coordinates.empty() || !cfg.plot_invariants.empty())
        write_file(cfg.out_dir / "plot.csv",
                   emit_plot_columns(traj, cfg.plot_coordinates, invariant_functions(cfg.plot_invariants, kind, ctx)));
    return exit_ok;
}

int run_casimir(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const auto a = sequence_a(cfg, rng);
    const auto kind = make_kind(cfg, a);
    const auto ctx = make_context(cfg, a);
    const Operator p0 = make_initial(cfg, kind, rng);
    json vals = json::object();
    for (const auto& id : cfg.watch) {
        double v;
        try {
            v = eval_invariant(id, ctx, p0);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(id.name() + ": " + e.what());
        }
        vals[id.name()] = v;
        std::cout << id.name() << " " << format_double(v) << "\n";
    }
    json out = header(cfg);
    out["a"] = a.values();
    out["point"] = to_json(p0);
    out["values"] = vals;
    write_json(cfg.out_dir / "casimir.json", out);
    return exit_ok;
}

int run_verify(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const auto a = sequence_a(cfg, rng);
    const auto checks = run_verify_suite(cfg.n, a, rng);
    bool all = true;
    json arr = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        arr.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << format_double(c.residual)
                  << " tol=" << format_double(c.tolerance) << "\n";
    }
    json out = header(cfg);
    out["a"] = a.values();
    out["checks"] = arr;
    out["pass"] = all;
    write_json(cfg.out_dir / "verify.json", out);
    return all ? exit_ok : exit_checks_failed;
}

ComplexState closed_form_state(const RunConfig& cfg, std::mt19937_64& rng) {
    const int dim = cfg.n - 2;
    if (dim < 2 || dim > 4) throw ConfigError("closed-form mode needs n in {4, 5, 6}");
    const json& c = cfg.closed_form;
    ComplexState s;
    s.a = get_or<double>(c, "a", 0.9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> nd(0.0, 1.0);
    if (c.contains("delta")) {
        try {
            s.delta = operator_from_json(c["delta"]);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("closed_form.delta: ") + e.what());
        }
        if (s.delta.rows() != dim || s.delta.cols() != dim || !is_strictly_upper(s.delta))
            throw ConfigError("closed_form.delta must be a strictly upper (n-2) x (n-2) matrix");
    } else {
        s.delta = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) s.delta(i, j) = u(rng);
    }
    if (c.contains("z_re") || c.contains("z_im")) {
        Eigen::VectorXd re, im;
        try {
            re = vector_from_json(c.at("z_re"));
            im = vector_from_json(c.at("z_im"));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("closed_form.z_re / z_im: ") + e.what());
        }
        if (re.size() != dim || im.size() != dim) throw ConfigError("closed_form.z_re / z_im must have n-2 entries");
        s.z = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
    } else {
        const double scale = get_or<double>(c, "scale", 0.5);
        s.z.resize(dim);
        for (int i = 0; i < dim; ++i) s.z(i) = scale * Complex(nd(rng), nd(rng));
    }
    return s;
}

int run_closed_form(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const ComplexState s0 = closed_form_state(cfg, rng);
    const int dim = s0.dim();
    IntegratorConfig ic = cfg.integrator;
    ic.t0 = 0.0;
    ic.t1 = get_or<double>(cfg.closed_form, "t1", dim == 2 ? 5.0 : 3.0);
    ic.samples = get_or<int>(cfg.closed_form, "samples", 101);
    const Trajectory oracle = cubic_flow(s0, ic);

    json out = header(cfg);
    out["a"] = s0.a;
    out["delta"] = to_json(Operator(s0.delta));
    out["z0_re"] = to_json(DiagonalVector(s0.z.real()));
    out["z0_im"] = to_json(DiagonalVector(s0.z.imag()));
    out["t1"] = ic.t1;
    out["samples"] = ic.samples;

    std::function<Eigen::VectorXcd(double)> zfun;
    std::optional<N2Solution> n2;
    std::optional<N34Solution> n34;
    if (dim == 2) {
        n2 = solve_n2(s0);
        out["solver"] = n2->quadrature ? "trigonometric-quadrature" : "trigonometric";
        out["omega1"] = n2->omega1;
        out["varrho"] = n2->varrho;
        out["c2"] = n2->c2;
        const auto chk = n2_invariant_checks(*n2, oracle.t);
        out["norm_residual"] = chk.max_norm_residual;
        out["area_residual"] = chk.max_area_residual;
        zfun = [&](double t) { return n2->z(t); };
    } else {
        n34.emplace(solve_n34(s0));
        out["solver"] = "quartic-quadrature";
        out["r1_range"] = {n34->r_lo(), n34->r_hi()};
        out["r1_period"] = n34->period();
        out["varrho"] = n34->params().varrho;
        zfun = [&](double t) { return n34->z(t); };
    }

    Trajectory closed;
    closed.names = oracle.names;
    Eigen::VectorXd maxe = Eigen::VectorXd::Zero(2 * dim), sume = Eigen::VectorXd::Zero(2 * dim);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        const Eigen::VectorXd v = pack_complex(zfun(oracle.t[i]));
        closed.t.push_back(oracle.t[i]);
        closed.states.push_back(v);
        const Eigen::VectorXd e = (v - oracle.states[i]).cwiseAbs();
        maxe = maxe.cwiseMax(e);
        sume += e;
    }
    json comps = json::object();
    for (Eigen::Index k = 0; k < maxe.size(); ++k)
        comps[oracle.names[static_cast<std::size_t>(k)]] = {{"max", maxe(k)},
                                                             {"mean", sume(k) / static_cast<double>(oracle.size())}};
    out["components"] = comps;
    out["max_error"] = maxe.maxCoeff();
    out["mean_error"] = sume.sum() / static_cast<double>(oracle.size() * static_cast<std::size_t>(maxe.size()));
    write_file(cfg.out_dir / "closed_form.csv", trajectory_csv(closed));
    write_file(cfg.out_dir / "oracle.csv", trajectory_csv(oracle));
    write_json(cfg.out_dir / "closed_form.json", out);
    std::cout << "closed-form max error " << format_double(maxe.maxCoeff()) << "\n";
    return exit_ok;
}

int run_sweep(const RunConfig& cfg) {
    const json& sw = cfg.sweep;
    if (!sw.contains("base") || !sw["base"].is_object()) throw ConfigError("sweep.base must be a config object");
    if (!sw.contains("values") || !sw["values"].is_array()) throw ConfigError("sweep.values must be an array");
    const std::string param = get_or<std::string>(sw, "parameter", "/seed");
    const int threads = std::max(1, get_or<int>(sw, "threads", 1));
    const auto& values = sw["values"];

    std::vector<RunConfig> runs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        json c = sw["base"];
        try {
            c[json::json_pointer(param)] = values[i];
        } catch (const json::exception& e) {
            throw ConfigError(std::string("sweep.parameter: ") + e.what());
        }
        if (c.value("mode", "") == "sweep") throw ConfigError("sweep base cannot itself be a sweep");
        if (!c.contains("seed")) c["seed"] = cfg.seed;
        RunConfig rc = parse_config(c);
        rc.out_dir = cfg.out_dir / ("run_" + std::to_string(i));
        runs.push_back(std::move(rc));
    }

    std::vector<int> codes(runs.size(), exit_ok);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) codes[i] = run(runs[i]);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(runs.size())); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    json out = header(cfg);
    out["parameter"] = param;
    json arr = json::array();
    int worst = exit_ok;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        arr.push_back({{"index", i}, {"value", values[i]}, {"exit_code", codes[i]}, {"dir", "run_" + std::to_string(i)}});
        worst = std::max(worst, codes[i]);
    }
    out["runs"] = arr;
    write_json(cfg.out_dir / "sweep.json", out);
    return worst;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string s = "t";
    for (const auto& n : traj.names) s += "," + n;
    s += "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        s += format_double(traj.t[i]);
        for (Eigen::Index k = 0; k < traj.states[i].size(); ++k) s += "," + format_double(traj.states[i](k));
        s += "\n";
    }
    return s;
}

std::string emit_plot_columns(const Trajectory& traj, const std::vector<std::string>& coordinates,
                              const std::vector<std::pair<std::string, TrajectoryFunction>>& invariants) {
    std::vector<Eigen::Index> cols;
    for (const auto& c : coordinates) {
        auto it = std::find(traj.names.begin(), traj.names.end(), c);
        if (it == traj.names.end()) throw std::invalid_argument("unknown plot column '" + c + "'");
        cols.push_back(static_cast<Eigen::Index>(it - traj.names.begin()));
    }
    std::string s = "t";
    for (const auto& c : coordinates) s += "," + c;
    for (const auto& inv : invariants) s += "," + inv.first;
    s += "\n";
    if (coordinates.empty() && invariants.empty()) return s;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        s += format_double(traj.t[i]);
        for (auto c : cols) s += "," + format_double(traj.states[i](c));
        for (const auto& inv : invariants) s += "," + format_double(inv.second(traj.states[i]));
        s += "\n";
    }
    return s;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known{"mode",  "n",     "seed",      "a",           "b",     "bracket",
                                                "hamiltonian", "initial", "integrator", "watch", "plot",
                                                "closed_form", "sweep", "output", "description"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config field '" + key + "'");

    RunConfig cfg;
    cfg.raw = j;
    if (!j.contains("mode")) throw ConfigError("config needs a mode");
    cfg.mode = mode_from_string(get_or<std::string>(j, "mode", ""));
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    if (j.contains("output")) cfg.out_dir = get_or<std::string>(j["output"], "dir", "out");
    if (cfg.mode == RunMode::sweep) {
        cfg.sweep = j.value("sweep", json::object());
        return cfg;
    }
    if (!j.contains("n")) throw ConfigError("config needs n");
    cfg.n = get_or<int>(j, "n", 0);
    if (cfg.n < 2 || cfg.n > 64) throw ConfigError("n must be in [2, 64]");
    if (j.contains("a")) cfg.a = sequence_from_json(j["a"], cfg.n, "a");
    if (j.contains("b")) cfg.b = sequence_from_json(j["b"], cfg.n, "b");
    cfg.bracket = j.value("bracket", json::object());
    if (!cfg.bracket.is_object()) throw ConfigError("bracket must be an object");
    cfg.hamiltonian = j.value("hamiltonian", json());
    cfg.initial = j.value("initial", json::object());
    cfg.closed_form = j.value("closed_form", json::object());

    const json ij = j.value("integrator", json::object());
    const std::string method = get_or<std::string>(ij, "method", "dopri5");
    if (method == "dopri5")
        cfg.integrator.method = Method::dopri5;
    else if (method == "rk4")
        cfg.integrator.method = Method::rk4;
    else
        throw ConfigError("integrator.method must be dopri5 or rk4");
    cfg.integrator.rtol = get_or<double>(ij, "rtol", cfg.integrator.rtol);
    cfg.integrator.atol = get_or<double>(ij, "atol", cfg.integrator.atol);
    cfg.integrator.t0 = get_or<double>(ij, "t0", cfg.integrator.t0);
    cfg.integrator.t1 = get_or<double>(ij, "t1", cfg.integrator.t1);
    cfg.integrator.samples = get_or<int>(ij, "samples", cfg.integrator.samples);
    cfg.integrator.rk4_step = get_or<double>(ij, "rk4_step", cfg.integrator.rk4_step);
    cfg.integrator.max_steps = get_or<std::size_t>(ij, "max_steps", cfg.integrator.max_steps);
    if (!(cfg.integrator.rtol > 0) || !(cfg.integrator.atol > 0) || !(cfg.integrator.t1 > cfg.integrator.t0) ||
        cfg.integrator.samples < 2 || !(cfg.integrator.rk4_step > 0))
        throw ConfigError("integrator settings out of range");

    if (j.contains("watch")) cfg.watch = ids_from_json(j["watch"], "watch");
    if (j.contains("plot")) {
        const json& p = j["plot"];
        if (p.contains("coordinates")) cfg.plot_coordinates = get_or<std::vector<std::string>>(p, "coordinates", {});
        if (p.contains("invariants")) cfg.plot_invariants = ids_from_json(p["invariants"], "plot.invariants");
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    try {
        switch (cfg.mode) {
            case RunMode::verify: return run_verify(cfg);
            case RunMode::simulate: return run_simulate(cfg);
            case RunMode::casimir: return run_casimir(cfg);
            case RunMode::closed_form: return run_closed_form(cfg);
            case RunMode::sweep: return run_sweep(cfg);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalError& e) {
        json err = header(cfg);
        err["error"] = e.what();
        err["time"] = e.time();
        write_json(cfg.out_dir / "error.json", err);
        std::cerr << "numerical failure at t = " << format_double(e.time()) << ": " << e.what() << "\n";
        return exit_numerical;
    } catch (const DegenerateModulusError& e) {
        json err = header(cfg);
        err["error"] = e.what();
        write_json(cfg.out_dir / "error.json", err);
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}

int run_file(const fs::path& config, std::optional<std::uint64_t> seed, std::optional<fs::path> out) {
    json j;
    try {
        std::ifstream f(config);
        if (!f) throw ConfigError("cannot open config " + config.string());
        j = json::parse(f);
        if (seed) j["seed"] = *seed;
        RunConfig cfg = parse_config(j);
        if (out) cfg.out_dir = *out;
        return run(cfg);
    } catch (const json::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
}

}  // namespace hstoda
