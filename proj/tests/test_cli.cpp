#include "hstoda/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace hstoda;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hstoda_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

const fs::path configs = fs::path(HSTODA_SOURCE_DIR) / "configs";

}  // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(parse_config(json{{"mode", "verify"}, {"n", 4}}));
    CHECK_THROWS_AS(parse_config(json{{"mode", "verify"}, {"n", 4}, {"typo", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"n", 4}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"mode", "dance"}, {"n", 4}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"mode", "verify"}, {"n", 4}, {"a", {0.5, 0.5}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"mode", "verify"}, {"n", 4}, {"a", 2.0}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"mode", "simulate"}, {"n", 4}, {"integrator", {{"method", "euler"}}}}), ConfigError);
    const auto cfg = parse_config(json{{"mode", "simulate"}, {"n", 4}, {"seed", 9}, {"output", {{"dir", "elsewhere"}}}});
    CHECK(cfg.mode == RunMode::simulate);
    CHECK(cfg.seed == 9);
    CHECK(cfg.out_dir == fs::path("elsewhere"));
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch_dir("exit");
    CHECK(run_file(dir / "missing.json", std::nullopt, dir) == exit_config);
    {
        std::ofstream(dir / "broken.json") << "{ not json";
        CHECK(run_file(dir / "broken.json", std::nullopt, dir) == exit_config);
    }
    CHECK(run_file(write_config(dir, {{"mode", "simulate"}, {"n", 4}}), std::nullopt, dir) == exit_config);
    // z = 0 has no closed-form modulus
    const json degenerate{{"mode", "closed-form"},
                          {"n", 4},
                          {"closed_form", {{"a", 0.5}, {"delta", {{0.0, 0.7}, {0.0, 0.0}}}, {"z_re", {0.0, 0.0}}, {"z_im", {0.0, 0.0}}}}};
    const fs::path out = dir / "degenerate";
    CHECK(run_file(write_config(dir, degenerate), std::nullopt, out) == exit_numerical);
    CHECK(fs::exists(out / "error.json"));
}

TEST_CASE("verify mode is deterministic for a seed") {
    const fs::path dir = scratch_dir("verify");
    CHECK(run_file(configs / "verify.json", std::nullopt, dir / "one") == exit_ok);
    CHECK(run_file(configs / "verify.json", std::nullopt, dir / "two") == exit_ok);
    CHECK(slurp(dir / "one" / "verify.json") == slurp(dir / "two" / "verify.json"));
    CHECK(run_file(configs / "verify.json", 43, dir / "three") == exit_ok);
    const json three = json::parse(slurp(dir / "three" / "verify.json"));
    CHECK(three["seed"] == 43);
    CHECK(three["pass"] == true);
    CHECK(slurp(dir / "one" / "verify.json") != slurp(dir / "three" / "verify.json"));
}

TEST_CASE("simulate writes a trajectory and a constant Casimir column") {
    const fs::path dir = scratch_dir("simulate");
    REQUIRE(run_file(configs / "simulate_casimir.json", std::nullopt, dir) == exit_ok);
    std::istringstream plot(slurp(dir / "plot.csv"));
    std::string line;
    std::getline(plot, line);
    CHECK(line == "t,rho_0_1,rho_1_2,Ik_alpha:k=1");
    std::vector<double> casimir;
    while (std::getline(plot, line)) {
        const auto cut = line.rfind(',');
        casimir.push_back(std::stod(line.substr(cut + 1)));
    }
    REQUIRE(casimir.size() == 41);
    for (double v : casimir) CHECK(v == doctest::Approx(casimir.front()).epsilon(1e-10));
    CHECK(fs::exists(dir / "trajectory.csv"));
    const json cons = json::parse(slurp(dir / "conservation.json"));
    CHECK(cons.is_object());
}

TEST_CASE("plot columns") {
    Trajectory tr;
    tr.names = {"u", "v"};
    tr.t = {0.0, 0.5};
    tr.states = {Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(3.0, 4.0)};
    CHECK(emit_plot_columns(tr, {}, {}) == "t\n");
    CHECK(emit_plot_columns(tr, {"v"}, {{"sum", [](const Eigen::VectorXd& x) { return x.sum(); }}}) ==
          "t,v,sum\n0,2,3\n0.5,4,7\n");
    CHECK_THROWS_AS(emit_plot_columns(tr, {"w"}, {}), std::invalid_argument);
    CHECK(trajectory_csv(tr) == "t,u,v\n0,1,2\n0.5,3,4\n");
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
    std::mt19937_64 g(1);
    std::normal_distribution<double> nd(0.0, 1e3);
    for (int i = 0; i < 100; ++i) {
        const double x = nd(g);
        CHECK(std::stod(format_double(x)) == x);
    }
}
