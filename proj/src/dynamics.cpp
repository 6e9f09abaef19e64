#include "hstoda/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hstoda {

namespace {

const Complex I1(0.0, 1.0);

Eigen::Vector2cd eps_apply(const Eigen::Vector2cd& v) { return {v(1), -v(0)}; }

void require_block(int n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": block chart needs N >= 2");
}

Eigen::MatrixXd skew(const Eigen::MatrixXd& delta) { return delta - delta.transpose(); }

}  // namespace

// ---- chart flows ----------------------------------------------------------------

Eigen::VectorXd pack_chart(const BracketKind& kind, const Operator& point) {
    const auto coords = chart(kind);
    Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t c = 0; c < coords.size(); ++c) v(static_cast<Eigen::Index>(c)) = point(coords[c].first, coords[c].second);
    return v;
}

Operator unpack_chart(const BracketKind& kind, const Eigen::VectorXd& v) {
    const auto coords = chart(kind);
    if (static_cast<std::size_t>(v.size()) != coords.size())
        throw std::invalid_argument("state size does not match the chart");
    Operator p = Operator::Zero(kind.n, kind.n);
    for (std::size_t c = 0; c < coords.size(); ++c) p(coords[c].first, coords[c].second) = v(static_cast<Eigen::Index>(c));
    return p;
}

std::vector<std::string> chart_names(const BracketKind& kind) {
    std::vector<std::string> names;
    for (auto [i, j] : chart(kind)) names.push_back("rho_" + std::to_string(i) + "_" + std::to_string(j));
    return names;
}

Trajectory flow(const BracketKind& kind, const ScalarField& h, const Operator& point, const IntegratorConfig& cfg) {
    check_point(kind, point);
    Rhs rhs = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        dx = pack_chart(kind, ham_vector_field(kind, h, unpack_chart(kind, x)));
    };
    return integrate(rhs, pack_chart(kind, point), cfg, chart_names(kind));
}

// ---- block chart -------------------------------------------------------------------

Operator to_plus(const BlockState& s) {
    const int n = s.dim();
    Operator r = Operator::Zero(n + 2, n + 2);
    r(0, 1) = s.a;
    r.block(0, 2, 1, n) = s.x.transpose();
    r.block(1, 2, 1, n) = s.y.transpose();
    r.bottomRightCorner(n, n) = strictly_upper(s.delta);
    return r;
}

BlockState block_from_plus(const Operator& rho) {
    const int n = static_cast<int>(rho.rows()) - 2;
    require_block(n, "block_from_plus");
    BlockState s;
    s.a = rho(0, 1);
    s.x = rho.block(0, 2, 1, n).transpose();
    s.y = rho.block(1, 2, 1, n).transpose();
    s.delta = strictly_upper(rho.bottomRightCorner(n, n));
    return s;
}

BlockGradient block_gradient_from_plus(const Operator& grad) {
    const int n = static_cast<int>(grad.rows()) - 2;
    require_block(n, "block_gradient_from_plus");
    BlockGradient g;
    g.ha = grad(0, 1);
    g.hx = grad.block(0, 2, 1, n).transpose();
    g.hy = grad.block(1, 2, 1, n).transpose();
    g.hdelta = strictly_upper(grad.bottomRightCorner(n, n));
    return g;
}

BlockTangent block_rhs(const BlockState& s, const BlockGradient& g) {
    const Eigen::MatrixXd K = skew(s.delta);
    const Eigen::MatrixXd H = g.hdelta - g.hdelta.transpose();
    BlockTangent d;
    d.a = s.y.dot(g.hx) - s.x.dot(g.hy);
    d.x = -g.ha * s.y + K * g.hx + s.a * g.hy - H * s.x;
    d.y = g.ha * s.x + K * g.hy - s.a * g.hx - H * s.y;
    const Eigen::MatrixXd M = g.hx * s.x.transpose() + g.hy * s.y.transpose() + s.delta * H - H * s.delta;
    d.delta = strictly_upper(M) - strictly_lower(M).transpose();
    return d;
}

// ---- complex chart -----------------------------------------------------------------

ComplexState to_complex(const BlockState& s) {
    ComplexState c;
    c.z = s.x.cast<Complex>() + I1 * s.y.cast<Complex>();
    c.a = s.a;
    c.delta = s.delta;
    return c;
}

BlockState to_block(const ComplexState& s) {
    BlockState b;
    b.a = s.a;
    b.x = s.z.real();
    b.y = s.z.imag();
    b.delta = s.delta;
    return b;
}

Eigen::VectorXcd complex_rhs(const ComplexState& s, const BlockGradient& g) {
    const Eigen::MatrixXcd K = skew(s.delta).cast<Complex>();
    const Eigen::MatrixXcd H = (g.hdelta - g.hdelta.transpose()).cast<Complex>();
    const Eigen::VectorXcd dh_dzbar = 0.5 * (g.hx.cast<Complex>() + I1 * g.hy.cast<Complex>());
    const Eigen::Index n = s.z.size();
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(n, n);
    return (-H + I1 * g.ha * Id) * s.z + 2.0 * (K - I1 * s.a * Id) * dh_dzbar;
}

Eigen::VectorXcd cubic_rhs(const ComplexState& s, double c2) {
    const Eigen::MatrixXcd K = skew(s.delta).cast<Complex>();
    const Complex zz = s.z.cwiseProduct(s.z).sum();
    const Eigen::VectorXcd zbar = s.z.conjugate();
    const Eigen::VectorXcd half = (1.0 + c2) * (K * s.z) - I1 * s.a * (1.0 + c2) * s.z - zz * (K * zbar - I1 * s.a * zbar);
    return 2.0 * half;
}

ScalarField cubic_hamiltonian() {
    ScalarField f;
    f.eval = [](const Operator& r) {
        const double h2 = h_block(2, r);
        return 0.5 * (h_block(1, r) - h_block(4, r)) + h2 * h2;
    };
    f.grad = [](const Operator& r) {
        const double h2 = h_block(2, r);
        Operator g = 0.5 * (h_block_gradient(1, r) - h_block_gradient(4, r)) + 2.0 * h2 * h_block_gradient(2, r);
        return g;
    };
    return f;
}

Eigen::VectorXd pack_complex(const Eigen::VectorXcd& z) {
    Eigen::VectorXd v(2 * z.size());
    v << z.real(), z.imag();
    return v;
}

Eigen::VectorXcd unpack_complex(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size() / 2;
    return v.head(n).cast<Complex>() + I1 * v.tail(n).cast<Complex>();
}

Trajectory cubic_flow(const ComplexState& s0, const IntegratorConfig& cfg) {
    const double c2 = s0.z.squaredNorm();
    ComplexState s = s0;
    Rhs rhs = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        s.z = unpack_complex(x);
        dx = pack_complex(cubic_rhs(s, c2));
    };
    std::vector<std::string> names;
    for (int i = 0; i < s0.dim(); ++i) names.push_back("re_z_" + std::to_string(i));
    for (int i = 0; i < s0.dim(); ++i) names.push_back("im_z_" + std::to_string(i));
    return integrate(rhs, pack_complex(s0.z), cfg, names);
}

CubicInvariants cubic_invariants(const ComplexState& s) {
    const Operator r = to_plus(to_block(s));
    CubicInvariants out{};
    for (int m = 1; m <= 5; ++m) out.h[static_cast<std::size_t>(m - 1)] = h_block(m, r);
    out.c2 = s.z.squaredNorm();
    out.varrho2 = std::norm(Complex(s.z.cwiseProduct(s.z).sum()));
    const Eigen::MatrixXcd K = skew(s.delta).cast<Complex>();
    const Complex v = s.z.dot(K * (K * s.z)) + I1 * s.a * s.z.dot(K * s.z);
    out.combo_5dd = v.real();
    return out;
}

// ---- skew normal form ---------------------------------------------------------------

SkewNormalForm skew_normal_form(const Eigen::MatrixXd& delta) {
    const Eigen::Index n = delta.rows();
    SkewNormalForm nf;
    nf.odd = (n % 2) == 1;
    if (n == 0) {
        nf.O = Eigen::MatrixXd(0, 0);
        nf.lambdas = Eigen::VectorXd(0);
        return nf;
    }
    const Eigen::MatrixXd K = skew(delta);
    Eigen::RealSchur<Eigen::MatrixXd> schur(K);
    const Eigen::MatrixXd& T = schur.matrixT();
    const Eigen::MatrixXd& U = schur.matrixU();

    struct Pair {
        double lambda;
        Eigen::VectorXd u, v;
    };
    std::vector<Pair> blocks;
    std::vector<Eigen::VectorXd> zeros;
    for (Eigen::Index i = 0; i < n;) {
        if (i + 1 < n && T(i + 1, i) != 0.0) {
            const double b = 0.5 * (T(i, i + 1) - T(i + 1, i));
            if (b >= 0)
                blocks.push_back({b, U.col(i), U.col(i + 1)});
            else
                blocks.push_back({-b, U.col(i + 1), U.col(i)});
            i += 2;
        } else {
            zeros.push_back(U.col(i));
            i += 1;
        }
    }
    for (std::size_t z = 0; z + 1 < zeros.size(); z += 2) blocks.push_back({0.0, zeros[z], zeros[z + 1]});
    std::stable_sort(blocks.begin(), blocks.end(), [](const Pair& p, const Pair& q) { return p.lambda > q.lambda; });

    auto first_significant = [](const Eigen::VectorXd& v) {
        for (Eigen::Index k = 0; k < v.size(); ++k)
            if (std::abs(v(k)) > 1e-12) return v(k);
        return 1.0;
    };
    nf.O = Eigen::MatrixXd::Zero(n, n);
    nf.lambdas.resize(static_cast<Eigen::Index>(blocks.size()));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        auto& b = blocks[k];
        if (b.lambda == 0.0) {
            if (first_significant(b.u) < 0) b.u = -b.u;
            if (first_significant(b.v) < 0) b.v = -b.v;
        } else if (first_significant(b.u) < 0) {
            b.u = -b.u;
            b.v = -b.v;
        }
        const auto r = static_cast<Eigen::Index>(2 * k);
        nf.O.row(r) = b.u.transpose();
        nf.O.row(r + 1) = b.v.transpose();
        nf.lambdas(static_cast<Eigen::Index>(k)) = b.lambda;
    }
    if (nf.odd) {
        Eigen::VectorXd w = zeros.back();
        if (first_significant(w) < 0) w = -w;
        nf.O.row(n - 1) = w.transpose();
    }
    return nf;
}

ReducedState reduce(const ComplexState& s) { return reduce(s, skew_normal_form(s.delta)); }

ReducedState reduce(const ComplexState& s, const SkewNormalForm& nf) {
    if (nf.O.rows() != s.z.size()) throw std::invalid_argument("normal form size does not match the state");
    ReducedState r;
    r.O = nf.O;
    r.lambdas = nf.lambdas;
    const Eigen::VectorXcd xi = nf.O.cast<Complex>() * s.z;
    for (Eigen::Index k = 0; k < nf.lambdas.size(); ++k) r.xi.emplace_back(xi(2 * k), xi(2 * k + 1));
    if (nf.odd) r.xi0 = xi(xi.size() - 1);
    return r;
}

Eigen::VectorXcd unreduce(const ReducedState& r) {
    const Eigen::Index n = r.O.rows();
    Eigen::VectorXcd xi(n);
    for (std::size_t k = 0; k < r.xi.size(); ++k) xi.segment<2>(static_cast<Eigen::Index>(2 * k)) = r.xi[k];
    if (r.xi0) xi(n - 1) = *r.xi0;
    return r.O.transpose().cast<Complex>() * xi;
}

// ---- reduced chart -------------------------------------------------------------------

namespace {

Complex total_eta(const ReducedState& s) {
    Complex S = 0.0;
    for (const auto& x : s.xi) S += x.cwiseProduct(x).sum();
    if (s.xi0) S += (*s.xi0) * (*s.xi0);
    return S;
}

}  // namespace

ReducedTangent reduced_rhs(const ReducedState& s, double a, double c2) {
    const Complex S = total_eta(s);
    ReducedTangent d;
    for (std::size_t k = 0; k < s.xi.size(); ++k) {
        const double l = s.lambdas(static_cast<Eigen::Index>(k));
        const Eigen::Vector2cd& x = s.xi[k];
        const Eigen::Vector2cd xb = x.conjugate();
        d.dxi.push_back(2.0 * (l * (1.0 + c2) * eps_apply(x) - I1 * a * (1.0 + c2) * x -
                               S * (l * eps_apply(xb) - I1 * a * xb)));
    }
    if (s.xi0) {
        const Complex x0 = *s.xi0;
        d.dxi0 = 2.0 * (-I1 * a * (1.0 + c2) * x0 + I1 * a * S * std::conj(x0));
    }
    return d;
}

Eigen::VectorXd pack_reduced(const ReducedState& s) {
    const Eigen::Index m = static_cast<Eigen::Index>(s.xi.size());
    Eigen::VectorXd v(4 * m + (s.xi0 ? 2 : 0));
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto& x = s.xi[static_cast<std::size_t>(k)];
        v.segment<4>(4 * k) << x(0).real(), x(0).imag(), x(1).real(), x(1).imag();
    }
    if (s.xi0) v.tail<2>() << s.xi0->real(), s.xi0->imag();
    return v;
}

ReducedState unpack_reduced(const Eigen::VectorXd& v, const ReducedState& shape) {
    ReducedState s = shape;
    const Eigen::Index m = static_cast<Eigen::Index>(shape.xi.size());
    if (v.size() != 4 * m + (shape.xi0 ? 2 : 0)) throw std::invalid_argument("reduced state size mismatch");
    for (Eigen::Index k = 0; k < m; ++k)
        s.xi[static_cast<std::size_t>(k)] = Eigen::Vector2cd(Complex(v(4 * k), v(4 * k + 1)), Complex(v(4 * k + 2), v(4 * k + 3)));
    if (shape.xi0) s.xi0 = Complex(v(4 * m), v(4 * m + 1));
    return s;
}

Trajectory reduced_flow(const ReducedState& s0, double a, const IntegratorConfig& cfg) {
    double c2 = 0.0;
    for (const auto& x : s0.xi) c2 += x.squaredNorm();
    if (s0.xi0) c2 += std::norm(*s0.xi0);
    Rhs rhs = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        const ReducedState s = unpack_reduced(x, s0);
        const ReducedTangent d = reduced_rhs(s, a, c2);
        ReducedState ds = s0;
        ds.xi = d.dxi;
        ds.xi0 = d.dxi0;
        dx = pack_reduced(ds);
    };
    std::vector<std::string> names;
    for (std::size_t k = 0; k < s0.xi.size(); ++k)
        for (const char* part : {"re_xi_%_1", "im_xi_%_1", "re_xi_%_2", "im_xi_%_2"}) {
            std::string nm(part);
            nm.replace(nm.find('%'), 1, std::to_string(k + 1));
            names.push_back(nm);
        }
    if (s0.xi0) {
        names.push_back("re_xi_0");
        names.push_back("im_xi_0");
    }
    return integrate(rhs, pack_reduced(s0), cfg, names);
}

// ---- rotating frame ---------------------------------------------------------------------

std::vector<Complex> block_etas(const ReducedState& s) {
    std::vector<Complex> etas;
    for (const auto& x : s.xi) etas.push_back(x.cwiseProduct(x).sum());
    if (s.xi0) etas.push_back((*s.xi0) * (*s.xi0));
    return etas;
}

RotatedParams rotated_params(const ReducedState& s, double a) {
    RotatedParams p;
    p.a = a;
    p.odd = s.xi0.has_value();
    const Eigen::Index m = static_cast<Eigen::Index>(s.xi.size()) + (p.odd ? 1 : 0);
    p.lambdas = Eigen::VectorXd::Zero(m);
    p.c = Eigen::VectorXd::Zero(m);
    p.c2 = 0.0;
    for (std::size_t k = 0; k < s.xi.size(); ++k) {
        const auto& x = s.xi[k];
        const double l = s.lambdas(static_cast<Eigen::Index>(k));
        const double u = x.squaredNorm();
        const Complex w = x.dot(eps_apply(x));
        p.lambdas(static_cast<Eigen::Index>(k)) = l;
        p.c(static_cast<Eigen::Index>(k)) = (l * u - I1 * a * w).real();
        p.c2 += u;
    }
    if (p.odd) p.c2 += std::norm(*s.xi0);
    p.varrho = std::abs(total_eta(s));
    return p;
}

RotatedState to_rotated(const ReducedState& s, double a) {
    const auto etas = block_etas(s);
    const Complex S = total_eta(s);
    const Eigen::Index m = static_cast<Eigen::Index>(etas.size());
    RotatedState r;
    r.phi = std::arg(S);
    r.q.resize(m);
    r.p.resize(m);
    r.r.resize(m);
    const Complex rot = std::polar(1.0, -r.phi);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Complex e = rot * etas[static_cast<std::size_t>(k)];
        r.q(k) = e.real();
        r.p(k) = e.imag();
    }
    for (std::size_t k = 0; k < s.xi.size(); ++k) {
        const auto& x = s.xi[k];
        const double l = s.lambdas(static_cast<Eigen::Index>(k));
        r.r(static_cast<Eigen::Index>(k)) = (a * x.squaredNorm() - I1 * l * x.dot(eps_apply(x))).real();
    }
    if (s.xi0) r.r(m - 1) = a * std::norm(*s.xi0);
    return r;
}

std::vector<Complex> etas_from_rotated(const RotatedState& s) {
    std::vector<Complex> etas;
    const Complex rot = std::polar(1.0, s.phi);
    for (Eigen::Index k = 0; k < s.q.size(); ++k) etas.push_back(rot * Complex(s.q(k), s.p(k)));
    return etas;
}

RotatedState rotated_rhs(const RotatedState& s, const RotatedParams& p) {
    const double R = s.r.sum();
    RotatedState d;
    const Eigen::ArrayXd A = p.a * p.a - p.lambdas.array().square();
    d.q = 4.0 * R * s.p;
    d.p = -4.0 * R * s.q + 4.0 * p.varrho * s.r;
    d.r = (4.0 * p.varrho * A * s.p.array()).matrix();
    d.phi = phase_rhs(s, p);
    return d;
}

double phase_rhs(const RotatedState& s, const RotatedParams& p) { return -4.0 * p.a * (1.0 + p.c2) + 4.0 * s.r.sum(); }

Eigen::VectorXd pack_rotated(const RotatedState& s) {
    const Eigen::Index m = s.q.size();
    Eigen::VectorXd v(3 * m + 1);
    v << s.q, s.p, s.r, s.phi;
    return v;
}

RotatedState unpack_rotated(const Eigen::VectorXd& v, std::size_t m) {
    const auto mm = static_cast<Eigen::Index>(m);
    if (v.size() != 3 * mm + 1) throw std::invalid_argument("rotated state size mismatch");
    RotatedState s;
    s.q = v.segment(0, mm);
    s.p = v.segment(mm, mm);
    s.r = v.segment(2 * mm, mm);
    s.phi = v(3 * mm);
    return s;
}

Trajectory rotated_flow(const RotatedState& s0, const RotatedParams& p, const IntegratorConfig& cfg) {
    const std::size_t m = static_cast<std::size_t>(s0.q.size());
    Rhs rhs = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        dx = pack_rotated(rotated_rhs(unpack_rotated(x, m), p));
    };
    std::vector<std::string> names;
    for (const char* base : {"q", "p", "r"})
        for (std::size_t k = 0; k < m; ++k) {
            const bool scalar = p.odd && k + 1 == m;
            names.push_back(std::string(base) + "_" + (scalar ? std::string("0") : std::to_string(k + 1)));
        }
    names.push_back("phi");
    return integrate(rhs, pack_rotated(s0), cfg, names);
}

RotatedInvariants rotated_invariants(const RotatedState& s, const RotatedParams& p) {
    const Eigen::ArrayXd A = p.a * p.a - p.lambdas.array().square();
    RotatedInvariants inv{};
    inv.sum_p = s.p.sum();
    inv.sum_q = s.q.sum();
    const double R = s.r.sum();
    inv.f = (s.r.array() / A).sum();
    inv.g = p.varrho * (A * s.q.array()).sum() - 0.5 * R * R;
    const Eigen::ArrayXd con = s.r.array().square() - A * (s.q.array().square() + s.p.array().square()) -
                               p.c.array().square();
    inv.max_constraint = con.abs().maxCoeff();
    return inv;
}

// ---- angles ---------------------------------------------------------------------------

double block_u(double r, double lambda, double c, double a) {
    const double A = a * a - lambda * lambda;
    if (A == 0.0) throw std::invalid_argument("block_u requires a^2 != lambda^2");
    return (a * r - lambda * c) / A;
}

AngleRates angles_rhs(const std::vector<Complex>& etas, const Eigen::VectorXd& r, const RotatedParams& p, double t) {
    const Complex S = std::accumulate(etas.begin(), etas.end(), Complex(0.0));
    const Eigen::Index nb = p.lambdas.size() - (p.odd ? 1 : 0);
    AngleRates out;
    out.dalpha.resize(nb);
    out.dbeta.resize(nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
        const double l = p.lambdas(k), ck = p.c(k);
        const Complex e = etas[static_cast<std::size_t>(k)];
        const double u = block_u(r(k), l, ck, p.a);
        const double R2 = 0.5 * (u + e.real()), I2 = 0.5 * (u - e.real());
        if (R2 < 1e-10 || I2 < 1e-10) throw NumericalError("angle chart singular: |Re xi| or |Im xi| vanishes", t);
        const double common = l * S.imag() * e.imag();
        out.dalpha(k) = -2.0 * l * (1.0 + p.c2) + 2.0 * l * S.real() + ((1.0 + p.c2 + S.real()) * (ck - l * u) + common) / R2;
        out.dbeta(k) = -2.0 * l * (1.0 + p.c2) - 2.0 * l * S.real() + ((1.0 + p.c2 - S.real()) * (ck - l * u) + common) / I2;
    }
    return out;
}

Eigen::Vector2cd xi_from_angles(Complex eta, double u, double alpha, double beta) {
    const double re = std::sqrt(std::max(0.0, 0.5 * (u + eta.real())));
    const double im = std::sqrt(std::max(0.0, 0.5 * (u - eta.real())));
    return Eigen::Vector2cd(Complex(re * std::cos(alpha), im * std::cos(beta)),
                            Complex(re * std::sin(alpha), im * std::sin(beta)));
}

void block_angles(const Eigen::Vector2cd& xi, double& alpha, double& beta) {
    alpha = std::atan2(xi(1).real(), xi(0).real());
    beta = std::atan2(xi(1).imag(), xi(0).imag());
}

// ---- conservation -------------------------------------------------------------------------

ConservationReport conservation_report(const Trajectory& traj,
                                       const std::vector<std::pair<std::string, TrajectoryFunction>>& fns) {
    ConservationReport rep;
    if (traj.states.empty()) return rep;
    const Eigen::VectorXd& x0 = traj.states.front();
    for (const auto& x : traj.states) rep.state_max_drift = std::max(rep.state_max_drift, (x - x0).lpNorm<Eigen::Infinity>());
    for (const auto& [name, fn] : fns) {
        DriftStat st;
        st.initial = fn(x0);
        for (const auto& x : traj.states) {
            const double dv = std::abs(fn(x) - st.initial);
            st.max_abs = std::max(st.max_abs, dv);
        }
        st.max_rel = st.max_abs / (1.0 + std::abs(st.initial));
        rep.invariants[name] = st;
    }
    return rep;
}

ConservationReport conservation_report(const Trajectory& traj, const BracketKind& kind,
                                       const std::vector<InvariantId>& ids, const InvariantContext& ctx) {
    std::vector<std::pair<std::string, TrajectoryFunction>> fns;
    for (const auto& id : ids)
        fns.emplace_back(id.name(), [&kind, &ctx, id](const Eigen::VectorXd& v) {
            return eval_invariant(id, ctx, unpack_chart(kind, v));
        });
    return conservation_report(traj, fns);
}

}  // namespace hstoda
