#include "hstoda/closed_form.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>

namespace hstoda {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex I1(0.0, 1.0);

// Composite Gauss-Legendre (15 points) with adaptive bisection, for vector integrands.
template <class F>
Eigen::VectorXd gl15(const F& f, double a, double b) {
    using Rule = boost::math::quadrature::gauss<double, 15>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    Eigen::VectorXd s = w[0] * f(m);
    for (std::size_t i = 1; i < x.size(); ++i) s += w[i] * (f(m - h * x[i]) + f(m + h * x[i]));
    return h * s;
}

template <class F>
Eigen::VectorXd adaptive_panel(const F& f, double a, double b, const Eigen::VectorXd& whole, int depth) {
    const double m = 0.5 * (a + b);
    Eigen::VectorXd left = gl15(f, a, m), right = gl15(f, m, b);
    Eigen::VectorXd sum = left + right;
    const double err = (sum - whole).lpNorm<Eigen::Infinity>();
    if (depth <= 0 || err <= 1e-13 * (1.0 + sum.lpNorm<Eigen::Infinity>())) return sum;
    return adaptive_panel(f, a, m, left, depth - 1) + adaptive_panel(f, m, b, right, depth - 1);
}

template <class F>
Eigen::VectorXd integrate_vec(const F& f, double a, double b, Eigen::Index dim, double panel = kPi / 8) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
    if (a == b) return total;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / panel)));
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * h, hi = (i + 1 == n) ? b : a + (i + 1) * h;
        total += adaptive_panel(f, lo, hi, gl15(f, lo, hi), 18);
    }
    return total;
}

template <class F>
double solve_bracketed(const F& f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

// int_0^theta d s / (c2 + k varrho cos s), continuous in theta
double arctan_primitive(double theta, double c2, double varrho, double k) {
    const double s = std::sqrt(c2 * c2 - varrho * varrho);
    const double m = std::round(theta / (2.0 * kPi));
    const double tr = theta - 2.0 * kPi * m;
    const double q = std::sqrt((c2 - k * varrho) / (c2 + k * varrho));
    return 2.0 / s * (std::atan(q * std::tan(0.5 * tr)) + kPi * m);
}

}  // namespace

// ---- N - 2 = 2 -------------------------------------------------------------------

Eigen::Matrix2d N2Solution::O() const { return Eigen::Vector2d(1.0, branch).asDiagonal(); }

void N2Solution::angles(double t, double& alpha, double& beta) const {
    double ia, ib;
    if (!quadrature) {
        const double th = theta(t);
        ia = (arctan_primitive(th, c2, varrho, 1.0) - arctan_primitive(phi0, c2, varrho, 1.0)) / omega1;
        ib = (arctan_primitive(th, c2, varrho, -1.0) - arctan_primitive(phi0, c2, varrho, -1.0)) / omega1;
    } else {
        using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
        auto fa = [this](double s) { return 1.0 / (c2 + varrho * std::cos(theta(s))); };
        auto fb = [this](double s) { return 1.0 / (c2 - varrho * std::cos(theta(s))); };
        ia = t == 0.0 ? 0.0 : GK::integrate(fa, 0.0, t, 15, 1e-13);
        ib = t == 0.0 ? 0.0 : GK::integrate(fb, 0.0, t, 15, 1e-13);
    }
    alpha = alpha0 + base * t + 2.0 * kprime * ia;
    beta = beta0 + base * t + 2.0 * kprime * ib;
}

void N2Solution::angle_rates(double t, double& dalpha, double& dbeta) const {
    const double cs = varrho * std::cos(theta(t));
    dalpha = base + 2.0 * kprime / (c2 + cs);
    dbeta = base + 2.0 * kprime / (c2 - cs);
}

Eigen::Vector2cd N2Solution::xi(double t) const {
    double al, be;
    angles(t, al, be);
    const double cs = varrho * std::cos(theta(t));
    const double re = std::sqrt(std::max(0.0, 0.5 * (c2 + cs)));
    const double im = std::sqrt(std::max(0.0, 0.5 * (c2 - cs)));
    return Eigen::Vector2cd(Complex(re * std::cos(al), im * std::cos(be)), Complex(re * std::sin(al), im * std::sin(be)));
}

Eigen::VectorXcd N2Solution::z(double t) const { return O().cast<Complex>().transpose() * xi(t); }

N2Solution solve_n2(const ComplexState& s0) {
    if (s0.dim() != 2 || s0.delta.rows() != 2 || s0.delta.cols() != 2)
        throw std::invalid_argument("solve_n2 needs a state with N - 2 = 2");
    N2Solution s;
    const double d = s0.delta(0, 1);
    s.branch = d >= 0 ? 1 : -1;
    s.a = s0.a;
    s.lambda1 = std::abs(d);
    const Eigen::Vector2cd xi = s.O().cast<Complex>() * s0.z;
    s.c2 = xi.squaredNorm();
    const Complex eta = xi.cwiseProduct(xi).sum();
    s.varrho = std::abs(eta);
    s.phi0 = std::arg(eta);
    if (s.c2 == 0.0) throw DegenerateModulusError("solve_n2: z = 0 has no angle chart");
    if (s.varrho > 0.0 && std::abs(s.c2 * s.c2 / (s.varrho * s.varrho) - 1.0) < 1e-10)
        throw DegenerateModulusError("solve_n2: c^4 / varrho^2 = 1 (degenerate modulus)");
    const Complex w = xi.dot(Eigen::Vector2cd(xi(1), -xi(0)));
    s.c1 = (s.lambda1 * s.c2 - I1 * s.a * w).real();
    s.r1 = (s.a * s.c2 - I1 * s.lambda1 * w).real();
    s.omega1 = -4.0 * s.a * (1.0 + s.c2) + 4.0 * s.r1;
    s.kprime = s.lambda1 * s.varrho * s.varrho - s.c1 * s.c2 + (1.0 + s.c2) * (s.c1 - s.lambda1 * s.c2);
    s.base = 2.0 * s.c1 - 2.0 * s.lambda1 * (1.0 + s.c2);
    block_angles(xi, s.alpha0, s.beta0);
    s.quadrature = s.varrho < 1e-12 * s.c2 || std::abs(s.omega1) < 1e-9 * (1.0 + std::abs(s.a) * (1.0 + s.c2));
    return s;
}

N2CheckReport n2_invariant_checks(const N2Solution& sol, const std::vector<double>& ts) {
    N2CheckReport rep;
    const double area = 0.5 * std::sqrt(std::max(0.0, sol.c2 * sol.c2 - sol.varrho * sol.varrho));
    for (double t : ts) {
        const Eigen::VectorXcd z = sol.z(t);
        const Eigen::Vector2d x = z.real(), y = z.imag();
        rep.max_norm_residual = std::max(rep.max_norm_residual, std::abs(x.squaredNorm() + y.squaredNorm() - sol.c2));
        const double cross = x(0) * y(1) - x(1) * y(0);  // |x||y| sin(beta - alpha)
        rep.max_area_residual = std::max(rep.max_area_residual, std::abs(std::abs(cross) - area));
    }
    return rep;
}

// ---- N - 2 = 3, 4 --------------------------------------------------------------------

double quartic_w4(double r, const QuarticData& d) { return r * (d.c1 + r * (d.c2 + r * (d.c3 + r * d.c4))); }

QuarticData make_quartic(const RotatedState& s, const RotatedParams& p) {
    if (s.q.size() != 2 || p.lambdas.size() != 2) throw std::invalid_argument("quartic reduction needs two components");
    QuarticData d;
    d.a = p.a;
    d.lambda1 = p.lambdas(0);
    d.lambdak = p.lambdas(1);
    d.varrho = p.varrho;
    const double a2 = p.a * p.a, l1 = d.lambda1 * d.lambda1, lk = d.lambdak * d.lambdak;
    const double A1 = a2 - l1, Ak = a2 - lk, dl = lk - l1, v2 = d.varrho * d.varrho;
    if (A1 == 0.0 || Ak == 0.0 || dl == 0.0 || v2 == 0.0) throw std::invalid_argument("quartic reduction: singular parameters");
    const double R = s.r.sum();
    d.f = s.r(0) / A1 + s.r(1) / Ak;
    d.g = d.varrho * (A1 * s.q(0) + Ak * s.q(1)) - 0.5 * R * R;
    d.c4 = -dl * dl / (4.0 * v2 * std::pow(A1, 4));
    d.c3 = -d.f * Ak * dl / (v2 * std::pow(A1, 3));
    d.c2 = -(1.5 * Ak * Ak * d.f * d.f / (v2 * A1 * A1) + (d.g - v2 * Ak) / (v2 * A1 * A1) - 1.0 / A1);
    d.c1 = -2.0 * Ak * (d.g - v2 * Ak + 0.5 * Ak * Ak * d.f * d.f) * d.f / (v2 * A1 * dl);
    d.e = s.p(0) * s.p(0) - quartic_w4(s.r(0), d);
    return d;
}

double n34_q1(double r1, const QuarticData& d) {
    const double a2 = d.a * d.a, l1 = d.lambda1 * d.lambda1, lk = d.lambdak * d.lambdak;
    const double A1 = a2 - l1, Ak = a2 - lk, dl = lk - l1;
    const double R = Ak * d.f + dl / A1 * r1;
    return (-d.varrho * d.varrho * Ak + d.g + 0.5 * R * R) / (d.varrho * dl);
}

N34Solution::N34Solution(const ReducedState& s0, double a) : shape_(s0) {
    const std::size_t comps = s0.xi.size() + (s0.xi0 ? 1 : 0);
    if (s0.xi.empty() || comps != 2) throw std::invalid_argument("solve_n34 needs N - 2 = 3 or 4");
    params_ = rotated_params(s0, a);
    const double a2 = a * a, l1 = params_.lambdas(0) * params_.lambdas(0), lk = params_.lambdas(1) * params_.lambdas(1);
    const double scale = 1.0 + a2 + l1;
    if (std::abs(a2 - l1) < 1e-12 * scale) throw std::invalid_argument("solve_n34: a^2 = lambda_1^2");
    if (std::abs(a2 - lk) < 1e-12 * scale) throw std::invalid_argument("solve_n34: a^2 = lambda_k^2");
    if (std::abs(lk - l1) < 1e-12 * scale) throw std::invalid_argument("solve_n34: lambda_k^2 = lambda_1^2");
    if (params_.varrho < 1e-14) throw std::invalid_argument("solve_n34: the total eta vanishes (varrho = 0)");

    const RotatedState rs = to_rotated(s0, a);
    quartic_ = make_quartic(rs, params_);
    phi0_ = rs.phi;
    kappa_ = 4.0 * params_.varrho * (a2 - l1);

    const QuarticData& q = quartic_;
    auto P = [&q](double r) { return q.e + quartic_w4(r, q); };
    auto dP = [&q](double r) { return q.c1 + r * (2.0 * q.c2 + r * (3.0 * q.c3 + r * 4.0 * q.c4)); };
    const double r0 = rs.r(0);
    const double rscale = 1.0 + std::abs(r0);

    // nearest root of P on one side of `from` (P(from) >= 0 there)
    auto march = [&](double from, double dir) {
        double h = 1e-6 * rscale, x0 = from, x1 = from + dir * h;
        for (int it = 0; it < 400 && P(x1) >= 0.0; ++it) {
            x0 = x1;
            h *= 1.5;
            x1 = from + dir * h;
        }
        if (P(x1) >= 0.0) throw DegenerateModulusError("solve_n34: no turning point found");
        return solve_bracketed(P, std::min(x0, x1), std::max(x0, x1));
    };
    const double p0sq = rs.p(0) * rs.p(0);
    const double tiny = 1e-13 * (1.0 + std::abs(q.e));
    if (p0sq > tiny) {
        r_lo_ = march(r0, -1.0);
        r_hi_ = march(r0, 1.0);
    } else {
        const double slope = dP(r0);
        if (std::abs(slope) < 1e-10 * rscale) throw DegenerateModulusError("solve_n34: r_1 starts at a repeated root of e + w4");
        if (slope > 0) {
            r_lo_ = r0;
            r_hi_ = march(r0, 1.0);
        } else {
            r_hi_ = r0;
            r_lo_ = march(r0, -1.0);
        }
    }
    const double delta = r_hi_ - r_lo_;
    if (delta < 1e-10 * rscale) throw DegenerateModulusError("solve_n34: repeated roots of e + w4");

    // e + w4 = (r^2 - s r + p)(c4 r^2 + B r + C)
    const double s = r_lo_ + r_hi_, pr = r_lo_ * r_hi_;
    const double B = q.c3 + s * q.c4, C = q.c2 + s * B - pr * q.c4;
    qa_ = -q.c4;
    qb_ = -B;
    qc_ = -C;
    const double vertex = std::clamp(-qb_ / (2.0 * qa_), r_lo_, r_hi_);
    const double pmin = std::min({ptilde(r_lo_), ptilde(r_hi_), ptilde(vertex)});
    const double pmax = std::max({ptilde(r_lo_), ptilde(r_hi_), ptilde(vertex)});
    if (!(pmin > 1e-10 * pmax)) throw DegenerateModulusError("solve_n34: repeated roots of e + w4");

    const double c0 = std::clamp(1.0 - 2.0 * (r0 - r_lo_) / delta, -1.0, 1.0);
    theta0_ = std::acos(c0);
    if (rs.p(0) * kappa_ < 0) theta0_ = -theta0_;

    constexpr int J = 64;
    table_.assign(J + 1, Eigen::Vector2d::Zero());
    auto dclock = [this](double th) {
        const double r = r_of(th);
        const double dt = 1.0 / (std::abs(kappa_) * std::sqrt(ptilde(r)));
        return Eigen::Vector2d(dt, r * dt);
    };
    for (int j = 0; j < J; ++j) {
        const double lo = 2.0 * kPi * j / J, hi = 2.0 * kPi * (j + 1) / J;
        table_[j + 1] = table_[j] + Eigen::Vector2d(integrate_vec(dclock, lo, hi, 2));
    }
    period_ = table_[J](0);
    period_r_ = table_[J](1);
    clock0_ = clock(theta0_);

    const Eigen::Index nb = static_cast<Eigen::Index>(s0.xi.size());
    angles0_ = Eigen::VectorXd::Zero(2 * nb + (s0.xi0 ? 1 : 0));
    for (Eigen::Index k = 0; k < nb; ++k) block_angles(s0.xi[static_cast<std::size_t>(k)], angles0_(2 * k), angles0_(2 * k + 1));
    if (s0.xi0) angles0_(2 * nb) = 2.0 * std::arg(*s0.xi0);
}

double N34Solution::ptilde(double r) const { return qa_ * r * r + qb_ * r + qc_; }

double N34Solution::r_of(double th) const { return r_lo_ + 0.5 * (r_hi_ - r_lo_) * (1.0 - std::cos(th)); }

double N34Solution::p1_of(double th) const {
    const double sgn = kappa_ > 0 ? 1.0 : -1.0;
    return sgn * std::sin(th) * 0.5 * (r_hi_ - r_lo_) * std::sqrt(std::max(0.0, ptilde(r_of(th))));
}

Eigen::Vector2d N34Solution::clock(double th) const {
    const int J = static_cast<int>(table_.size()) - 1;
    const double m = std::floor(th / (2.0 * kPi));
    const double tr = th - 2.0 * kPi * m;
    const int j = std::clamp(static_cast<int>(std::floor(tr / (2.0 * kPi) * J)), 0, J - 1);
    auto dclock = [this](double x) {
        const double r = r_of(x);
        const double dt = 1.0 / (std::abs(kappa_) * std::sqrt(ptilde(r)));
        return Eigen::Vector2d(dt, r * dt);
    };
    const Eigen::Vector2d part = integrate_vec(dclock, 2.0 * kPi * j / J, tr, 2);
    return table_[static_cast<std::size_t>(j)] + part + m * Eigen::Vector2d(period_, period_r_);
}

double N34Solution::theta(double t) const {
    const double tau = t + clock0_(0);
    const double m = std::floor(tau / period_);
    const double res = tau - m * period_;
    const int J = static_cast<int>(table_.size()) - 1;
    int j = 0;
    while (j + 1 < J && table_[static_cast<std::size_t>(j + 1)](0) <= res) ++j;
    const double lo = 2.0 * kPi * j / J, hi = 2.0 * kPi * (j + 1) / J;
    auto f = [&](double th) { return clock(th)(0) - res; };
    return 2.0 * kPi * m + solve_bracketed(f, lo, hi);
}

double N34Solution::r1(double t) const { return r_of(theta(t)); }
double N34Solution::p1(double t) const { return p1_of(theta(t)); }
double N34Solution::int_r1(double t) const { return clock(theta(t))(1) - clock0_(1); }

RotatedState N34Solution::rotated_at(double th, double t, double jr) const {
    const QuarticData& q = quartic_;
    const double a2 = q.a * q.a, l1 = q.lambda1 * q.lambda1, lk = q.lambdak * q.lambdak;
    const double A1 = a2 - l1, Ak = a2 - lk;
    RotatedState s;
    s.q.resize(2);
    s.p.resize(2);
    s.r.resize(2);
    s.r(0) = r_of(th);
    s.r(1) = Ak * (q.f - s.r(0) / A1);
    s.p(0) = p1_of(th);
    s.p(1) = -s.p(0);
    s.q(0) = n34_q1(s.r(0), q);
    s.q(1) = q.varrho - s.q(0);
    s.phi = phi0_ + 4.0 * (Ak * q.f - q.a * (1.0 + params_.c2)) * t + 4.0 * (lk - l1) / A1 * jr;
    return s;
}

RotatedState N34Solution::rotated(double t) const {
    const double th = theta(t);
    return rotated_at(th, t, clock(th)(1) - clock0_(1));
}

Eigen::VectorXd N34Solution::angle_rates(double th) const {
    const Eigen::Vector2d ck = clock(th) - clock0_;
    const RotatedState rs = rotated_at(th, ck(0), ck(1));
    const auto etas = etas_from_rotated(rs);
    const AngleRates ar = angles_rhs(etas, rs.r, params_, ck(0));
    Eigen::VectorXd out(angles0_.size());
    const Eigen::Index nb = ar.dalpha.size();
    for (Eigen::Index k = 0; k < nb; ++k) {
        out(2 * k) = ar.dalpha(k);
        out(2 * k + 1) = ar.dbeta(k);
    }
    if (shape_.xi0) {
        const double mod = std::hypot(rs.q(1), rs.p(1));
        if (mod < 1e-12) throw NumericalError("solve_n34: scalar mode passes through zero", ck(0));
        out(2 * nb) = -4.0 * params_.a * (1.0 + params_.c2) + 4.0 * params_.varrho * params_.a * rs.q(1) / mod;
    }
    const double dt = 1.0 / (std::abs(kappa_) * std::sqrt(ptilde(r_of(th))));
    return dt * out;
}

ReducedState N34Solution::reduced(double t) const {
    const double th = theta(t);
    const RotatedState rs = rotated_at(th, t, clock(th)(1) - clock0_(1));
    const auto etas = etas_from_rotated(rs);
    const Eigen::VectorXd ang =
        angles0_ + integrate_vec([this](double x) { return angle_rates(x); }, theta0_, th, angles0_.size());
    ReducedState out = shape_;
    for (std::size_t k = 0; k < shape_.xi.size(); ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        const double u = block_u(rs.r(kk), params_.lambdas(kk), params_.c(kk), params_.a);
        out.xi[k] = xi_from_angles(etas[k], u, ang(2 * kk), ang(2 * kk + 1));
    }
    if (shape_.xi0) {
        const double mod = std::abs(etas[1]);
        out.xi0 = std::sqrt(mod) * std::polar(1.0, 0.5 * ang(ang.size() - 1));
    }
    return out;
}

Eigen::VectorXcd N34Solution::z(double t) const {
    if (shape_.O.rows() == 0) throw std::invalid_argument("solution was built without a normal-form basis");
    return unreduce(reduced(t));
}

N34Solution solve_n34(const ReducedState& s0, double a) { return N34Solution(s0, a); }

N34Solution solve_n34(const ComplexState& s0) {
    if (s0.dim() != 3 && s0.dim() != 4) throw std::invalid_argument("solve_n34 needs N - 2 = 3 or 4");
    return N34Solution(reduce(s0), s0.a);
}

}  // namespace hstoda
