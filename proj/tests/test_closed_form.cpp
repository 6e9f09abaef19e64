#include "hstoda/closed_form.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hstoda;

namespace {

// Reference trajectory: the cubic flow integrated tightly.
std::vector<Eigen::VectorXcd> reference(const ComplexState& s, double t1, int samples) {
    IntegratorConfig cfg;
    cfg.t1 = t1;
    cfg.samples = samples;
    cfg.rtol = 1e-12;
    cfg.atol = 1e-14;
    const auto tr = cubic_flow(s, cfg);
    std::vector<Eigen::VectorXcd> out;
    for (const auto& x : tr.states) out.push_back(unpack_complex(x));
    return out;
}

ComplexState state(double a, Eigen::MatrixXd delta, std::vector<Complex> z) {
    ComplexState s;
    s.a = a;
    s.delta = std::move(delta);
    s.z = Eigen::Map<Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(z.size()));
    return s;
}

}  // namespace

TEST_CASE("N-2 = 2 solution follows the flow") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 1) = -0.8;
    const ComplexState s = state(0.6, d, {Complex(0.3, -0.2), Complex(0.5, 0.4)});
    const N2Solution sol = solve_n2(s);
    CHECK_FALSE(sol.quadrature);
    CHECK(sol.branch == -1);
    const auto ref = reference(s, 4.0, 81);
    for (int i = 0; i < 81; ++i) CHECK((sol.z(0.05 * i) - ref[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff() < 1e-9);
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(0.1 * i);
    const auto rep = n2_invariant_checks(sol, ts);
    CHECK(rep.max_norm_residual < 1e-10);
    CHECK(rep.max_area_residual < 1e-10);
}

TEST_CASE("N-2 = 2 with xi^T xi = 0 uses quadrature") {
    // z = (1, i)/2 gives z^T z = 0
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 1) = 0.9;
    const ComplexState s = state(0.4, d, {Complex(0.5, 0.0), Complex(0.0, 0.5)});
    const N2Solution sol = solve_n2(s);
    CHECK(sol.quadrature);
    const auto ref = reference(s, 2.0, 21);
    for (int i = 0; i < 21; ++i) CHECK((sol.z(0.1 * i) - ref[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("degenerate N-2 = 2 data") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 1) = 0.9;
    CHECK_THROWS_AS(solve_n2(state(0.4, d, {Complex(0.0), Complex(0.0)})), DegenerateModulusError);
    // real z: |z^T z| = |z|^2
    CHECK_THROWS_AS(solve_n2(state(0.4, d, {Complex(0.3), Complex(0.4)})), DegenerateModulusError);
}

TEST_CASE("quartic evaluation") {
    QuarticData q;
    q.c4 = -0.5;
    q.c3 = 0.25;
    q.c2 = 2.0;
    q.c1 = -1.0;
    CHECK(quartic_w4(0.0, q) == 0.0);
    CHECK(quartic_w4(2.0, q) == doctest::Approx(-8.0 + 2.0 + 8.0 - 2.0));
}

TEST_CASE("N-2 = 3, 4 quadrature follows the flow across turning points") {
    std::mt19937_64 g(11);
    std::normal_distribution<double> nd;
    for (int dim : {3, 4}) {
        ComplexState s;
        s.a = 0.9;
        s.delta = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) s.delta(i, j) = 0.8 * nd(g);
        s.z.resize(dim);
        for (int i = 0; i < dim; ++i) s.z(i) = 0.5 * Complex(nd(g), nd(g));
        const N34Solution sol = solve_n34(s);
        CHECK(sol.r_lo() < sol.r_hi());
        CHECK(sol.period() > 0.0);
        const double T = std::max(3.0, 1.5 * sol.period());
        const auto ref = reference(s, T, 121);
        double worst = 0.0;
        for (int i = 0; i < 121; ++i) {
            const double t = T * i / 120.0;
            worst = std::max(worst, (sol.z(t) - ref[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff());
            const double r = sol.r1(t);
            CHECK(r >= sol.r_lo() - 1e-12);
            CHECK(r <= sol.r_hi() + 1e-12);
            const double p = sol.p1(t);
            CHECK(p * p == doctest::Approx(sol.quartic().e + quartic_w4(r, sol.quartic())).epsilon(1e-8).scale(1.0));
        }
        CHECK(worst < 1e-8);
        CHECK(sol.r1(0.3 + sol.period()) == doctest::Approx(sol.r1(0.3)).epsilon(1e-9));
    }
}

TEST_CASE("N-2 = 3, 4 rejects unsupported data") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
    d(0, 1) = 1.0;
    d(2, 3) = 0.5;
    // a^2 = lambda_1^2
    CHECK_THROWS_AS(solve_n34(state(1.0, d, {Complex(0.3, 0.1), Complex(0.2, -0.4), Complex(0.1, 0.2), Complex(-0.3, 0.3)})),
                    std::invalid_argument);
    // wrong dimension
    CHECK_THROWS_AS(solve_n34(state(0.5, Eigen::MatrixXd::Zero(2, 2), {Complex(0.3), Complex(0.2)})), std::invalid_argument);
}
