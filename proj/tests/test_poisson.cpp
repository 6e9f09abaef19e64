#include "hstoda/poisson.hpp"

#include <doctest.h>

#include <random>

using namespace hstoda;

namespace {

Operator on_chart(const BracketKind& kind, std::mt19937_64& g) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Operator p = Operator::Zero(kind.n, kind.n);
    for (auto [i, j] : chart(kind)) p(i, j) = nd(g);
    return p;
}

ScalarField random_quadratic(const BracketKind& kind, std::mt19937_64& g) {
    const Operator W = on_chart(kind, g), U = on_chart(kind, g), V = on_chart(kind, g);
    return ScalarField::linear(W) + product(ScalarField::linear(U), ScalarField::linear(V));
}

}  // namespace

TEST_CASE("chart sizes") {
    const auto al = build_alpha(DeformationSequence::constant(5, 0.5));
    CHECK(chart(BracketKind::canonical(5)).size() == 25);
    CHECK(chart(BracketKind::plus_alpha(al)).size() == 10);
    CHECK(chart(BracketKind::minus0(5)).size() == 15);
    CHECK(chart(BracketKind::eta_kind(al.eta)).size() == 10);
    CHECK(chart(BracketKind::k_diagonal(5, 2)).size() == 9);
    CHECK_THROWS_AS(check_point(BracketKind::plus_alpha(al), Operator::Identity(5, 5)), std::invalid_argument);
}

TEST_CASE("canonical bracket of coordinates") {
    // {rho_ij, rho_nm} = delta_im rho_nj - delta_jn rho_im
    std::mt19937_64 g(1);
    const auto kind = BracketKind::canonical(3);
    const Operator p = on_chart(kind, g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int n = 0; n < 3; ++n)
                for (int m = 0; m < 3; ++m) {
                    const double expect = (i == m ? p(n, j) : 0.0) - (j == n ? p(i, m) : 0.0);
                    CHECK(bracket(kind, ScalarField::coordinate(i, j), ScalarField::coordinate(n, m), p) ==
                          doctest::Approx(expect).epsilon(1e-14));
                }
}

TEST_CASE("plus_alpha structure constants by hand") {
    const auto al = build_alpha(DeformationSequence({0.5, 0.5, 0.5, 1.0}));
    // {rho_01, rho_12} = -rho_02
    auto t = structure_bracket(al, 0, 1, 1, 2);
    REQUIRE(t.size() == 1);
    CHECK(t[0].coefficient == -1.0);
    CHECK(t[0].index == Coordinate{0, 2});
    // {rho_02, rho_12} = alpha_12 rho_01
    t = structure_bracket(al, 0, 2, 1, 2);
    REQUIRE(t.size() == 1);
    CHECK(t[0].coefficient == 0.5);
    CHECK(t[0].index == Coordinate{0, 1});
    CHECK(structure_bracket(al, 0, 1, 2, 3).empty());
}

TEST_CASE("brackets are antisymmetric, Leibniz and Jacobi") {
    std::mt19937_64 g(2);
    const auto al = build_alpha(DeformationSequence({0.7, -0.4, 0.9, 0.3, 0.6}));
    const std::vector<BracketKind> kinds{BracketKind::canonical(5), BracketKind::plus_alpha(al), BracketKind::minus0(5),
                                         BracketKind::eta_kind(al.eta), BracketKind::k_diagonal(5, 3)};
    for (const auto& kind : kinds) {
        for (int s = 0; s < 3; ++s) {
            const Operator p = on_chart(kind, g);
            const ScalarField f = random_quadratic(kind, g), h = random_quadratic(kind, g), k = random_quadratic(kind, g);
            CHECK(bracket(kind, f, h, p) == doctest::Approx(-bracket(kind, h, f, p)).epsilon(1e-12));
            const double leib = bracket(kind, product(f, h), k, p) - f(p) * bracket(kind, h, k, p) - h(p) * bracket(kind, f, k, p);
            CHECK(std::abs(leib) < 1e-8 * (1.0 + std::abs(f(p) * bracket(kind, h, k, p))));
            CHECK(std::abs(jacobi_residual(kind, f, h, k, p)) < 1e-8);
        }
    }
}

TEST_CASE("Hamiltonian field components are brackets with coordinates") {
    std::mt19937_64 g(3);
    const auto kind = BracketKind::plus_alpha(build_alpha(DeformationSequence({0.2, 0.9, -0.6, 1.0})));
    const Operator p = on_chart(kind, g);
    const ScalarField h = random_quadratic(kind, g);
    const Operator X = ham_vector_field(kind, h, p);
    for (auto [i, j] : chart(kind))
        CHECK(X(i, j) == doctest::Approx(bracket(kind, ScalarField::coordinate(i, j), h, p)).epsilon(1e-12));
}

TEST_CASE("pencil classification by hand") {
    const DeformationSequence a({0.5, 0.3, 0.2, 0.9, 1.0});
    SUBCASE("equal sequences") { CHECK(pencil_classify(a, a).pass); }
    SUBCASE("adjacent differing indices fail") {
        const auto c = pencil_classify(a, DeformationSequence({0.4, 0.1, 0.2, 0.9, 1.0}));
        CHECK_FALSE(c.pass);
        REQUIRE(c.witness);
        CHECK(*c.witness == Coordinate{0, 1});
        CHECK_THROWS_AS(BracketKind::pencil(a, DeformationSequence({0.4, 0.1, 0.2, 0.9, 1.0}), 1.0), std::invalid_argument);
    }
    SUBCASE("a zero of one sequence at a differing index does not separate") {
        CHECK_FALSE(pencil_classify(a, DeformationSequence({0.4, 0.0, 0.2, 0.9, 1.0})).pass);
    }
    SUBCASE("a common zero separates two differences") {
        const DeformationSequence x({0.5, 0.0, 0.3, 0.9, 1.0}), y({0.4, 0.0, 0.7, 0.9, 1.0});
        const auto c = pencil_classify(x, y);
        CHECK(c.pass);
        CHECK(c.differing == std::vector<int>{0, 2});
        CHECK_FALSE(banded_coordinate(c, 0, 1));
        CHECK(banded_coordinate(c, 1, 2));
        CHECK_FALSE(banded_coordinate(c, 1, 3));
        CHECK(banded_coordinate(c, 3, 4));
        CHECK_NOTHROW(BracketKind::pencil(x, y, 0.5));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK(pencil_pair_condition(x, y, i, j));
    }
    SUBCASE("the last index lies outside the bracket window") {
        const auto c = pencil_classify(DeformationSequence({0.5, 0.5, 0.5, 0.2}), DeformationSequence({0.5, 0.5, 0.3, 0.7}));
        CHECK(c.pass);
        CHECK_FALSE(c.tail_consistent);
    }
}

TEST_CASE("pencil brackets are linear in the blend") {
    std::mt19937_64 g(4);
    const DeformationSequence x({0.5, 0.0, 0.3, 0.9, 1.0}), y({0.4, 0.0, 0.7, 0.9, 1.0});
    const auto kind = BracketKind::plus_alpha(build_alpha(x));
    for (double p : {0.0, 0.3, 0.8}) {
        const Operator pt = on_chart(kind, g);
        const ScalarField f = random_quadratic(kind, g), h = random_quadratic(kind, g);
        CHECK(std::abs(pencil_linearity_residual(x, y, p, f, h, pt)) < 1e-12);
    }
    // p {,}_a + (1-p) {,}_b as a single kind
    const auto pk = BracketKind::pencil_p(x, y, 0.25);
    const auto ka = BracketKind::plus_alpha(build_alpha(x)), kb = BracketKind::plus_alpha(build_alpha(y));
    const Operator pt = on_chart(ka, g);
    const ScalarField f = random_quadratic(ka, g), h = random_quadratic(ka, g);
    CHECK(bracket(pk, f, h, pt) ==
          doctest::Approx(0.25 * bracket(ka, f, h, pt) + 0.75 * bracket(kb, f, h, pt)).epsilon(1e-12));
}

TEST_CASE("diagonal storage and the eta reparametrization") {
    std::mt19937_64 g(5);
    const auto kind = BracketKind::k_diagonal(5, 3);
    const Operator p = on_chart(kind, g);
    CHECK((from_diagonals(to_diagonals(p, 3)) - p).norm() == 0.0);

    DiagonalVector eta(4);
    eta << 0.5, -2.0, 1.5, 1.0;
    const auto pk = BracketKind::plus_alpha(build_alpha(DeformationSequence::constant(4, 1.0)));
    const Operator rho = on_chart(pk, g);
    const Operator r = r_eta(eta, rho);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(r(i, j) == doctest::Approx(rho(i, j) * eta(j)));
    const ScalarField f = compose_r_eta(random_quadratic(pk, g), eta);
    const Operator gr = f.grad(rho);
    const Operator fd = fd_gradient(f.eval, rho, chart(pk), 1e-6);
    CHECK((gr - fd).cwiseAbs().maxCoeff() < 1e-6);
}
