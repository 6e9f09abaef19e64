#include "hstoda/invariants.hpp"

#include <doctest.h>

#include <random>

using namespace hstoda;

namespace {

Operator random_upper(int n, std::mt19937_64& g, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    Operator x = Operator::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) x(i, j) = nd(g);
    return x;
}

std::vector<Coordinate> upper_coords(int n) {
    std::vector<Coordinate> c;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c.push_back({i, j});
    return c;
}

// Tr (tail rho^2 - rho E rho^T D - E rho^T D rho + E rho^T rho^T D)^k, written out
double ik_direct(const std::vector<double>& a, const Operator& rho, int k) {
    const int n = static_cast<int>(a.size());
    Operator E = Operator::Zero(n, n), D = Operator::Zero(n, n);
    double tail = 1.0;
    for (double v : a) tail *= v;
    for (int i = 0; i < n; ++i) {
        E(i, i) = 1.0;
        D(i, i) = 1.0;
        for (int j = i; j < n; ++j) E(i, i) *= a[static_cast<std::size_t>(j)];
        for (int j = 0; j < i; ++j) D(i, i) *= a[static_cast<std::size_t>(j)];
    }
    const Operator rt = rho.transpose();
    const Operator M = tail * rho * rho - rho * E * rt * D - E * rt * D * rho + E * rt * rt * D;
    Operator P = Operator::Identity(n, n);
    for (int s = 0; s < k; ++s) P = P * M;
    return P.trace();
}

}  // namespace

TEST_CASE("invariant ids round-trip through their names") {
    for (const char* s : {"Ik_alpha:k=2", "magri:k=2,n=3", "h_m:m=4", "I_l_alpha:l=3", "C2_sixdim", "C3_sixdim"}) {
        const auto id = InvariantId::parse(s);
        CHECK(InvariantId::parse(id.name()).name() == id.name());
    }
    CHECK(InvariantId::parse("magri:k=2,n=3").n == 3);
    CHECK_THROWS_AS(InvariantId::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("I^k matches the written-out trace formula") {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int s = 0; s < 10; ++s) {
        std::vector<double> a(5);
        for (auto& v : a) v = u(g);
        if (s == 3) a[0] = 0.0;
        const auto al = build_alpha(DeformationSequence(a));
        const Operator rho = random_upper(5, g);
        for (int k = 1; k <= 3; ++k) CHECK(ik_alpha(al, rho, k) == doctest::Approx(ik_direct(a, rho, k)).epsilon(1e-11));
        for (int k = 1; k <= 2; ++k) {
            const Operator gr = ik_general_gradient(al.eta, al.delta, al.alpha_tail, rho, k);
            const Operator fd = fd_gradient([&](const Operator& p) { return ik_alpha(al, p, k); }, rho, upper_coords(5), 1e-6);
            CHECK((gr - fd).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + gr.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("reduced forms of I^k") {
    std::mt19937_64 g(2);
    const DeformationSequence ns({0.8, -0.6, 0.7, 0.5, 0.9});
    const auto aln = build_alpha(ns);
    const DeformationSequence sg({0.8, 0.0, 0.7, 0.5, 0.9});
    const auto als = build_alpha(sg);
    for (int s = 0; s < 5; ++s) {
        const Operator rho = random_upper(5, g);
        for (int k = 1; k <= 2; ++k) {
            CHECK(ik_reduced_nonsingular(aln, rho, k) == doctest::Approx(ik_alpha(aln, rho, k)).epsilon(1e-10));
            CHECK(ik_reduced_singular(als, rho, k) == doctest::Approx(ik_alpha(als, rho, k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("I^k are Casimirs of the plus_alpha bracket") {
    std::mt19937_64 g(3);
    const DeformationSequence a({0.4, -0.9, 0.3, 0.6, 1.0});
    const InvariantContext ctx(a);
    const auto kind = BracketKind::plus_alpha(ctx.alpha);
    for (int k = 1; k <= 2; ++k) {
        const auto id = InvariantId::parse("Ik_alpha:k=" + std::to_string(k));
        const Operator rho = random_upper(5, g);
        CHECK(ham_vector_field(kind, invariant_field(id, ctx), rho).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(involution_residual(id, InvariantId::parse("h_m:m=1"), kind, ctx, rho)) < 1e-10);
    }
}

TEST_CASE("six-dimensional forms") {
    std::mt19937_64 g(4);
    const DeformationSequence a({0.4, -0.9, 0.3, 0.6, 0.7, 1.0});
    const auto al = build_alpha(a);
    const auto kind = BracketKind::plus_alpha(al);
    const Operator rho = random_upper(6, g);
    // with a_5 = 1 the expanded I^1 is the trace formula
    CHECK(i1_sixdim_expanded(a, rho) == doctest::Approx(ik_alpha(al, rho, 1)).epsilon(1e-12));
    for (auto [f, df] : {std::pair{&c2_sixdim, &c2_sixdim_gradient}, std::pair{&c3_sixdim, &c3_sixdim_gradient}}) {
        const Operator gr = df(a, rho);
        const Operator fd = fd_gradient([&](const Operator& p) { return f(a, p); }, rho, upper_coords(6), 1e-6);
        CHECK((gr - fd).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + gr.cwiseAbs().maxCoeff()));
        CHECK(ham_field_from_gradient(kind, gr, rho).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("Magri coefficients against the block combinations") {
    std::mt19937_64 g(5);
    const double b = -0.35;
    const DeformationSequence a = DeformationSequence::constant(6, 1.0);
    const DeformationSequence bs({1.0, b, 1.0, 1.0, 1.0, 1.0});
    for (int s = 0; s < 5; ++s) {
        const Operator rho = random_upper(6, g, 0.7);
        // h^1_1 = (1 + b) h_1 - 4 h_2 from the block functions
        CHECK(hkn_closed(1, 1, b, rho) ==
              doctest::Approx((1 + b) * h_block(1, rho) - 4 * h_block(2, rho)).epsilon(1e-12));
        for (int k = 1; k <= 2; ++k) {
            const auto c = magri_coefficients(k, a, bs, rho);
            REQUIRE(c.size() == static_cast<std::size_t>(2 * k + 1));
            for (int n = 0; n <= 2 * k; ++n) {
                CHECK(c[static_cast<std::size_t>(n)] == doctest::Approx(hkn_closed(k, n, b, rho)).epsilon(1e-9));
                const Operator gr = hkn_closed_gradient(k, n, b, rho);
                const Operator fd =
                    fd_gradient([&](const Operator& p) { return hkn_closed(k, n, b, p); }, rho, upper_coords(6), 1e-6);
                CHECK((gr - fd).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + gr.cwiseAbs().maxCoeff()));
            }
        }
    }
}

TEST_CASE("block invariants by hand") {
    // xi = (1, i), lambda = 2, a = 1: u = 2, xi^H eps xi = 2i, c = 6, eta = 0, d = -18
    const Vector2c xi(std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 1.0));
    const auto bi = reduced_block_invariants(xi, 2.0, 1.0);
    CHECK(bi.c == doctest::Approx(6.0));
    CHECK(bi.d == doctest::Approx(-18.0));
    std::mt19937_64 g(6);
    std::normal_distribution<double> nd;
    for (int s = 0; s < 10; ++s) {
        const Vector2c z(std::complex<double>(nd(g), nd(g)), std::complex<double>(nd(g), nd(g)));
        CHECK(std::abs(identity_14d_residual(z)) < 1e-12 * (1.0 + z.squaredNorm() * z.squaredNorm()));
        const auto r = reduced_block_invariants(z, nd(g), nd(g));
        CHECK(r.d == doctest::Approx(-0.5 * r.c * r.c).epsilon(1e-10));
    }
}

TEST_CASE("coadjoint orbits of the plus_alpha group keep I^k") {
    std::mt19937_64 g(7);
    std::normal_distribution<double> nd(0.0, 0.2);
    const auto al = build_alpha(DeformationSequence({0.4, -0.9, 0.3, 0.6, 0.8}));
    Operator x = Operator::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) x += nd(g) * basis_e(al, i, j);
    const Operator rho = random_upper(5, g);
    const Operator moved = coadjoint_action(CoadjointKind::plus_alpha, al, matrix_exp(x), rho);
    CHECK(is_strictly_upper(moved));
    for (int k = 1; k <= 2; ++k) CHECK(ik_alpha(al, moved, k) == doctest::Approx(ik_alpha(al, rho, k)).epsilon(1e-10));
}
