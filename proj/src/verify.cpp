// Property suite behind `mode: verify`: residual maxima of the structural
// identities at the configured size, each against its tolerance.
#include "hstoda/cli.hpp"

#include <algorithm>
#include <cmath>

namespace hstoda {

namespace {

Operator random_upper(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Operator x = Operator::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) x(i, j) = scale * nd(rng);
    return x;
}

Operator random_on_chart(const BracketKind& kind, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Operator p = Operator::Zero(kind.n, kind.n);
    for (auto [i, j] : chart(kind)) p(i, j) = nd(rng);
    return p;
}

// Jacobi residual of coordinate triples (plus random quadratic fields).
double jacobi_max(const BracketKind& kind, std::mt19937_64& rng, int samples) {
    const auto coords = chart(kind);
    std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Operator p = random_on_chart(kind, rng);
        auto c = [&] {
            auto [i, j] = coords[pick(rng)];
            return ScalarField::coordinate(i, j);
        };
        const ScalarField f = c(), g = product(c(), c()), h = c() + product(c(), c());
        worst = std::max(worst, std::abs(jacobi_residual(kind, f, g, h, p)));
    }
    return worst;
}

VerifyCheck make_check(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, residual <= tol};
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(int n, const DeformationSequence& a, std::mt19937_64& rng) {
    if (a.size() != n) throw std::invalid_argument("verify: sequence length differs from n");
    std::vector<VerifyCheck> out;
    const AlphaCoefficients al = build_alpha(a);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    {
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            const Operator x = random_upper(n, rng), y = random_upper(n, rng);
            const double r = (alpha_apply(al, x * y) - alpha_apply(al, x) * alpha_apply(al, y)).norm();
            worst = std::max(worst, r / std::max(1e-300, x.norm() * y.norm()));
        }
        out.push_back(make_check("alpha_endomorphism", worst, 1e-12));
    }

    out.push_back(make_check("jacobi_plus_alpha", jacobi_max(BracketKind::plus_alpha(al), rng, 20), 1e-12));
    out.push_back(make_check("jacobi_minus0", jacobi_max(BracketKind::minus0(n), rng, 20), 1e-12));
    out.push_back(make_check("jacobi_eta", jacobi_max(BracketKind::eta_kind(al.eta), rng, 20), 1e-12));
    out.push_back(make_check("jacobi_k_diagonal", jacobi_max(BracketKind::k_diagonal(n, std::min(2, n)), rng, 20), 1e-12));

    {
        const auto kind = BracketKind::plus_alpha(al);
        const InvariantContext ctx(a);
        double worst = 0.0;
        for (int k = 1; k <= 2; ++k) {
            const auto field = invariant_field(InvariantId::parse("Ik_alpha:k=" + std::to_string(k)), ctx);
            for (int s = 0; s < 10; ++s) {
                const Operator p = random_upper(n, rng);
                worst = std::max(worst, ham_vector_field(kind, field, p).cwiseAbs().maxCoeff());
            }
        }
        out.push_back(make_check("casimir_Ik_alpha", worst, 1e-9));
    }

    {
        double worst = 0.0;
        for (int s = 0; s < 10; ++s) {
            Operator x = Operator::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) x += u(rng) * basis_e(al, i, j);
            if (x.norm() > 0.5) x *= 0.5 / x.norm();
            const Operator p = random_upper(n, rng);
            const Operator q = coadjoint_action(CoadjointKind::plus_alpha, al, matrix_exp(x), p);
            for (int k = 1; k <= 2; ++k) {
                const double i0 = ik_alpha(al, p, k);
                worst = std::max(worst, std::abs(ik_alpha(al, q, k) - i0) / (1.0 + std::abs(i0)));
            }
        }
        out.push_back(make_check("coadjoint_invariance", worst, 1e-8));
    }

    {
        std::uniform_int_distribution<int> coin(0, 3);
        int mismatches = 0;
        for (int s = 0; s < 50; ++s) {
            std::vector<double> va(static_cast<std::size_t>(n)), vb(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const int c = coin(rng);
                va[static_cast<std::size_t>(i)] = c == 0 ? 0.0 : u(rng);
                vb[static_cast<std::size_t>(i)] = c == 1 ? 0.0 : (c == 2 ? u(rng) : va[static_cast<std::size_t>(i)]);
            }
            const DeformationSequence sa(va), sb(vb);
            bool brute = true;
            for (int i = 0; i < n - 1; ++i)
                for (int j = i + 1; j < n - 1; ++j) brute = brute && pencil_pair_condition(sa, sb, i, j);
            if (brute != pencil_classify(sa, sb).pass) ++mismatches;
        }
        out.push_back(make_check("pencil_classification_mismatches", mismatches, 0.0));
    }

    {
        const auto kind = BracketKind::plus_alpha(al);
        const InvariantContext ctx(a);
        const ScalarField h = ScalarField::linear(random_upper(n, rng)) + product(ScalarField::coordinate(0, 1), ScalarField::coordinate(0, n - 1));
        IntegratorConfig ic;
        ic.t1 = 1.0;
        ic.samples = 21;
        ic.rtol = 1e-11;
        ic.atol = 1e-13;
        const Trajectory traj = flow(kind, h, random_upper(n, rng, 0.5), ic);
        std::vector<InvariantId> ids{InvariantId::parse("Ik_alpha:k=1"), InvariantId::parse("Ik_alpha:k=2")};
        const auto rep = conservation_report(traj, kind, ids, ctx);
        double worst = 0.0;
        for (const auto& [name, st] : rep.invariants) worst = std::max(worst, st.max_rel);
        out.push_back(make_check("flow_casimir_drift", worst, 1e-8));
    }

    if (n >= 4) {
        ComplexState s;
        const int d = n - 2;
        std::normal_distribution<double> nd(0.0, 1.0);
        s.a = u(rng);
        s.delta = random_upper(d, rng);
        s.z.resize(d);
        for (int i = 0; i < d; ++i) s.z(i) = 0.5 * Complex(nd(rng), nd(rng));
        IntegratorConfig ic;
        ic.t1 = 2.0;
        ic.samples = 21;
        ic.rtol = 1e-11;
        ic.atol = 1e-13;
        const Trajectory traj = cubic_flow(s, ic);
        const auto inv0 = cubic_invariants(s);
        double worst = 0.0;
        for (const auto& x : traj.states) {
            ComplexState st = s;
            st.z = unpack_complex(x);
            const auto inv = cubic_invariants(st);
            for (std::size_t m = 0; m < 5; ++m) worst = std::max(worst, std::abs(inv.h[m] - inv0.h[m]));
            worst = std::max(worst, std::abs(inv.varrho2 - inv0.varrho2));
            worst = std::max(worst, std::abs(inv.combo_5dd - inv0.combo_5dd));
        }
        out.push_back(make_check("cubic_flow_drift", worst, 1e-6));
    }
    return out;
}

}  // namespace hstoda
