#pragma once

#include "hstoda/core.hpp"
#include "hstoda/poisson.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace hstoda {

enum class InvariantTag { I_l, I_l_alpha, I_l_minus0, Ik_alpha, C2_sixdim, C3_sixdim, magri, h_m, hkn_closed };

// Addressable by strings such as "Ik_alpha:k=2", "magri:k=2,n=3", "h_m:m=4",
// "I_l_alpha:l=3", "C2_sixdim".
struct InvariantId {
    InvariantTag tag = InvariantTag::I_l;
    int l = 2;
    int k = 1;
    int n = 0;
    int m = 1;

    static InvariantId parse(const std::string& s);
    std::string name() const;
    // chart the invariant is defined on
    BracketTag natural_chart() const;
};

// Deformation data an invariant may need: alpha for everything, beta for the
// Magri family (the pencil's second sequence).
struct InvariantContext {
    DeformationSequence a;
    std::optional<DeformationSequence> b;
    AlphaCoefficients alpha;
    std::optional<AlphaCoefficients> beta;

    explicit InvariantContext(const DeformationSequence& seq_a);
    InvariantContext(const DeformationSequence& seq_a, const DeformationSequence& seq_b);
};

double eval_invariant(const InvariantId& id, const InvariantContext& ctx, const Operator& point);
// Same value plus analytic gradient (and no Hessian).
ScalarField invariant_field(const InvariantId& id, const InvariantContext& ctx);

// I^k for the deformation (eta, delta, tail):
//   Tr M^k,  M = tail rho rho - rho E rho^T D - E rho^T D rho + E rho^T rho^T D
double ik_general(const DiagonalVector& eta, const DiagonalVector& delta, double tail, const Operator& rho, int k);
Operator ik_general_gradient(const DiagonalVector& eta, const DiagonalVector& delta, double tail,
                             const Operator& rho, int k);
double ik_alpha(const AlphaCoefficients& al, const Operator& rho, int k);
// tail^k Tr (rho - eta rho^T eta^{-1})^{2k}   (nonsingular sequences)
double ik_reduced_nonsingular(const AlphaCoefficients& al, const Operator& rho, int k);
// 2 (-1)^k Tr (rho eta rho^T delta)^k   (sequences with a zero)
double ik_reduced_singular(const AlphaCoefficients& al, const Operator& rho, int k);

// I^k of the pencil member alpha + eps beta:
//   c = (1+eps)(tail_a + eps tail_b), E = eta_a + eps eta_b, D = delta_a + eps delta_b
double pencil_casimir(int k, const AlphaCoefficients& al, const AlphaCoefficients& be, double eps, const Operator& rho);

// [h^k_0 ... h^k_{2k}] of eps -> I^k_{alpha + eps beta}, by interpolation on eps = -k..k.
std::vector<double> magri_coefficients(int k, const DeformationSequence& a, const DeformationSequence& b,
                                       const Operator& rho);
std::vector<Operator> magri_gradients(int k, const DeformationSequence& a, const DeformationSequence& b,
                                      const Operator& rho);

// N = 6 expanded forms.
double i1_sixdim_expanded(const DeformationSequence& a, const Operator& rho);
double c2_sixdim(const DeformationSequence& a, const Operator& rho);
double c3_sixdim(const DeformationSequence& a, const Operator& rho);
Operator c2_sixdim_gradient(const DeformationSequence& a, const Operator& rho);
Operator c3_sixdim_gradient(const DeformationSequence& a, const Operator& rho);

// Block functions of rho_+ (a = rho_01, x = rho_0,2:, y = rho_1,2:, delta = rho_2:,2:).
double h_block(int m, const Operator& rho);
Operator h_block_gradient(int m, const Operator& rho);
// h^k_n as the closed combinations of h_1..h_5 for the pencil a = 1, b_1 = b.
double hkn_closed(int k, int n, double b, const Operator& rho);
Operator hkn_closed_gradient(int k, int n, double b, const Operator& rho);

double involution_residual(const InvariantId& id1, const InvariantId& id2, const BracketKind& kind,
                           const InvariantContext& ctx, const Operator& point);

enum class CoadjointKind { alpha, minus0, plus_alpha };

// Ad*_{g^{-1}} point = pi(g iota(point) g^{-1}).  Points: (rho_-, rho_0) chart
// (lower + diagonal) for alpha and minus0, strictly upper for plus_alpha.
Operator coadjoint_action(CoadjointKind which, const AlphaCoefficients& al, const Operator& g, const Operator& point);
Operator ad_star(CoadjointKind which, const AlphaCoefficients& al, const Operator& x, const Operator& point);
// rho_- + rho_0 + alpha(rho_-^T)
Operator iota_alpha(const AlphaCoefficients& al, const Operator& lower_point);

// Per-block invariants of the reduced chart:
//   c = lambda xi^H xi - i a xi^H eps xi
//   d = (a^2/2)|xi^T xi|^2 - (a^2 - lambda^2)/2 (xi^H xi)^2 - lambda c xi^H xi
// and d = -c^2/2 identically.
struct BlockInvariants {
    double c;
    double d;
};
using Vector2c = Eigen::Vector2cd;
BlockInvariants reduced_block_invariants(const Vector2c& xi, double lambda, double a);
// |xi^T xi|^2 - (xi^H xi)^2 - (xi^H eps xi)^2, which vanishes identically
double identity_14d_residual(const Vector2c& xi);

}  // namespace hstoda
