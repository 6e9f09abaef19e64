#pragma once

#include "hstoda/core.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace hstoda {

using Coordinate = std::pair<int, int>;

enum class BracketTag { canonical, plus_alpha, minus0, eta, k_diagonal, pencil };

// Which Lie-Poisson structure, together with its parameters.  Points of every
// kind are stored as dense N x N matrices; `chart` lists the live entries:
//   canonical      all entries
//   plus_alpha     strictly upper (rho_+)
//   eta, pencil    strictly upper
//   minus0         lower + diagonal (rho_-, rho_0)
//   k_diagonal     entries (n+i, n), i < k  (the diagonals varrho_i)
struct BracketKind {
    BracketTag tag = BracketTag::canonical;
    int n = 0;
    AlphaCoefficients alpha;
    AlphaCoefficients beta;
    DiagonalVector eta;
    int k = 0;
    // pencil weights: {.,.}_alpha * weight_a + {.,.}_beta * weight_b
    double weight_a = 1.0;
    double weight_b = 0.0;

    static BracketKind canonical(int n);
    static BracketKind plus_alpha(const AlphaCoefficients& al);
    static BracketKind minus0(int n);
    static BracketKind eta_kind(const DiagonalVector& eta);
    static BracketKind k_diagonal(int n, int k);
    // {.,.}_{+,alpha} + eps {.,.}_{+,beta}; throws unless (a, b) classifies PASS.
    static BracketKind pencil(const DeformationSequence& a, const DeformationSequence& b, double eps);
    // p {.,.}_{+,alpha} + (1 - p) {.,.}_{+,beta}, i.e. p times the eps = (1-p)/p member.
    static BracketKind pencil_p(const DeformationSequence& a, const DeformationSequence& b, double p);
};

std::vector<Coordinate> chart(const BracketKind& kind);
// Throws std::invalid_argument when `point` has entries outside the chart.
void check_point(const BracketKind& kind, const Operator& point);

// A smooth function of the point.  `grad` returns dF/drho_ij at position (i,j)
// (entries outside the chart are ignored).  `hess` returns the directional
// derivative of the gradient along a direction.  Both are optional; missing
// gradients fall back to central differences with step fd_step * (1 + |x|).
// Closures must be side-effect free.
struct ScalarField {
    std::function<double(const Operator&)> eval;
    std::function<Operator(const Operator&)> grad;
    std::function<Operator(const Operator&, const Operator&)> hess;
    double fd_step = 1e-5;
    bool allow_fd = true;

    double operator()(const Operator& p) const { return eval(p); }

    static ScalarField coordinate(int i, int j);
    static ScalarField constant(double c);
    // sum_ij W_ij rho_ij
    static ScalarField linear(const Operator& W);
};

ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField operator*(double c, const ScalarField& f);
ScalarField product(const ScalarField& f, const ScalarField& g);

Operator fd_gradient(const std::function<double(const Operator&)>& f, const Operator& point,
                     const std::vector<Coordinate>& coords, double step);
Operator gradient(const ScalarField& f, const Operator& point, const std::vector<Coordinate>& coords);

// The bilinear form B(point; grad f, grad g) defining {f, g} for `kind`.
double bracket_form(const BracketKind& kind, const Operator& point, const Operator& gf, const Operator& gg);
double bracket(const BracketKind& kind, const ScalarField& f, const ScalarField& g, const Operator& point);

// Component (i,j) is {rho_ij, h}.
Operator ham_vector_field(const BracketKind& kind, const ScalarField& h, const Operator& point);
Operator ham_field_from_gradient(const BracketKind& kind, const Operator& grad_h, const Operator& point);

double jacobi_residual(const BracketKind& kind, const ScalarField& f, const ScalarField& g,
                       const ScalarField& h, const Operator& point);

struct StructureTerm {
    double coefficient;
    Coordinate index;
};
// {rho_ij, rho_nm}_{+,alpha} as a combination of coordinate functions.
std::vector<StructureTerm> structure_bracket(const AlphaCoefficients& al, int i, int j, int n, int m);

// Closed band [lo, hi] between consecutive zero indices of (a, b), holding at
// most one differing index for a PASS.
struct Band {
    int lo;
    int hi;
    std::optional<int> differing;
};

struct PencilClassification {
    bool pass = false;
    std::vector<Band> bands;
    std::optional<Coordinate> witness;  // (i, j) violating the product condition
    bool tail_consistent = false;       // same verdict with index N-1 included
    std::vector<int> differing;         // indices i <= N-2 with a_i != b_i
};

PencilClassification pencil_classify(const DeformationSequence& a, const DeformationSequence& b);

// (a_i - b_i)(a_j - b_j) prod_{i<l<j} a_l b_l == 0 for the pair (i, j)
bool pencil_pair_condition(const DeformationSequence& a, const DeformationSequence& b, int i, int j);

// True when no differing index k has i <= k <= j - 1: then alpha_ij == beta_ij
// and the coordinate rho_ij belongs to a single band.
bool banded_coordinate(const PencilClassification& c, int i, int j);

DeformationSequence blend(const DeformationSequence& a, const DeformationSequence& b, double p);

double pencil_linearity_residual(const DeformationSequence& a, const DeformationSequence& b, double p,
                                 const ScalarField& f, const ScalarField& g, const Operator& point);

// rho_+ -> rho_+ eta
Operator r_eta(const DiagonalVector& eta, const Operator& rho_plus);
ScalarField compose_r_eta(const ScalarField& f, const DiagonalVector& eta);

// k_diagonal points: diagonals varrho_i (length N, entries past N-1-i zero).
std::vector<DiagonalVector> to_diagonals(const Operator& banded, int k);
Operator from_diagonals(const std::vector<DiagonalVector>& diagonals);

}  // namespace hstoda
