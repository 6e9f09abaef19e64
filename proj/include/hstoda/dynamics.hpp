#pragma once

#include "hstoda/core.hpp"
#include "hstoda/integrate.hpp"
#include "hstoda/invariants.hpp"
#include "hstoda/poisson.hpp"

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hstoda {

using Complex = std::complex<double>;

// ---- Hamilton flows on a bracket chart ------------------------------------

Eigen::VectorXd pack_chart(const BracketKind& kind, const Operator& point);
Operator unpack_chart(const BracketKind& kind, const Eigen::VectorXd& v);
std::vector<std::string> chart_names(const BracketKind& kind);

Trajectory flow(const BracketKind& kind, const ScalarField& h, const Operator& point, const IntegratorConfig& cfg);

// ---- block chart (a = 1 pencil setting) ------------------------------------
//
// rho_+ = [[0, a, x^T], [0, 0, y^T], [0, 0, delta]]

struct BlockState {
    double a = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::MatrixXd delta;  // strictly upper, (N-2) x (N-2)

    int dim() const { return static_cast<int>(x.size()); }
};

// Partial derivatives of h in block coordinates; hdelta is dh/d delta_ij
// at strictly upper positions.
struct BlockGradient {
    double ha = 0.0;
    Eigen::VectorXd hx;
    Eigen::VectorXd hy;
    Eigen::MatrixXd hdelta;
};

using BlockTangent = BlockState;

Operator to_plus(const BlockState& s);
BlockState block_from_plus(const Operator& rho);
BlockGradient block_gradient_from_plus(const Operator& grad);

// Hamilton equations in (a, x, y, delta) with alpha = 1.
BlockTangent block_rhs(const BlockState& s, const BlockGradient& g);

// ---- complex chart z = x + i y ---------------------------------------------

struct ComplexState {
    Eigen::VectorXcd z;
    double a = 0.0;
    Eigen::MatrixXd delta;

    int dim() const { return static_cast<int>(z.size()); }
};

ComplexState to_complex(const BlockState& s);
BlockState to_block(const ComplexState& s);

// dz/dt = (h_delta^T - h_delta + i h_a) z + 2 (delta - delta^T - i a) dh/dzbar
Eigen::VectorXcd complex_rhs(const ComplexState& s, const BlockGradient& g);
// (1/2) dz/dt = (1+c2) K z - i a (1+c2) z - (z^T z)(K - i a) zbar,  K = delta - delta^T
Eigen::VectorXcd cubic_rhs(const ComplexState& s, double c2);
// h = (h_1 - h_4)/2 + h_2^2 on rho_+
ScalarField cubic_hamiltonian();

Eigen::VectorXd pack_complex(const Eigen::VectorXcd& z);
Eigen::VectorXcd unpack_complex(const Eigen::VectorXd& v);

// Integrate the cubic flow with c2 fixed from the initial data.
Trajectory cubic_flow(const ComplexState& s0, const IntegratorConfig& cfg);

// Invariants of the cubic flow evaluated on z (a and delta fixed).
struct CubicInvariants {
    std::array<double, 5> h;  // h_1 .. h_5
    double c2;
    double varrho2;
    double combo_5dd;  // zbar^T K^2 z + i a zbar^T K z
};
CubicInvariants cubic_invariants(const ComplexState& s);

// ---- skew normal form and the reduced chart --------------------------------

struct SkewNormalForm {
    Eigen::MatrixXd O;        // rows: new basis; O (delta - delta^T) O^T is block diagonal
    Eigen::VectorXd lambdas;  // one per 2x2 block, descending, >= 0
    bool odd = false;         // trailing 1x1 zero block
};

SkewNormalForm skew_normal_form(const Eigen::MatrixXd& delta);

struct ReducedState {
    std::vector<Eigen::Vector2cd> xi;
    std::optional<Complex> xi0;
    Eigen::VectorXd lambdas;
    Eigen::MatrixXd O;
};

ReducedState reduce(const ComplexState& s);
ReducedState reduce(const ComplexState& s, const SkewNormalForm& nf);
Eigen::VectorXcd unreduce(const ReducedState& r);  // z = O^T xi

struct ReducedTangent {
    std::vector<Eigen::Vector2cd> dxi;
    std::optional<Complex> dxi0;
};

ReducedTangent reduced_rhs(const ReducedState& s, double a, double c2);
Eigen::VectorXd pack_reduced(const ReducedState& s);
ReducedState unpack_reduced(const Eigen::VectorXd& v, const ReducedState& shape);
Trajectory reduced_flow(const ReducedState& s0, double a, const IntegratorConfig& cfg);

// ---- rotating frame ---------------------------------------------------------
//
// eta_k = xi_k^T xi_k = e^{i phi}(q_k + i p_k); components are the 2x2 blocks
// in order, followed by the odd-case scalar mode (lambda = 0) when present.

struct RotatedParams {
    double a = 0.0;
    double c2 = 0.0;
    double varrho = 0.0;
    Eigen::VectorXd lambdas;  // per component
    Eigen::VectorXd c;        // per component c_k (0 for the scalar mode)
    bool odd = false;
};

struct RotatedState {
    Eigen::VectorXd q;
    Eigen::VectorXd p;
    Eigen::VectorXd r;
    double phi = 0.0;
};

std::vector<Complex> block_etas(const ReducedState& s);  // eta_k, then eta_0
RotatedParams rotated_params(const ReducedState& s, double a);
RotatedState to_rotated(const ReducedState& s, double a);
std::vector<Complex> etas_from_rotated(const RotatedState& s);

RotatedState rotated_rhs(const RotatedState& s, const RotatedParams& p);
// phi' = -4 a (1 + c^2) + 4 sum r_l
double phase_rhs(const RotatedState& s, const RotatedParams& p);

Eigen::VectorXd pack_rotated(const RotatedState& s);
RotatedState unpack_rotated(const Eigen::VectorXd& v, std::size_t m);
Trajectory rotated_flow(const RotatedState& s0, const RotatedParams& p, const IntegratorConfig& cfg);

struct RotatedInvariants {
    double sum_p;
    double sum_q;
    double f;  // sum r_l / (a^2 - lambda_l^2)
    double g;  // varrho sum (a^2 - lambda_l^2) q_l - (sum r_l)^2 / 2
    double max_constraint;  // max_k |r_k^2 - (a^2 - lambda_k^2)(q_k^2 + p_k^2) - c_k^2|
};
RotatedInvariants rotated_invariants(const RotatedState& s, const RotatedParams& p);

// ---- angles -----------------------------------------------------------------

// Per-block magnitudes: u_k = xi_k^H xi_k = (a r_k - lambda_k c_k)/(a^2 - lambda_k^2).
double block_u(double r, double lambda, double c, double a);

struct AngleRates {
    Eigen::VectorXd dalpha;
    Eigen::VectorXd dbeta;
};
// etas/r over all components (blocks first, then the scalar mode).  Throws
// NumericalError when |Re xi_k|^2 or |Im xi_k|^2 < 1e-10.
AngleRates angles_rhs(const std::vector<Complex>& etas, const Eigen::VectorXd& r, const RotatedParams& p,
                      double t = 0.0);

// xi from |Re xi|^2 = (u + Re eta)/2, |Im xi|^2 = (u - Re eta)/2 and the polar angles
Eigen::Vector2cd xi_from_angles(Complex eta, double u, double alpha, double beta);
void block_angles(const Eigen::Vector2cd& xi, double& alpha, double& beta);

// ---- conservation -------------------------------------------------------------

struct DriftStat {
    double initial = 0.0;
    double max_abs = 0.0;  // max |F(t) - F(0)|
    double max_rel = 0.0;  // max |F(t) - F(0)| / (1 + |F(0)|)
};

struct ConservationReport {
    std::map<std::string, DriftStat> invariants;
    double state_max_drift = 0.0;  // max |x(t) - x(0)|_inf
};

using TrajectoryFunction = std::function<double(const Eigen::VectorXd&)>;

ConservationReport conservation_report(const Trajectory& traj,
                                       const std::vector<std::pair<std::string, TrajectoryFunction>>& fns);
// Invariant ids evaluated on a chart trajectory.
ConservationReport conservation_report(const Trajectory& traj, const BracketKind& kind,
                                       const std::vector<InvariantId>& ids, const InvariantContext& ctx);

}  // namespace hstoda
