#pragma once

#include "hstoda/dynamics.hpp"

#include <stdexcept>
#include <vector>

namespace hstoda {

// Repeated roots / vanishing modulus in a closed-form solution.
class DegenerateModulusError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---- N - 2 = 2: trigonometric solution ---------------------------------------
//
// theta(t) = omega1 t + phi0 is the argument of eta_1 = xi^T xi, and the polar
// angles of Re xi, Im xi advance as
//   alpha' = base + 2 K' / (c2 + varrho cos theta)
//   beta'  = base + 2 K' / (c2 - varrho cos theta)
// integrated by the unwrapped arctan formula, or by quadrature when the
// closed form does not apply (varrho ~ 0 or omega1 ~ 0).
class N2Solution {
public:
    double omega1 = 0.0;
    double phi0 = 0.0;
    double r1 = 0.0;
    double c2 = 0.0;  // c^2 = |z|^2
    double varrho = 0.0;
    double c1 = 0.0;
    double lambda1 = 0.0;
    double a = 0.0;
    int branch = 1;  // sign of delta_01; O = diag(1, branch)
    bool quadrature = false;

    double alpha0 = 0.0;
    double beta0 = 0.0;
    double base = 0.0;
    double kprime = 0.0;

    double theta(double t) const { return omega1 * t + phi0; }
    void angles(double t, double& alpha, double& beta) const;
    void angle_rates(double t, double& dalpha, double& dbeta) const;
    Eigen::Vector2cd xi(double t) const;
    Eigen::VectorXcd z(double t) const;
    Eigen::Matrix2d O() const;
};

N2Solution solve_n2(const ComplexState& s0);

struct N2CheckReport {
    double max_norm_residual = 0.0;  // | |x|^2 + |y|^2 - c^2 |
    double max_area_residual = 0.0;  // | |x||y| sin(beta - alpha)| - sqrt(c^4 - varrho^2)/2 |
};
N2CheckReport n2_invariant_checks(const N2Solution& sol, const std::vector<double>& ts);

// ---- N - 2 = 3, 4: quadrature solution ----------------------------------------
//
// Components: 1 = first 2x2 block, k = second block or the odd scalar mode.
// p_1^2 = e + w4(r_1) with
//   w4(r) = c4 r^4 + c3 r^3 + c2 r^2 + c1 r.
struct QuarticData {
    double c4 = 0.0, c3 = 0.0, c2 = 0.0, c1 = 0.0;
    double e = 0.0;
    double a = 0.0;
    double lambda1 = 0.0;
    double lambdak = 0.0;
    double varrho = 0.0;
    double f = 0.0;
    double g = 0.0;
};

double quartic_w4(double r1, const QuarticData& d);
// From a rotated state and its parameters (exactly two components).
QuarticData make_quartic(const RotatedState& s, const RotatedParams& p);
// q_1 as a function of r_1 on the level set of f and g.
double n34_q1(double r1, const QuarticData& d);

class N34Solution {
public:
    // Throws std::invalid_argument when a^2 = lambda_1^2, lambda_k^2 = lambda_1^2 or
    // varrho = 0, and DegenerateModulusError on repeated roots of e + w4.
    N34Solution(const ReducedState& s0, double a);

    const QuarticData& quartic() const { return quartic_; }
    const RotatedParams& params() const { return params_; }
    double r_lo() const { return r_lo_; }
    double r_hi() const { return r_hi_; }
    // time for r_1 to go r_lo -> r_hi -> r_lo
    double period() const { return period_; }

    double theta(double t) const;
    double r1(double t) const;
    double p1(double t) const;
    double int_r1(double t) const;  // int_0^t r_1
    RotatedState rotated(double t) const;
    ReducedState reduced(double t) const;
    Eigen::VectorXcd z(double t) const;  // O^T xi

private:
    double r_of(double th) const;
    double p1_of(double th) const;
    double ptilde(double r) const;
    // (t, int r_1 dt) accumulated from theta = 0 to th
    Eigen::Vector2d clock(double th) const;
    RotatedState rotated_at(double th, double t, double jr) const;
    Eigen::VectorXd angle_rates(double th) const;

    ReducedState shape_;
    RotatedParams params_;
    QuarticData quartic_;
    double kappa_ = 0.0;
    double r_lo_ = 0.0, r_hi_ = 0.0;
    double qa_ = 0.0, qb_ = 0.0, qc_ = 0.0;  // e + w4 = (r - r_lo)(r_hi - r)(qa r^2 + qb r + qc)
    double theta0_ = 0.0;
    double phi0_ = 0.0;
    double period_ = 0.0, period_r_ = 0.0;
    std::vector<Eigen::Vector2d> table_;
    Eigen::Vector2d clock0_;
    Eigen::VectorXd angles0_;  // alpha_l, beta_l per block, then Phi = arg eta_0 for the scalar mode
};

N34Solution solve_n34(const ReducedState& s0, double a);
N34Solution solve_n34(const ComplexState& s0);

}  // namespace hstoda
