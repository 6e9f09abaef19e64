#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace hstoda {

// Dense N x N real matrix; every space in the library is a sector of this one.
using Operator = Eigen::MatrixXd;
using DiagonalVector = Eigen::VectorXd;

// Numerical failure during integration or quadrature (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double t)
        : std::runtime_error(what), time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

// Real sequence a_0..a_{N-1} with |a_i| <= 1.
class DeformationSequence {
public:
    explicit DeformationSequence(std::vector<double> a);
    static DeformationSequence constant(int n, double value);

    int size() const { return static_cast<int>(a_.size()); }
    double operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return a_; }

private:
    std::vector<double> a_;
};

// alpha_ij = a_i ... a_{j-1} (upper triangle, unit diagonal), with the
// truncated tails eta_i = a_i ... a_{N-1}, delta_i = alpha_0i and
// alpha_tail = a_0 ... a_{N-1}.
struct AlphaCoefficients {
    Eigen::MatrixXd alpha;
    DiagonalVector eta;
    DiagonalVector delta;
    double alpha_tail = 1.0;

    int size() const { return static_cast<int>(alpha.rows()); }
    double operator()(int i, int j) const { return alpha(i, j); }
};

AlphaCoefficients build_alpha(const DeformationSequence& seq);

// Entrywise alpha_ij * x_ij on a strictly upper triangular argument.
Operator alpha_apply(const AlphaCoefficients& al, const Operator& x_plus);
// Same map applied to the strictly upper part of any x (no shape check).
Operator alpha_of_upper(const AlphaCoefficients& al, const Operator& x);

struct Split {
    Operator lower;
    Operator diag;
    Operator upper;
};
Split split(const Operator& x);
Operator strictly_lower(const Operator& x);
Operator strictly_upper(const Operator& x);
Operator diagonal_part(const Operator& x);
bool is_strictly_upper(const Operator& x);

// x_- + x_0 + alpha(x_-^T)  and  x_+ - alpha(x_-^T); they sum to x.
Operator project_alpha(const AlphaCoefficients& al, const Operator& x);
Operator project_plus_alpha(const AlphaCoefficients& al, const Operator& x);

// |j><i| - alpha_ij |i><j|
Operator basis_e(const AlphaCoefficients& al, int i, int j);
Operator unit(int n, int i, int j);

// X eta Y - Y eta X
Operator eta_bracket(const Operator& X, const Operator& Y, const DiagonalVector& eta);
bool in_O_eta(const Operator& X, const DiagonalVector& eta, double tol);

// s^i: drop the leading i entries, zero-pad the tail.
DiagonalVector shift_down(const DiagonalVector& d, int i);
// s~^l: prepend l zeros, drop the tail.
DiagonalVector shift_up(const DiagonalVector& d, int l);

Operator matrix_exp(const Operator& x);

}  // namespace hstoda
