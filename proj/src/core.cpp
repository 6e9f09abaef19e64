#include "hstoda/core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace hstoda {

DeformationSequence::DeformationSequence(std::vector<double> a) : a_(std::move(a)) {
    if (a_.size() < 2)
        throw std::invalid_argument("deformation sequence needs N >= 2 entries");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!std::isfinite(a_[i]) || std::abs(a_[i]) > 1.0)
            throw std::invalid_argument("deformation sequence entry a_" + std::to_string(i) +
                                        " violates |a_i| <= 1");
    }
}

DeformationSequence DeformationSequence::constant(int n, double value) {
    return DeformationSequence(std::vector<double>(static_cast<std::size_t>(n), value));
}

AlphaCoefficients build_alpha(const DeformationSequence& seq) {
    const int n = seq.size();
    AlphaCoefficients al;
    al.alpha = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double prod = 1.0;
        al.alpha(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            prod *= seq[j - 1];
            al.alpha(i, j) = prod;
        }
    }
    al.eta.resize(n);
    double tail = 1.0;
    for (int i = n - 1; i >= 0; --i) {
        tail *= seq[i];
        al.eta(i) = tail;
    }
    al.delta = al.alpha.row(0).transpose();
    al.alpha_tail = al.eta(0);
    return al;
}

bool is_strictly_upper(const Operator& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j <= i && j < x.cols(); ++j)
            if (x(i, j) != 0.0) return false;
    return true;
}

Operator alpha_of_upper(const AlphaCoefficients& al, const Operator& x) {
    const int n = al.size();
    Operator out = Operator::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out(i, j) = al.alpha(i, j) * x(i, j);
    return out;
}

Operator alpha_apply(const AlphaCoefficients& al, const Operator& x_plus) {
    if (x_plus.rows() != al.size() || x_plus.cols() != al.size())
        throw std::invalid_argument("alpha_apply: size mismatch");
    if (!is_strictly_upper(x_plus))
        throw std::invalid_argument("alpha_apply: argument is not strictly upper triangular");
    return alpha_of_upper(al, x_plus);
}

Operator strictly_lower(const Operator& x) { return x.triangularView<Eigen::StrictlyLower>(); }
Operator strictly_upper(const Operator& x) { return x.triangularView<Eigen::StrictlyUpper>(); }
Operator diagonal_part(const Operator& x) { return x.diagonal().asDiagonal(); }

Split split(const Operator& x) { return {strictly_lower(x), diagonal_part(x), strictly_upper(x)}; }

Operator project_alpha(const AlphaCoefficients& al, const Operator& x) {
    Operator lo = strictly_lower(x);
    return lo + diagonal_part(x) + alpha_of_upper(al, lo.transpose());
}

Operator project_plus_alpha(const AlphaCoefficients& al, const Operator& x) {
    return strictly_upper(x) - alpha_of_upper(al, strictly_lower(x).transpose());
}

Operator unit(int n, int i, int j) {
    Operator u = Operator::Zero(n, n);
    u(i, j) = 1.0;
    return u;
}

Operator basis_e(const AlphaCoefficients& al, int i, int j) {
    const int n = al.size();
    if (i < 0 || j >= n || i >= j) throw std::out_of_range("basis_e: need 0 <= i < j < N");
    Operator e = unit(n, j, i);
    e(i, j) = -al.alpha(i, j);
    return e;
}

Operator eta_bracket(const Operator& X, const Operator& Y, const DiagonalVector& eta) {
    auto E = eta.asDiagonal();
    return X * E * Y - Y * E * X;
}

bool in_O_eta(const Operator& X, const DiagonalVector& eta, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("in_O_eta: tol must be positive");
    auto E = eta.asDiagonal();
    Operator r = X * E + E * X.transpose();
    return r.norm() <= tol;
}

DiagonalVector shift_down(const DiagonalVector& d, int i) {
    const auto n = d.size();
    if (i < 0 || i >= n) throw std::out_of_range("shift_down: shift out of range");
    DiagonalVector out = DiagonalVector::Zero(n);
    out.head(n - i) = d.tail(n - i);
    return out;
}

DiagonalVector shift_up(const DiagonalVector& d, int l) {
    const auto n = d.size();
    if (l < 0 || l >= n) throw std::out_of_range("shift_up: shift out of range");
    DiagonalVector out = DiagonalVector::Zero(n);
    out.tail(n - l) = d.head(n - l);
    return out;
}

Operator matrix_exp(const Operator& x) {
    Operator out = x.exp();
    return out;
}

}  // namespace hstoda
