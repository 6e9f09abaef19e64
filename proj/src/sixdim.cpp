// Expanded N = 6 invariants: I^1, and the Casimirs C^2 (sum of 15 weighted
// squared Pfaffian-type terms) and C^3 (one squared 15-term sum).
#include "hstoda/invariants.hpp"


namespace hstoda {

namespace {

struct Monomial {
    double coef;
    std::vector<Coordinate> vars;
};

struct Square {
    double weight;
    std::vector<Monomial> inner;
};

double monomial_value(const Monomial& m, const Operator& r) {
    double v = m.coef;
    for (auto [i, j] : m.vars) v *= r(i, j);
    return v;
}

double square_sum(const std::vector<Square>& terms, const Operator& r) {
    double s = 0.0;
    for (const auto& t : terms) {
        double inner = 0.0;
        for (const auto& m : t.inner) inner += monomial_value(m, r);
        s += t.weight * inner * inner;
    }
    return s;
}

Operator square_sum_gradient(const std::vector<Square>& terms, const Operator& r) {
    Operator g = Operator::Zero(r.rows(), r.cols());
    for (const auto& t : terms) {
        double inner = 0.0;
        for (const auto& m : t.inner) inner += monomial_value(m, r);
        for (const auto& m : t.inner)
            for (std::size_t v = 0; v < m.vars.size(); ++v) {
                double d = m.coef;
                for (std::size_t u = 0; u < m.vars.size(); ++u)
                    if (u != v) d *= r(m.vars[u].first, m.vars[u].second);
                g(m.vars[v].first, m.vars[v].second) += 2.0 * t.weight * inner * d;
            }
    }
    return g;
}

void require_six(const DeformationSequence& a, const Operator& r) {
    if (a.size() != 6 || r.rows() != 6 || r.cols() != 6)
        throw std::invalid_argument("sixdim invariants are defined for N = 6 only");
}

// c * r_pq r_st - r_pr r_qs + r_ps r_qr  for p < q < s < t written as (p,q,r,s)
std::vector<Monomial> pf(double c, int p, int q, int r, int s) {
    return {{c, {{p, q}, {r, s}}}, {-1.0, {{p, r}, {q, s}}}, {1.0, {{p, s}, {q, r}}}};
}

std::vector<Square> c2_terms(const DeformationSequence& a) {
    const double a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3], a4 = a[4];
    return {
        {a0 * a1 * a1 * a2, pf(a3, 2, 3, 4, 5)},
        {a0 * a1 * a2, pf(a3, 1, 3, 4, 5)},
        {a0 * a1, pf(a2 * a3, 1, 2, 4, 5)},
        {a1 * a2, pf(a3, 0, 3, 4, 5)},
        {a1, pf(a2 * a3, 0, 2, 4, 5)},
        {1.0, pf(a1 * a2 * a3, 0, 1, 4, 5)},
        {a0 * a1 * a3, pf(a2, 1, 2, 3, 5)},
        {a1 * a3, pf(a2, 0, 2, 3, 5)},
        {a3, pf(a1 * a2, 0, 1, 3, 5)},
        {a0 * a1 * a3 * a4, pf(a2, 1, 2, 3, 4)},
        {a1 * a3 * a4, pf(a2, 0, 2, 3, 4)},
        {a3 * a4, pf(a1 * a2, 0, 1, 3, 4)},
        {a2 * a3, pf(a1, 0, 1, 2, 5)},
        {a2 * a3 * a4, pf(a1, 0, 1, 2, 4)},
        {a2 * a3 * a3 * a4, pf(a1, 0, 1, 2, 3)},
    };
}

std::vector<Square> c3_terms(const DeformationSequence& a) {
    const double a1 = a[1], a2 = a[2], a3 = a[3];
    std::vector<Monomial> s{
        {a1 * a2 * a3, {{0, 1}, {2, 3}, {4, 5}}}, {-a2 * a3, {{0, 2}, {1, 3}, {4, 5}}},
        {a2 * a3, {{0, 3}, {1, 2}, {4, 5}}},      {-a1 * a2, {{0, 1}, {2, 4}, {3, 5}}},
        {a2, {{0, 2}, {1, 4}, {3, 5}}},           {-a2, {{0, 4}, {1, 2}, {3, 5}}},
        {a1 * a2, {{0, 1}, {2, 5}, {3, 4}}},      {-a2, {{0, 2}, {1, 5}, {3, 4}}},
        {a2, {{0, 5}, {1, 2}, {3, 4}}},           {-1.0, {{0, 3}, {1, 4}, {2, 5}}},
        {1.0, {{0, 4}, {1, 3}, {2, 5}}},          {1.0, {{0, 3}, {1, 5}, {2, 4}}},
        {-1.0, {{0, 5}, {1, 3}, {2, 4}}},         {-1.0, {{0, 4}, {1, 5}, {2, 3}}},
        {1.0, {{0, 5}, {1, 4}, {2, 3}}},
    };
    return {{1.0, s}};
}

}  // namespace

double i1_sixdim_expanded(const DeformationSequence& a, const Operator& r) {
    require_six(a, r);
    const double a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3], a4 = a[4];
    auto R = [&r](int i, int j) { return r(i, j) * r(i, j); };
    return -2.0 * (a0 * a1 * a2 * a3 * R(4, 5) + a0 * a1 * a2 * R(3, 5) + a0 * a1 * a2 * a4 * R(3, 4) +
                   a0 * a1 * R(2, 5) + a0 * a1 * a4 * R(2, 4) + a0 * a1 * a3 * a4 * R(2, 3) + a0 * R(1, 5) +
                   a0 * a4 * R(1, 4) + a0 * a3 * a4 * R(1, 3) + a0 * a2 * a3 * a4 * R(1, 2) + R(0, 5) +
                   a4 * R(0, 4) + a3 * a4 * R(0, 3) + a2 * a3 * a4 * R(0, 2) + a1 * a2 * a3 * a4 * R(0, 1));
}

double c2_sixdim(const DeformationSequence& a, const Operator& r) {
    require_six(a, r);
    return square_sum(c2_terms(a), r);
}

double c3_sixdim(const DeformationSequence& a, const Operator& r) {
    require_six(a, r);
    return square_sum(c3_terms(a), r);
}

Operator c2_sixdim_gradient(const DeformationSequence& a, const Operator& r) {
    require_six(a, r);
    return square_sum_gradient(c2_terms(a), r);
}

Operator c3_sixdim_gradient(const DeformationSequence& a, const Operator& r) {
    require_six(a, r);
    return square_sum_gradient(c3_terms(a), r);
}

}  // namespace hstoda
