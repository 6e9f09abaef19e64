#include "hstoda/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace hstoda {

namespace {

Operator upper_x(const AlphaCoefficients& al, const Operator& g) {
    // X_f = G^T - alpha(G) for a strictly upper gradient G
    Operator gu = strictly_upper(g);
    return Operator(gu.transpose()) - alpha_of_upper(al, gu);
}

Operator lower_diag(const Operator& m) { return m.triangularView<Eigen::Lower>(); }

Operator band_part(const Operator& m, int k) {
    Operator out = Operator::Zero(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (int i = 0; i < k && c + i < m.rows(); ++i) out(c + i, c) = m(c + i, c);
    return out;
}

Operator mask(const Operator& m, const std::vector<Coordinate>& coords) {
    Operator out = Operator::Zero(m.rows(), m.cols());
    for (auto [i, j] : coords) out(i, j) = m(i, j);
    return out;
}

double plus_alpha_form(const AlphaCoefficients& al, const Operator& rho, const Operator& gf, const Operator& gg) {
    Operator xf = upper_x(al, gf);
    Operator xg = upper_x(al, gg);
    return (rho * (xf * xg - xg * xf)).trace();
}

Operator plus_alpha_field(const AlphaCoefficients& al, const Operator& rho, const Operator& gh) {
    Operator xh = upper_x(al, gh);
    return project_plus_alpha(al, xh * rho - rho * xh);
}

double k_diagonal_form(const Operator& rho, const Operator& gf, const Operator& gg, int k) {
    // sum_l sum_{i<=l} Tr varrho_l (F_i s^i(G_{l-i}) - G_i s^i(F_{l-i}))
    auto r = to_diagonals(rho, k);
    auto F = to_diagonals(band_part(gf, k), k);
    auto G = to_diagonals(band_part(gg, k), k);
    double acc = 0.0;
    for (int l = 0; l < k; ++l)
        for (int i = 0; i <= l; ++i) {
            DiagonalVector t = F[i].cwiseProduct(shift_down(G[l - i], i)) -
                               G[i].cwiseProduct(shift_down(F[l - i], i));
            acc += r[l].dot(t);
        }
    return acc;
}

}  // namespace

BracketKind BracketKind::canonical(int n) {
    BracketKind k;
    k.tag = BracketTag::canonical;
    k.n = n;
    return k;
}

BracketKind BracketKind::plus_alpha(const AlphaCoefficients& al) {
    BracketKind k;
    k.tag = BracketTag::plus_alpha;
    k.n = al.size();
    k.alpha = al;
    return k;
}

BracketKind BracketKind::minus0(int n) {
    BracketKind k;
    k.tag = BracketTag::minus0;
    k.n = n;
    return k;
}

BracketKind BracketKind::eta_kind(const DiagonalVector& eta) {
    BracketKind k;
    k.tag = BracketTag::eta;
    k.n = static_cast<int>(eta.size());
    k.eta = eta;
    return k;
}

BracketKind BracketKind::k_diagonal(int n, int kk) {
    if (kk < 1 || kk > n) throw std::invalid_argument("k_diagonal: need 1 <= k <= N");
    BracketKind k;
    k.tag = BracketTag::k_diagonal;
    k.n = n;
    k.k = kk;
    return k;
}

BracketKind BracketKind::pencil(const DeformationSequence& a, const DeformationSequence& b, double eps) {
    if (a.size() != b.size()) throw std::invalid_argument("pencil: sequence lengths differ");
    auto c = pencil_classify(a, b);
    if (!c.pass) throw std::invalid_argument("pencil: sequences do not form a Poisson pencil");
    BracketKind k;
    k.tag = BracketTag::pencil;
    k.n = a.size();
    k.alpha = build_alpha(a);
    k.beta = build_alpha(b);
    k.weight_a = 1.0;
    k.weight_b = eps;
    return k;
}

BracketKind BracketKind::pencil_p(const DeformationSequence& a, const DeformationSequence& b, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pencil: need p in [0, 1]");
    BracketKind k = pencil(a, b, 0.0);
    k.weight_a = p;
    k.weight_b = 1.0 - p;
    return k;
}

std::vector<Coordinate> chart(const BracketKind& kind) {
    std::vector<Coordinate> c;
    const int n = kind.n;
    switch (kind.tag) {
        case BracketTag::canonical:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) c.emplace_back(i, j);
            break;
        case BracketTag::plus_alpha:
        case BracketTag::eta:
        case BracketTag::pencil:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) c.emplace_back(i, j);
            break;
        case BracketTag::minus0:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) c.emplace_back(i, j);
            break;
        case BracketTag::k_diagonal:
            for (int i = 0; i < kind.k; ++i)
                for (int m = 0; m + i < n; ++m) c.emplace_back(m + i, m);
            break;
    }
    return c;
}

void check_point(const BracketKind& kind, const Operator& point) {
    if (point.rows() != kind.n || point.cols() != kind.n)
        throw std::invalid_argument("point size does not match bracket dimension");
    Operator live = mask(point, chart(kind));
    if ((point - live).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("point has entries outside the coordinate chart of the bracket");
}

ScalarField ScalarField::coordinate(int i, int j) {
    ScalarField f;
    f.eval = [i, j](const Operator& p) { return p(i, j); };
    f.grad = [i, j](const Operator& p) {
        Operator g = Operator::Zero(p.rows(), p.cols());
        g(i, j) = 1.0;
        return g;
    };
    f.hess = [](const Operator& p, const Operator&) { return Operator(Operator::Zero(p.rows(), p.cols())); };
    return f;
}

ScalarField ScalarField::constant(double c) {
    ScalarField f;
    f.eval = [c](const Operator&) { return c; };
    f.grad = [](const Operator& p) { return Operator(Operator::Zero(p.rows(), p.cols())); };
    f.hess = [](const Operator& p, const Operator&) { return Operator(Operator::Zero(p.rows(), p.cols())); };
    return f;
}

ScalarField ScalarField::linear(const Operator& W) {
    ScalarField f;
    f.eval = [W](const Operator& p) { return W.cwiseProduct(p).sum(); };
    f.grad = [W](const Operator&) { return W; };
    f.hess = [](const Operator& p, const Operator&) { return Operator(Operator::Zero(p.rows(), p.cols())); };
    return f;
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    ScalarField s;
    s.eval = [f, g](const Operator& p) { return f.eval(p) + g.eval(p); };
    if (f.grad && g.grad) s.grad = [f, g](const Operator& p) { return Operator(f.grad(p) + g.grad(p)); };
    if (f.hess && g.hess)
        s.hess = [f, g](const Operator& p, const Operator& v) { return Operator(f.hess(p, v) + g.hess(p, v)); };
    s.fd_step = std::min(f.fd_step, g.fd_step);
    s.allow_fd = f.allow_fd && g.allow_fd;
    return s;
}

ScalarField operator*(double c, const ScalarField& f) {
    ScalarField s = f;
    s.eval = [c, f](const Operator& p) { return c * f.eval(p); };
    if (f.grad) s.grad = [c, f](const Operator& p) { return Operator(c * f.grad(p)); };
    if (f.hess) s.hess = [c, f](const Operator& p, const Operator& v) { return Operator(c * f.hess(p, v)); };
    return s;
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
    ScalarField s;
    s.eval = [f, g](const Operator& p) { return f.eval(p) * g.eval(p); };
    if (f.grad && g.grad) {
        s.grad = [f, g](const Operator& p) { return Operator(f.eval(p) * g.grad(p) + g.eval(p) * f.grad(p)); };
        if (f.hess && g.hess)
            s.hess = [f, g](const Operator& p, const Operator& v) {
                Operator gf = f.grad(p), gg = g.grad(p);
                return Operator(gf.cwiseProduct(v).sum() * gg + gg.cwiseProduct(v).sum() * gf +
                                f.eval(p) * g.hess(p, v) + g.eval(p) * f.hess(p, v));
            };
    }
    s.fd_step = std::min(f.fd_step, g.fd_step);
    s.allow_fd = f.allow_fd && g.allow_fd;
    return s;
}

Operator fd_gradient(const std::function<double(const Operator&)>& f, const Operator& point,
                     const std::vector<Coordinate>& coords, double step) {
    Operator g = Operator::Zero(point.rows(), point.cols());
    Operator p = point;
    for (auto [i, j] : coords) {
        const double x = point(i, j);
        const double h = step * (1.0 + std::abs(x));
        p(i, j) = x + h;
        const double fp = f(p);
        p(i, j) = x - h;
        const double fm = f(p);
        p(i, j) = x;
        g(i, j) = (fp - fm) / (2.0 * h);
    }
    return g;
}

Operator gradient(const ScalarField& f, const Operator& point, const std::vector<Coordinate>& coords) {
    if (f.grad) return mask(f.grad(point), coords);
    if (!f.allow_fd) throw std::invalid_argument("scalar field has no gradient and finite differences are disabled");
    return fd_gradient(f.eval, point, coords, f.fd_step);
}

double bracket_form(const BracketKind& kind, const Operator& rho, const Operator& gf, const Operator& gg) {
    switch (kind.tag) {
        case BracketTag::canonical: {
            Operator df = gf.transpose(), dg = gg.transpose();
            return (rho * (df * dg - dg * df)).trace();
        }
        case BracketTag::plus_alpha:
            return plus_alpha_form(kind.alpha, rho, gf, gg);
        case BracketTag::minus0: {
            Operator df = lower_diag(gf).transpose(), dg = lower_diag(gg).transpose();
            return (rho * (df * dg - dg * df)).trace();
        }
        case BracketTag::eta: {
            Operator gfu = strictly_upper(gf), ggu = strictly_upper(gg);
            Operator yf = Operator(gfu.transpose()) - gfu;
            Operator yg = Operator(ggu.transpose()) - ggu;
            return (rho * eta_bracket(yf, yg, kind.eta)).trace();
        }
        case BracketTag::k_diagonal:
            return k_diagonal_form(rho, gf, gg, kind.k);
        case BracketTag::pencil:
            return kind.weight_a * plus_alpha_form(kind.alpha, rho, gf, gg) +
                   kind.weight_b * plus_alpha_form(kind.beta, rho, gf, gg);
    }
    return 0.0;
}

double bracket(const BracketKind& kind, const ScalarField& f, const ScalarField& g, const Operator& point) {
    check_point(kind, point);
    auto coords = chart(kind);
    return bracket_form(kind, point, gradient(f, point, coords), gradient(g, point, coords));
}

Operator ham_field_from_gradient(const BracketKind& kind, const Operator& grad_h, const Operator& rho) {
    auto coords = chart(kind);
    Operator gh = mask(grad_h, coords);
    switch (kind.tag) {
        case BracketTag::canonical: {
            Operator dh = gh.transpose();
            return dh * rho - rho * dh;
        }
        case BracketTag::plus_alpha:
            return plus_alpha_field(kind.alpha, rho, gh);
        case BracketTag::minus0: {
            Operator dh = gh.transpose();
            return lower_diag(Operator(dh * rho - rho * dh));
        }
        case BracketTag::eta: {
            Operator yh = Operator(gh.transpose()) - gh;
            auto E = kind.eta.asDiagonal();
            Operator m = E * yh * rho - rho * yh * E;
            return strictly_upper(Operator(m - m.transpose()));
        }
        case BracketTag::k_diagonal: {
            Operator dh = gh.transpose();
            return band_part(Operator(dh * rho - rho * dh), kind.k);
        }
        case BracketTag::pencil:
            return kind.weight_a * plus_alpha_field(kind.alpha, rho, gh) +
                   kind.weight_b * plus_alpha_field(kind.beta, rho, gh);
    }
    return Operator::Zero(rho.rows(), rho.cols());
}

Operator ham_vector_field(const BracketKind& kind, const ScalarField& h, const Operator& point) {
    check_point(kind, point);
    return ham_field_from_gradient(kind, gradient(h, point, chart(kind)), point);
}

namespace {

// gradient of rho -> {f, g}(rho); exact when both fields carry Hessians
Operator bracket_gradient(const BracketKind& kind, const ScalarField& f, const ScalarField& g,
                          const Operator& rho, const std::vector<Coordinate>& coords) {
    const auto n = rho.rows();
    if (f.grad && g.grad && f.hess && g.hess) {
        Operator gf = mask(f.grad(rho), coords), gg = mask(g.grad(rho), coords);
        Operator out = Operator::Zero(n, n);
        for (auto [i, j] : coords) {
            Operator e = Operator::Zero(n, n);
            e(i, j) = 1.0;
            out(i, j) = bracket_form(kind, e, gf, gg) +
                        bracket_form(kind, rho, mask(f.hess(rho, e), coords), gg) +
                        bracket_form(kind, rho, gf, mask(g.hess(rho, e), coords));
        }
        return out;
    }
    auto fg = [&](const Operator& p) {
        return bracket_form(kind, p, gradient(f, p, coords), gradient(g, p, coords));
    };
    return fd_gradient(fg, rho, coords, std::min(f.fd_step, g.fd_step));
}

}  // namespace

double jacobi_residual(const BracketKind& kind, const ScalarField& f, const ScalarField& g,
                       const ScalarField& h, const Operator& point) {
    check_point(kind, point);
    auto coords = chart(kind);
    Operator gf = gradient(f, point, coords), gg = gradient(g, point, coords), gh = gradient(h, point, coords);
    double r = bracket_form(kind, point, bracket_gradient(kind, f, g, point, coords), gh);
    r += bracket_form(kind, point, bracket_gradient(kind, g, h, point, coords), gf);
    r += bracket_form(kind, point, bracket_gradient(kind, h, f, point, coords), gg);
    return r;
}

std::vector<StructureTerm> structure_bracket(const AlphaCoefficients& al, int i, int j, int n, int m) {
    const int N = al.size();
    if (!(0 <= i && i < j && j < N && 0 <= n && n < m && m < N))
        throw std::out_of_range("structure_bracket: need i < j, n < m, all < N");
    std::vector<StructureTerm> out;
    auto add = [&out](double c, int p, int q) {
        for (auto& t : out)
            if (t.index == Coordinate{p, q}) {
                t.coefficient += c;
                return;
            }
        out.push_back({c, {p, q}});
    };
    if (m == i) add(1.0, n, j);
    if (j == n) add(-1.0, i, m);
    if (j == m) {
        if (n < i) add(-al(i, j), n, i);
        if (i < n) add(al(n, j), i, n);
    }
    if (i == n) {
        if (m < j) add(-al(i, m), m, j);
        if (j < m) add(al(i, j), j, m);
    }
    return out;
}

bool pencil_pair_condition(const DeformationSequence& a, const DeformationSequence& b, int i, int j) {
    double prod = (a[i] - b[i]) * (a[j] - b[j]);
    for (int l = i + 1; l < j; ++l) prod *= a[l] * b[l];
    return prod == 0.0;
}

namespace {

struct WindowVerdict {
    bool pass;
    std::vector<Band> bands;
    std::optional<Coordinate> witness;
    std::vector<int> differing;
};

WindowVerdict classify_window(const DeformationSequence& a, const DeformationSequence& b, int last) {
    WindowVerdict v{true, {}, std::nullopt, {}};
    std::vector<int> zeros{-1};
    for (int i = 0; i <= last; ++i) {
        if (a[i] != b[i]) v.differing.push_back(i);
        if (a[i] == 0.0 || b[i] == 0.0) zeros.push_back(i);
    }
    zeros.push_back(last + 1);
    for (std::size_t s = 0; s + 1 < zeros.size(); ++s) {
        Band band{std::max(zeros[s], 0), std::min(zeros[s + 1], last), std::nullopt};
        if (band.lo > band.hi) continue;
        for (int d : v.differing)
            if (d >= zeros[s] && d <= zeros[s + 1]) {
                if (!band.differing) band.differing = d;
            }
        v.bands.push_back(band);
    }
    for (std::size_t s = 0; s + 1 < v.differing.size(); ++s) {
        const int i = v.differing[s], j = v.differing[s + 1];
        bool separated = false;
        for (int z : zeros)
            if (z > i && z < j) separated = true;
        if (!separated) {
            v.pass = false;
            v.witness = Coordinate{i, j};
            break;
        }
    }
    return v;
}

}  // namespace

PencilClassification pencil_classify(const DeformationSequence& a, const DeformationSequence& b) {
    if (a.size() != b.size()) throw std::invalid_argument("pencil_classify: sequence lengths differ");
    const int n = a.size();
    auto w = classify_window(a, b, n - 2);
    PencilClassification c;
    c.pass = w.pass;
    c.bands = std::move(w.bands);
    c.witness = w.witness;
    c.differing = std::move(w.differing);
    c.tail_consistent = classify_window(a, b, n - 1).pass;
    return c;
}

bool banded_coordinate(const PencilClassification& c, int i, int j) {
    for (int k : c.differing)
        if (i <= k && k <= j - 1) return false;
    return true;
}

DeformationSequence blend(const DeformationSequence& a, const DeformationSequence& b, double p) {
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) v[static_cast<std::size_t>(i)] = p * a[i] + (1.0 - p) * b[i];
    return DeformationSequence(std::move(v));
}

double pencil_linearity_residual(const DeformationSequence& a, const DeformationSequence& b, double p,
                                 const ScalarField& f, const ScalarField& g, const Operator& point) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pencil_linearity_residual: need p in [0, 1]");
    auto ka = BracketKind::plus_alpha(build_alpha(a));
    auto kb = BracketKind::plus_alpha(build_alpha(b));
    auto kp = BracketKind::plus_alpha(build_alpha(blend(a, b, p)));
    return std::abs(bracket(kp, f, g, point) - p * bracket(ka, f, g, point) - (1.0 - p) * bracket(kb, f, g, point));
}

Operator r_eta(const DiagonalVector& eta, const Operator& rho_plus) { return rho_plus * eta.asDiagonal(); }

ScalarField compose_r_eta(const ScalarField& f, const DiagonalVector& eta) {
    ScalarField s;
    s.eval = [f, eta](const Operator& p) { return f.eval(r_eta(eta, p)); };
    if (f.grad)
        s.grad = [f, eta](const Operator& p) { return Operator(f.grad(r_eta(eta, p)) * eta.asDiagonal()); };
    s.fd_step = f.fd_step;
    s.allow_fd = f.allow_fd;
    return s;
}

std::vector<DiagonalVector> to_diagonals(const Operator& banded, int k) {
    const auto n = banded.rows();
    std::vector<DiagonalVector> d(static_cast<std::size_t>(k), DiagonalVector::Zero(n));
    for (int i = 0; i < k; ++i)
        for (Eigen::Index m = 0; m + i < n; ++m) d[static_cast<std::size_t>(i)](m) = banded(m + i, m);
    return d;
}

Operator from_diagonals(const std::vector<DiagonalVector>& diagonals) {
    if (diagonals.empty()) throw std::invalid_argument("from_diagonals: need at least one diagonal");
    const auto n = diagonals[0].size();
    Operator out = Operator::Zero(n, n);
    for (std::size_t i = 0; i < diagonals.size(); ++i)
        for (Eigen::Index m = 0; m + static_cast<Eigen::Index>(i) < n; ++m)
            out(m + static_cast<Eigen::Index>(i), m) = diagonals[i](m);
    return out;
}

}  // namespace hstoda
