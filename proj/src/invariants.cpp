#include "hstoda/invariants.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace hstoda {

namespace {

const std::map<std::string, InvariantTag>& tag_names() {
    static const std::map<std::string, InvariantTag> names{
        {"I_l", InvariantTag::I_l},           {"I_l_alpha", InvariantTag::I_l_alpha},
        {"I_l_minus0", InvariantTag::I_l_minus0}, {"Ik_alpha", InvariantTag::Ik_alpha},
        {"C2_sixdim", InvariantTag::C2_sixdim}, {"C3_sixdim", InvariantTag::C3_sixdim},
        {"magri", InvariantTag::magri},       {"h_m", InvariantTag::h_m},
        {"hkn_closed", InvariantTag::hkn_closed}};
    return names;
}

Operator matrix_power(const Operator& m, int p) {
    Operator out = Operator::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) out = out * m;
    return out;
}

void require_size(const Operator& rho, int n, const char* what) {
    if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument(std::string(what) + ": point size mismatch");
}

struct BlockView {
    double a;
    Eigen::VectorXd x, y;
    Eigen::MatrixXd K;  // delta - delta^T
};

BlockView block_view(const Operator& rho) {
    const auto n = rho.rows();
    if (n < 3) throw std::invalid_argument("block functions need N >= 3");
    const auto m = n - 2;
    BlockView v;
    v.a = rho(0, 1);
    v.x = rho.block(0, 2, 1, m).transpose();
    v.y = rho.block(1, 2, 1, m).transpose();
    Eigen::MatrixXd d = strictly_upper(rho.block(2, 2, m, m));
    v.K = d - d.transpose();
    return v;
}

// Packs block gradients (ha, hx, hy, hK) into the rho_+ chart.  hK is the
// derivative with respect to K, mapped to delta through K = delta - delta^T.
Operator pack_block_gradient(Eigen::Index n, double ha, const Eigen::VectorXd& hx, const Eigen::VectorXd& hy,
                             const Eigen::MatrixXd& hK) {
    const auto m = n - 2;
    Operator g = Operator::Zero(n, n);
    g(0, 1) = ha;
    g.block(0, 2, 1, m) = hx.transpose();
    g.block(1, 2, 1, m) = hy.transpose();
    g.block(2, 2, m, m) = strictly_upper(Operator(hK - hK.transpose()));
    return g;
}

}  // namespace

InvariantId InvariantId::parse(const std::string& s) {
    InvariantId id;
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    auto it = tag_names().find(head);
    if (it == tag_names().end()) throw std::invalid_argument("unknown invariant id '" + s + "'");
    id.tag = it->second;
    bool has_l = false, has_k = false, has_n = false, has_m = false;
    if (colon != std::string::npos) {
        std::stringstream ss(s.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("malformed invariant parameter '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            int value = 0;
            try {
                std::size_t used = 0;
                value = std::stoi(kv.substr(eq + 1), &used);
                if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw std::invalid_argument("malformed invariant parameter '" + kv + "'");
            }
            if (key == "l") id.l = value, has_l = true;
            else if (key == "k") id.k = value, has_k = true;
            else if (key == "n") id.n = value, has_n = true;
            else if (key == "m") id.m = value, has_m = true;
            else throw std::invalid_argument("unknown invariant parameter '" + key + "'");
        }
    }
    switch (id.tag) {
        case InvariantTag::I_l:
        case InvariantTag::I_l_alpha:
        case InvariantTag::I_l_minus0:
            if (!has_l || id.l < 1) throw std::invalid_argument("invariant " + head + " needs l >= 1");
            break;
        case InvariantTag::Ik_alpha:
            if (!has_k || id.k < 1) throw std::invalid_argument("Ik_alpha needs k >= 1");
            break;
        case InvariantTag::magri:
        case InvariantTag::hkn_closed:
            if (!has_k || !has_n || id.k < 1 || id.n < 0 || id.n > 2 * id.k)
                throw std::invalid_argument("invariant " + head + " needs k >= 1 and 0 <= n <= 2k");
            if (id.tag == InvariantTag::hkn_closed && id.k > 2)
                throw std::invalid_argument("hkn_closed is tabulated for k <= 2");
            break;
        case InvariantTag::h_m:
            if (!has_m || id.m < 1 || id.m > 5) throw std::invalid_argument("h_m needs 1 <= m <= 5");
            break;
        default:
            break;
    }
    return id;
}

std::string InvariantId::name() const {
    for (const auto& [key, tag_value] : tag_names())
        if (tag_value == tag) {
            switch (tag) {
                case InvariantTag::I_l:
                case InvariantTag::I_l_alpha:
                case InvariantTag::I_l_minus0:
                    return key + ":l=" + std::to_string(l);
                case InvariantTag::Ik_alpha:
                    return key + ":k=" + std::to_string(k);
                case InvariantTag::magri:
                case InvariantTag::hkn_closed:
                    return key + ":k=" + std::to_string(k) + ",n=" + std::to_string(n);
                case InvariantTag::h_m:
                    return key + ":m=" + std::to_string(m);
                default:
                    return key;
            }
        }
    return "?";
}

BracketTag InvariantId::natural_chart() const {
    switch (tag) {
        case InvariantTag::I_l:
            return BracketTag::canonical;
        case InvariantTag::I_l_alpha:
        case InvariantTag::I_l_minus0:
            return BracketTag::minus0;
        default:
            return BracketTag::plus_alpha;
    }
}

InvariantContext::InvariantContext(const DeformationSequence& seq_a) : a(seq_a), alpha(build_alpha(seq_a)) {}

InvariantContext::InvariantContext(const DeformationSequence& seq_a, const DeformationSequence& seq_b)
    : a(seq_a), b(seq_b), alpha(build_alpha(seq_a)), beta(build_alpha(seq_b)) {
    if (seq_a.size() != seq_b.size()) throw std::invalid_argument("context sequences differ in length");
}

double ik_general(const DiagonalVector& eta, const DiagonalVector& delta, double tail, const Operator& rho, int k) {
    auto E = eta.asDiagonal();
    auto D = delta.asDiagonal();
    Operator rt = rho.transpose();
    Operator M = tail * rho * rho - rho * E * rt * D - E * rt * D * rho + E * rt * rt * D;
    return matrix_power(M, k).trace();
}

Operator ik_general_gradient(const DiagonalVector& eta, const DiagonalVector& delta, double tail,
                             const Operator& rho, int k) {
    auto E = eta.asDiagonal();
    auto D = delta.asDiagonal();
    Operator rt = rho.transpose();
    Operator M = tail * rho * rho - rho * E * rt * D - E * rt * D * rho + E * rt * rt * D;
    Operator P = static_cast<double>(k) * matrix_power(M, k - 1);
    // d Tr M^k = Tr(P dM), term by term in drho and drho^T
    Operator g = tail * Operator(rho * P).transpose() + tail * Operator(P * rho).transpose();
    g -= Operator(E * rt * D * P).transpose();
    g -= D * P * rho * E;
    g -= D * rho * P * E;
    g -= Operator(P * E * rt * D).transpose();
    g += rt * D * P * E;
    g += D * P * E * rt;
    return strictly_upper(g);
}

double ik_alpha(const AlphaCoefficients& al, const Operator& rho, int k) {
    return ik_general(al.eta, al.delta, al.alpha_tail, rho, k);
}

double ik_reduced_nonsingular(const AlphaCoefficients& al, const Operator& rho, int k) {
    DiagonalVector inv = al.eta.cwiseInverse();
    Operator X = rho - al.eta.asDiagonal() * rho.transpose() * inv.asDiagonal();
    return std::pow(al.alpha_tail, k) * matrix_power(X, 2 * k).trace();
}

double ik_reduced_singular(const AlphaCoefficients& al, const Operator& rho, int k) {
    Operator Y = rho * al.eta.asDiagonal() * rho.transpose() * al.delta.asDiagonal();
    return 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * matrix_power(Y, k).trace();
}

double pencil_casimir(int k, const AlphaCoefficients& al, const AlphaCoefficients& be, double eps, const Operator& rho) {
    return ik_general(al.eta + eps * be.eta, al.delta + eps * be.delta,
                      (1.0 + eps) * (al.alpha_tail + eps * be.alpha_tail), rho, k);
}

namespace {

Eigen::MatrixXd magri_inverse_vandermonde(int k) {
    const int m = 2 * k + 1;
    Eigen::MatrixXd V(m, m);
    for (int r = 0; r < m; ++r) {
        const double e = r - k;
        double p = 1.0;
        for (int c = 0; c < m; ++c, p *= e) V(r, c) = p;
    }
    return V.inverse();
}

void require_pencil(const DeformationSequence& a, const DeformationSequence& b) {
    auto c = pencil_classify(a, b);
    if (!c.pass || !c.tail_consistent)
        throw std::invalid_argument("magri expansion needs a Poisson pencil pair with consistent tail");
}

}  // namespace

std::vector<double> magri_coefficients(int k, const DeformationSequence& a, const DeformationSequence& b,
                                       const Operator& rho) {
    if (k < 1) throw std::invalid_argument("magri_coefficients: need k >= 1");
    require_pencil(a, b);
    auto al = build_alpha(a), be = build_alpha(b);
    require_size(rho, al.size(), "magri_coefficients");
    const int m = 2 * k + 1;
    Eigen::VectorXd vals(m);
    for (int r = 0; r < m; ++r) vals(r) = pencil_casimir(k, al, be, r - k, rho);
    Eigen::VectorXd c = magri_inverse_vandermonde(k) * vals;
    return {c.data(), c.data() + m};
}

std::vector<Operator> magri_gradients(int k, const DeformationSequence& a, const DeformationSequence& b,
                                      const Operator& rho) {
    if (k < 1) throw std::invalid_argument("magri_gradients: need k >= 1");
    require_pencil(a, b);
    auto al = build_alpha(a), be = build_alpha(b);
    require_size(rho, al.size(), "magri_gradients");
    const int m = 2 * k + 1;
    std::vector<Operator> node_grads;
    for (int r = 0; r < m; ++r) {
        const double e = r - k;
        node_grads.push_back(ik_general_gradient(al.eta + e * be.eta, al.delta + e * be.delta,
                                                 (1.0 + e) * (al.alpha_tail + e * be.alpha_tail), rho, k));
    }
    Eigen::MatrixXd W = magri_inverse_vandermonde(k);
    std::vector<Operator> out;
    for (int c = 0; c < m; ++c) {
        Operator g = Operator::Zero(rho.rows(), rho.cols());
        for (int r = 0; r < m; ++r) g += W(c, r) * node_grads[static_cast<std::size_t>(r)];
        out.push_back(g);
    }
    return out;
}

double h_block(int m, const Operator& rho) {
    auto v = block_view(rho);
    const double a = v.a;
    const double z2 = v.x.squaredNorm() + v.y.squaredNorm();
    switch (m) {
        case 1:
            return -2.0 * a * a + (v.K * v.K).trace();
        case 2:
            return z2;
        case 3: {
            Eigen::MatrixXd K2 = v.K * v.K;
            return (K2 * K2).trace() + 2.0 * std::pow(a, 4);
        }
        case 4: {
            const double re = v.x.squaredNorm() - v.y.squaredNorm();
            const double im = 2.0 * v.x.dot(v.y);
            return re * re + im * im + z2 * z2;
        }
        case 5: {
            // Re(4a^2 zb.z - 4ia zb.K z - 4 zb.K^2 z) with z = x + iy
            Eigen::MatrixXd K2 = v.K * v.K;
            return 4.0 * a * a * z2 + 8.0 * a * v.x.dot(v.K * v.y) -
                   4.0 * (v.x.dot(K2 * v.x) + v.y.dot(K2 * v.y));
        }
        default:
            throw std::invalid_argument("h_block: need 1 <= m <= 5");
    }
}

Operator h_block_gradient(int m, const Operator& rho) {
    auto v = block_view(rho);
    const auto n = rho.rows();
    const auto dim = n - 2;
    const double a = v.a;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);
    Eigen::MatrixXd zeroK = Eigen::MatrixXd::Zero(dim, dim);
    // gradients with respect to the entries of K, treated as independent
    switch (m) {
        case 1:
            // Tr K^2: dK -> 2 Tr(K dK), so d/dK = 2 K^T
            return pack_block_gradient(n, -4.0 * a, zero, zero, 2.0 * v.K.transpose());
        case 2:
            return pack_block_gradient(n, 0.0, 2.0 * v.x, 2.0 * v.y, zeroK);
        case 3: {
            Eigen::MatrixXd K3 = v.K * v.K * v.K;
            return pack_block_gradient(n, 8.0 * a * a * a, zero, zero, 4.0 * K3.transpose());
        }
        case 4: {
            const double re = v.x.squaredNorm() - v.y.squaredNorm();
            const double xy = v.x.dot(v.y);
            const double z2 = v.x.squaredNorm() + v.y.squaredNorm();
            Eigen::VectorXd gx = 4.0 * re * v.x + 8.0 * xy * v.y + 4.0 * z2 * v.x;
            Eigen::VectorXd gy = -4.0 * re * v.y + 8.0 * xy * v.x + 4.0 * z2 * v.y;
            return pack_block_gradient(n, 0.0, gx, gy, zeroK);
        }
        case 5: {
            const double z2 = v.x.squaredNorm() + v.y.squaredNorm();
            Eigen::MatrixXd K2 = v.K * v.K;
            const double ha = 8.0 * a * z2 + 8.0 * v.x.dot(v.K * v.y);
            Eigen::VectorXd gx = 8.0 * a * a * v.x + 8.0 * a * v.K * v.y - 8.0 * K2 * v.x;
            Eigen::VectorXd gy = 8.0 * a * a * v.y - 8.0 * a * v.K * v.x - 8.0 * K2 * v.y;
            // d(x.K y) = x^T dK y;  d(x.K^2 x) = x^T (dK K + K dK) x
            Eigen::MatrixXd gK = 8.0 * a * v.x * v.y.transpose();
            gK -= 4.0 * (v.x * (v.K * v.x).transpose() + (v.K.transpose() * v.x) * v.x.transpose());
            gK -= 4.0 * (v.y * (v.K * v.y).transpose() + (v.K.transpose() * v.y) * v.y.transpose());
            return pack_block_gradient(n, ha, gx, gy, gK);
        }
        default:
            throw std::invalid_argument("h_block_gradient: need 1 <= m <= 5");
    }
}

namespace {

// rows: coefficient of (h1, h2) for k = 1, of (h3, h4, h5) for k = 2
std::vector<double> hkn_weights(int k, int n, double b) {
    if (k == 1) {
        switch (n) {
            case 0: return {1.0, -2.0};
            case 1: return {1.0 + b, -4.0};
            case 2: return {b, -2.0};
        }
    } else if (k == 2) {
        switch (n) {
            case 0: return {1.0, 1.0, 1.0};
            case 1: return {2.0 * (1.0 + b), 4.0, 3.0 + b};
            case 2: return {1.0 + 4.0 * b + b * b, 6.0, 3.0 * (1.0 + b)};
            case 3: return {2.0 * b * (1.0 + b), 4.0, 1.0 + 3.0 * b};
            case 4: return {b * b, 1.0, b};
        }
    }
    throw std::invalid_argument("hkn_closed: tabulated for k <= 2, 0 <= n <= 2k");
}

}  // namespace

double hkn_closed(int k, int n, double b, const Operator& rho) {
    auto w = hkn_weights(k, n, b);
    const int first = k == 1 ? 1 : 3;
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * h_block(first + static_cast<int>(i), rho);
    return s;
}

Operator hkn_closed_gradient(int k, int n, double b, const Operator& rho) {
    auto w = hkn_weights(k, n, b);
    const int first = k == 1 ? 1 : 3;
    Operator g = Operator::Zero(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < w.size(); ++i) g += w[i] * h_block_gradient(first + static_cast<int>(i), rho);
    return g;
}

Operator iota_alpha(const AlphaCoefficients& al, const Operator& lower_point) {
    Operator lo = strictly_lower(lower_point);
    return lo + diagonal_part(lower_point) + alpha_of_upper(al, lo.transpose());
}

namespace {

double value_and_gradient(const InvariantId& id, const InvariantContext& ctx, const Operator& rho, Operator* grad) {
    const int N = ctx.alpha.size();
    require_size(rho, N, "invariant");
    switch (id.tag) {
        case InvariantTag::I_l: {
            if (grad) *grad = matrix_power(rho, id.l - 1).transpose();
            return matrix_power(rho, id.l).trace() / id.l;
        }
        case InvariantTag::I_l_alpha: {
            Operator L = iota_alpha(ctx.alpha, rho);
            Operator P = matrix_power(L, id.l - 1);
            if (grad) {
                Operator g = Operator::Zero(N, N);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j <= i; ++j)
                        g(i, j) = i == j ? P(i, i) : P(j, i) + ctx.alpha(j, i) * P(i, j);
                *grad = g;
            }
            return (P * L).trace() / id.l;
        }
        case InvariantTag::I_l_minus0: {
            Eigen::VectorXd d = rho.diagonal();
            if (grad) {
                Eigen::VectorXd gd = d.array().pow(id.l - 1).matrix();
                *grad = gd.asDiagonal();
            }
            return d.array().pow(id.l).sum() / id.l;
        }
        case InvariantTag::Ik_alpha:
            if (grad) *grad = ik_general_gradient(ctx.alpha.eta, ctx.alpha.delta, ctx.alpha.alpha_tail, rho, id.k);
            return ik_alpha(ctx.alpha, rho, id.k);
        case InvariantTag::C2_sixdim:
            if (grad) *grad = c2_sixdim_gradient(ctx.a, rho);
            return c2_sixdim(ctx.a, rho);
        case InvariantTag::C3_sixdim:
            if (grad) *grad = c3_sixdim_gradient(ctx.a, rho);
            return c3_sixdim(ctx.a, rho);
        case InvariantTag::magri: {
            if (!ctx.b) throw std::invalid_argument("magri invariant needs the pencil sequence b");
            if (grad) *grad = magri_gradients(id.k, ctx.a, *ctx.b, rho)[static_cast<std::size_t>(id.n)];
            return magri_coefficients(id.k, ctx.a, *ctx.b, rho)[static_cast<std::size_t>(id.n)];
        }
        case InvariantTag::h_m:
            if (grad) *grad = h_block_gradient(id.m, rho);
            return h_block(id.m, rho);
        case InvariantTag::hkn_closed: {
            if (!ctx.b) throw std::invalid_argument("hkn_closed needs the pencil sequence b");
            const double b = (*ctx.b)[1];
            if (grad) *grad = hkn_closed_gradient(id.k, id.n, b, rho);
            return hkn_closed(id.k, id.n, b, rho);
        }
    }
    return 0.0;
}

}  // namespace

double eval_invariant(const InvariantId& id, const InvariantContext& ctx, const Operator& point) {
    return value_and_gradient(id, ctx, point, nullptr);
}

ScalarField invariant_field(const InvariantId& id, const InvariantContext& ctx) {
    ScalarField f;
    f.eval = [id, ctx](const Operator& p) { return value_and_gradient(id, ctx, p, nullptr); };
    f.grad = [id, ctx](const Operator& p) {
        Operator g;
        value_and_gradient(id, ctx, p, &g);
        return g;
    };
    return f;
}

double involution_residual(const InvariantId& id1, const InvariantId& id2, const BracketKind& kind,
                           const InvariantContext& ctx, const Operator& point) {
    return std::abs(bracket(kind, invariant_field(id1, ctx), invariant_field(id2, ctx), point));
}

Operator coadjoint_action(CoadjointKind which, const AlphaCoefficients& al, const Operator& g, const Operator& point) {
    Eigen::FullPivLU<Operator> lu(g);
    if (!lu.isInvertible()) throw std::invalid_argument("coadjoint_action: g is singular");
    Operator ginv = lu.inverse();
    switch (which) {
        case CoadjointKind::alpha: {
            Operator M = g * iota_alpha(al, point) * ginv;
            // pi_alpha(M) in the (rho_-, rho_0) chart
            return Operator(M.triangularView<Eigen::Lower>());
        }
        case CoadjointKind::minus0: {
            Operator M = g * Operator(point.triangularView<Eigen::Lower>()) * ginv;
            return Operator(M.triangularView<Eigen::Lower>());
        }
        case CoadjointKind::plus_alpha: {
            Operator M = g * strictly_upper(point) * ginv;
            return project_plus_alpha(al, M);
        }
    }
    return point;
}

Operator ad_star(CoadjointKind which, const AlphaCoefficients& al, const Operator& x, const Operator& point) {
    switch (which) {
        case CoadjointKind::alpha: {
            Operator L = iota_alpha(al, point);
            Operator c = x * L - L * x;
            return -Operator(c.triangularView<Eigen::Lower>());
        }
        case CoadjointKind::minus0: {
            Operator L = point.triangularView<Eigen::Lower>();
            Operator c = x * L - L * x;
            return -Operator(c.triangularView<Eigen::Lower>());
        }
        case CoadjointKind::plus_alpha: {
            Operator r = strictly_upper(point);
            return -project_plus_alpha(al, Operator(x * r - r * x));
        }
    }
    return point;
}

BlockInvariants reduced_block_invariants(const Vector2c& xi, double lambda, double a) {
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    Vector2c exi(xi(1), -xi(0));
    const double u = xi.squaredNorm();
    const C w = xi.dot(exi);  // conjugates the first argument
    const double c = (lambda * u - I * a * w).real();
    const double eta2 = std::norm(xi.cwiseProduct(xi).sum());
    const double d = 0.5 * a * a * eta2 - 0.5 * (a * a - lambda * lambda) * u * u - lambda * c * u;
    return {c, d};
}

double identity_14d_residual(const Vector2c& xi) {
    Vector2c exi(xi(1), -xi(0));
    const double u = xi.squaredNorm();
    const std::complex<double> w = xi.dot(exi);
    const double lhs = std::norm(xi.cwiseProduct(xi).sum());
    return lhs - (u * u + (w * w).real());
}

}  // namespace hstoda
