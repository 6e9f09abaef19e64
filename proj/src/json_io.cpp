#include "hstoda/json_io.hpp"

namespace hstoda {

nlohmann::json to_json(const Operator& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json to_json(const DiagonalVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

nlohmann::json to_json(const AlphaCoefficients& al) {
    return {{"alpha", to_json(al.alpha)},
            {"eta", to_json(al.eta)},
            {"delta", to_json(al.delta)},
            {"alpha_tail", al.alpha_tail}};
}

Operator operator_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Operator m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("matrix rows must have equal length");
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

DiagonalVector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector must be an array");
    DiagonalVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

}  // namespace hstoda
