#pragma once

#include "hstoda/core.hpp"

#include <json.hpp>

namespace hstoda {

// Row-major nested arrays.
nlohmann::json to_json(const Operator& m);
nlohmann::json to_json(const DiagonalVector& v);
nlohmann::json to_json(const AlphaCoefficients& al);

Operator operator_from_json(const nlohmann::json& j);
DiagonalVector vector_from_json(const nlohmann::json& j);

}  // namespace hstoda
