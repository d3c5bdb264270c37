#pragma once

#include "polycol/exact_math.hpp"

#include <nlohmann/json.hpp>

namespace polycol {

// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
nlohmann::json int_to_json(const Int& x);
Int int_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const IntVector& v);
IntVector vector_from_json(const nlohmann::json& j);

}  // namespace polycol
