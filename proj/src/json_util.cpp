#include "polycol/json_util.hpp"

#include "polycol/error.hpp"

#include <limits>

namespace polycol {

nlohmann::json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw InvalidInput("expected an integer, got \"" + s + "\"");
    return Int(s);
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

nlohmann::json vector_to_json(const IntVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

IntVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("expected an integer array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

}  // namespace polycol
