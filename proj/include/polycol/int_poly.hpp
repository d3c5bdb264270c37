#pragma once

#include "polycol/exact_math.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polycol {

// Multivariate polynomial with integer coefficients in named indeterminates.
// Zero coefficients are never stored, so equality is structural.
class IntPoly {
 public:
  // Sorted by variable name, exponents strictly positive.
  using Monomial = std::vector<std::pair<std::string, unsigned>>;

  // Total degree first, then lexicographic with variables ordered by name.
  struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
  };
  using Terms = std::map<Monomial, Int, MonomialOrder>;

  IntPoly() = default;
  IntPoly(const Int& constant);  // NOLINT(google-explicit-constructor)
  IntPoly(long long constant) : IntPoly(Int(constant)) {}  // NOLINT

  static IntPoly variable(const std::string& name);
  static IntPoly monomial(const Monomial& m, const Int& coefficient);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent).
  Int constant_term() const;
  unsigned total_degree() const;
  const Terms& terms() const { return terms_; }

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly pow(unsigned e) const;

  // Substitute integer values for every variable; missing names throw.
  Int evaluate(const std::map<std::string, Int>& values) const;
  Rat evaluate(const std::map<std::string, Rat>& values) const;

  bool operator==(const IntPoly& other) const { return terms_ == other.terms_; }

  // Highest monomial first, e.g. "3*lambda^2*mu - 2".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Int& c);

  Terms terms_;
};

}  // namespace polycol
