#pragma once

#include "polycol/error.hpp"
#include "polycol/exact_math.hpp"
#include "polycol/int_poly.hpp"

#include <concepts>
#include <optional>
#include <string>

namespace polycol {

// Commutative coefficient ring. Rings are small value objects so that
// parametrized rings (Z/m) can be compared for compatibility.
template <class R>
concept CoeffRing = requires(const R& ring, const typename R::Element& a,
                             const typename R::Element& b, const Int& n) {
  { ring.zero() } -> std::same_as<typename R::Element>;
  { ring.one() } -> std::same_as<typename R::Element>;
  { ring.from_int(n) } -> std::same_as<typename R::Element>;
  { ring.add(a, b) } -> std::same_as<typename R::Element>;
  { ring.negate(a) } -> std::same_as<typename R::Element>;
  { ring.multiply(a, b) } -> std::same_as<typename R::Element>;
  { ring.equal(a, b) } -> std::same_as<bool>;
  { ring.inverse(a) } -> std::same_as<std::optional<typename R::Element>>;
  { ring.contains(a) } -> std::same_as<bool>;
  { ring.format(a) } -> std::same_as<std::string>;
  { ring.name() } -> std::same_as<std::string>;
  { ring == ring } -> std::same_as<bool>;
};

struct IntegerRing {
  using Element = Int;
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(const Int& n) const { return n; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element negate(const Element& a) const { return -a; }
  Element multiply(const Element& a, const Element& b) const { return a * b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::optional<Element> inverse(const Element& a) const {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
  bool contains(const Element&) const { return true; }
  std::string format(const Element& a) const { return a.str(); }
  std::string name() const { return "ZZ"; }
  bool operator==(const IntegerRing&) const = default;
};

struct RationalRing {
  using Element = Rat;
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(const Int& n) const { return Rat(n); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element negate(const Element& a) const { return -a; }
  Element multiply(const Element& a, const Element& b) const { return a * b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::optional<Element> inverse(const Element& a) const {
    if (a == 0) return std::nullopt;
    return Rat(1) / a;
  }
  bool contains(const Element&) const { return true; }
  std::string format(const Element& a) const { return a.str(); }
  std::string name() const { return "QQ"; }
  bool operator==(const RationalRing&) const = default;
};

// Z[variables]. Identities verified here hold over every commutative ring.
struct PolynomialRing {
  using Element = IntPoly;
  Element zero() const { return IntPoly(); }
  Element one() const { return IntPoly(1); }
  Element from_int(const Int& n) const { return IntPoly(n); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element negate(const Element& a) const { return -a; }
  Element multiply(const Element& a, const Element& b) const { return a * b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::optional<Element> inverse(const Element& a) const {
    if (a.is_constant()) {
      Int c = a.constant_term();
      if (c == 1 || c == -1) return a;
    }
    return std::nullopt;
  }
  bool contains(const Element&) const { return true; }
  std::string format(const Element& a) const { return a.str(); }
  std::string name() const { return "ZZ[...]"; }
  bool operator==(const PolynomialRing&) const = default;
};

// Z/m with representatives in [0, m).
struct ModularRing {
  using Element = Int;

  explicit ModularRing(Int m) : modulus(std::move(m)) {
    if (modulus < 2) throw InvalidInput("ModularRing: modulus must be >= 2");
  }

  Element reduce(const Int& a) const {
    Int r = a % modulus;
    if (r < 0) r += modulus;
    return r;
  }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(const Int& n) const { return reduce(n); }
  Element add(const Element& a, const Element& b) const { return reduce(a + b); }
  Element negate(const Element& a) const { return reduce(-a); }
  Element multiply(const Element& a, const Element& b) const { return reduce(a * b); }
  bool equal(const Element& a, const Element& b) const { return reduce(a) == reduce(b); }
  std::optional<Element> inverse(const Element& a) const {
    auto [g, s, t] = extended_gcd(reduce(a), modulus);
    if (g != 1) return std::nullopt;
    return reduce(s);
  }
  bool contains(const Element& a) const { return a >= 0 && a < modulus; }
  std::string format(const Element& a) const { return a.str(); }
  std::string name() const { return "ZZ/" + modulus.str(); }
  bool operator==(const ModularRing&) const = default;

  Int modulus;
};

static_assert(CoeffRing<IntegerRing>);
static_assert(CoeffRing<RationalRing>);
static_assert(CoeffRing<PolynomialRing>);
static_assert(CoeffRing<ModularRing>);

template <CoeffRing Ring>
typename Ring::Element ring_power(const Ring& ring, const typename Ring::Element& a, unsigned e) {
  typename Ring::Element r = ring.one();
  for (unsigned k = 0; k < e; ++k) r = ring.multiply(r, a);
  return r;
}

}  // namespace polycol
