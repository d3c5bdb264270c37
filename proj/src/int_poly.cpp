#include "polycol/int_poly.hpp"

#include "polycol/error.hpp"

#include <sstream>

namespace polycol {

namespace {

unsigned degree_of(const IntPoly::Monomial& m) {
  unsigned d = 0;
  for (const auto& [name, e] : m) d += e;
  return d;
}

IntPoly::Monomial multiply(const IntPoly::Monomial& a, const IntPoly::Monomial& b) {
  IntPoly::Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

bool IntPoly::MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  // Lex: the first variable (by name) where exponents differ decides; a
  // variable absent from one side has exponent 0 there.
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) return false;  // a has more
    if (i == a.size() || b[j].first < a[i].first) return true;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  return false;
}

IntPoly::IntPoly(const Int& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

IntPoly IntPoly::variable(const std::string& name) {
  if (name.empty()) throw InvalidInput("IntPoly: empty variable name");
  return monomial(Monomial{{name, 1U}}, Int(1));
}

IntPoly IntPoly::monomial(const Monomial& m, const Int& coefficient) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].second == 0) throw InvalidInput("IntPoly: zero exponent in monomial");
    if (i && !(m[i - 1].first < m[i].first)) throw InvalidInput("IntPoly: monomial not sorted");
  }
  IntPoly p;
  p.add_term(m, coefficient);
  return p;
}

bool IntPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int IntPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Int(0) : it->second;
}

unsigned IntPoly::total_degree() const {
  return terms_.empty() ? 0U : degree_of(terms_.rbegin()->first);
}

void IntPoly::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result(1);
  IntPoly base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

Int IntPoly::evaluate(const std::map<std::string, Int>& values) const {
  Int total = 0;
  for (const auto& [m, c] : terms_) {
    Int t = c;
    for (const auto& [name, e] : m) {
      auto it = values.find(name);
      if (it == values.end()) throw InvalidInput("IntPoly::evaluate: no value for " + name);
      t *= boost::multiprecision::pow(it->second, e);
    }
    total += t;
  }
  return total;
}

Rat IntPoly::evaluate(const std::map<std::string, Rat>& values) const {
  Rat total = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = Rat(c);
    for (const auto& [name, e] : m) {
      auto it = values.find(name);
      if (it == values.end()) throw InvalidInput("IntPoly::evaluate: no value for " + name);
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

std::string IntPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.empty()) {
      os << mag;
      wrote = true;
    }
    for (const auto& [name, e] : m) {
      if (wrote) os << '*';
      os << name;
      if (e != 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace polycol
