#pragma once

// Template definitions for algebra.hpp.

#include <algorithm>
#include <functional>

namespace polycol {

namespace detail {

inline Int binomial(const Int& n, const Int& k) {
  Int r = 1;
  for (Int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline std::size_t small(const Int& x, const char* what) {
  if (x < 0 || x > 1000000) throw InvariantViolation(std::string(what) + " out of range: " + x.str());
  return static_cast<std::size_t>(x);
}

template <CoeffRing Ring>
void accumulate(const Ring& ring, std::map<IntVector, typename Ring::Element>& m, const IntVector& key,
                const typename Ring::Element& c) {
  auto [it, inserted] = m.try_emplace(key, c);
  if (!inserted) it->second = ring.add(it->second, c);
  if (ring.equal(it->second, ring.zero())) m.erase(it);
}

template <CoeffRing Ring>
bool same_image(const Ring& ring, const std::map<IntVector, typename Ring::Element>& a,
                const std::map<IntVector, typename Ring::Element>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !ring.equal(ia->second, ib->second)) return false;
  return true;
}

// Calls f on every nondecreasing index tuple of length d over [0, n).
inline void for_each_multiset(std::size_t n, std::size_t d, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (n == 0) return;
  std::vector<std::size_t> t(d, 0);
  while (true) {
    f(t);
    std::size_t i = d;
    while (i > 0 && t[i - 1] == n - 1) --i;
    if (i == 0) return;
    ++t[i - 1];
    for (std::size_t j = i; j < d; ++j) t[j] = t[i - 1];
  }
}

}  // namespace detail

template <CoeffRing Ring>
typename GradedAutomorphism<Ring>::Matrix GradedAutomorphism<Ring>::generator_matrix(const ColumnStructure& cs,
                                                                                    const Ring& ring,
                                                                                    const Generator<Ring>& g) {
  const Polytope& p = cs.polytope();
  const auto& pts = p.lattice_points();
  const std::size_t m = pts.size();
  Matrix out(m, std::vector<Element>(m, ring.zero()));
  using Kind = typename Generator<Ring>::Kind;
  switch (g.kind) {
    case Kind::elementary: {
      if (!ring.contains(g.scalar)) throw InvalidInput("elementary automorphism: scalar outside " + ring.name());
      const IntVector& v = cs[g.column].v;
      for (std::size_t j = 0; j < m; ++j) {
        const Int h = cs.height(g.column, pts[j], 1);
        const std::size_t hs = detail::small(h, "height");
        IntVector x = pts[j];
        for (std::size_t k = 0; k <= hs; ++k) {
          auto i = p.lattice_index(x);
          if (!i) throw InvariantViolation("elementary automorphism: " + to_string(x) + " left the polytope");
          Element c = ring.multiply(ring.from_int(detail::binomial(h, Int(k))),
                                    ring_power(ring, g.scalar, static_cast<unsigned>(k)));
          out[*i][j] = ring.add(out[*i][j], c);
          x = add(x, v);
        }
      }
      break;
    }
    case Kind::torus: {
      const std::size_t n = p.ambient_dim();
      if (g.torus.size() != n + 1) throw InvalidInput("torus automorphism: need n + 1 scalars");
      std::vector<Element> inv;
      for (const auto& xi : g.torus) {
        auto i = ring.inverse(xi);
        if (!i) throw InvalidInput("torus automorphism: " + ring.format(xi) + " is not a unit");
        inv.push_back(*i);
      }
      for (std::size_t j = 0; j < m; ++j) {
        Element c = g.torus[n];
        for (std::size_t a = 0; a < n; ++a) {
          const Int& e = pts[j][a];
          const Element& base = e < 0 ? inv[a] : g.torus[a];
          c = ring.multiply(c, ring_power(ring, base, static_cast<unsigned>(detail::small(abs(e), "exponent"))));
        }
        out[j][j] = c;
      }
      break;
    }
    case Kind::symmetry: {
      if (g.permutation.size() != m) throw InvalidInput("symmetry automorphism: permutation size mismatch");
      for (std::size_t j = 0; j < m; ++j) out[g.permutation[j]][j] = ring.one();
      break;
    }
  }
  return out;
}

template <CoeffRing Ring>
Generator<Ring> GradedAutomorphism<Ring>::generator_inverse(const Ring& ring, const Generator<Ring>& g) {
  Generator<Ring> r = g;
  using Kind = typename Generator<Ring>::Kind;
  switch (g.kind) {
    case Kind::elementary:
      r.scalar = ring.negate(g.scalar);
      break;
    case Kind::torus:
      for (auto& xi : r.torus) {
        auto i = ring.inverse(xi);
        if (!i) throw InvalidInput("torus automorphism: " + ring.format(xi) + " is not a unit");
        xi = *i;
      }
      break;
    case Kind::symmetry:
      r.permutation = inverse(g.permutation);
      break;
  }
  return r;
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::identity(const ColumnStructure& cs, Ring ring) {
  const std::size_t m = cs.polytope().lattice_points().size();
  Matrix id(m, std::vector<Element>(m, ring.zero()));
  for (std::size_t i = 0; i < m; ++i) id[i][i] = ring.one();
  return GradedAutomorphism(&cs, std::move(ring), std::move(id), {}, {});
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::elementary(const ColumnStructure& cs, Ring ring,
                                                              std::size_t column, const Element& scalar) {
  if (column >= cs.size()) throw PreconditionError("elementary automorphism: not a column vector");
  Generator<Ring> g;
  g.kind = Generator<Ring>::Kind::elementary;
  g.column = column;
  g.scalar = scalar;
  Matrix m = generator_matrix(cs, ring, g);
  Generator<Ring> gi = generator_inverse(ring, g);
  return GradedAutomorphism(&cs, std::move(ring), std::move(m), {g}, {gi});
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::torus(const ColumnStructure& cs, Ring ring,
                                                         const std::vector<Element>& xi) {
  Generator<Ring> g;
  g.kind = Generator<Ring>::Kind::torus;
  g.torus = xi;
  Matrix m = generator_matrix(cs, ring, g);
  Generator<Ring> gi = generator_inverse(ring, g);
  return GradedAutomorphism(&cs, std::move(ring), std::move(m), {g}, {gi});
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::symmetry(const ColumnStructure& cs, Ring ring,
                                                            const Permutation& perm) {
  Generator<Ring> g;
  g.kind = Generator<Ring>::Kind::symmetry;
  g.permutation = perm;
  Matrix m = generator_matrix(cs, ring, g);
  Generator<Ring> gi = generator_inverse(ring, g);
  return GradedAutomorphism(&cs, std::move(ring), std::move(m), {g}, {gi});
}

template <CoeffRing Ring>
void GradedAutomorphism<Ring>::require_compatible(const GradedAutomorphism& other) const {
  if (!(cs_->polytope() == other.cs_->polytope())) throw PreconditionError("automorphisms of different polytopes");
  if (!(ring_ == other.ring_)) throw PreconditionError("automorphisms over different coefficient rings");
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::compose(const GradedAutomorphism& other) const {
  require_compatible(other);
  const std::size_t m = size();
  Matrix out(m, std::vector<Element>(m, ring_.zero()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (ring_.equal(matrix_[i][k], ring_.zero())) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!ring_.equal(other.matrix_[k][j], ring_.zero()))
          out[i][j] = ring_.add(out[i][j], ring_.multiply(matrix_[i][k], other.matrix_[k][j]));
    }
  std::vector<Generator<Ring>> word = word_;
  word.insert(word.end(), other.word_.begin(), other.word_.end());
  std::vector<Generator<Ring>> inv = other.inverse_word_;
  inv.insert(inv.end(), inverse_word_.begin(), inverse_word_.end());
  return GradedAutomorphism(cs_, ring_, std::move(out), std::move(word), std::move(inv));
}

template <CoeffRing Ring>
GradedAutomorphism<Ring> GradedAutomorphism<Ring>::invert() const {
  GradedAutomorphism result = identity(*cs_, ring_);
  for (const auto& g : inverse_word_) {
    GradedAutomorphism step(cs_, ring_, generator_matrix(*cs_, ring_, g), {g}, {generator_inverse(ring_, g)});
    result = result.compose(step);
  }
  if (!compose(result).is_identity()) throw InvariantViolation("inverse word does not invert the matrix");
  return result;
}

template <CoeffRing Ring>
bool GradedAutomorphism<Ring>::equals(const GradedAutomorphism& other) const {
  require_compatible(other);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (!ring_.equal(matrix_[i][j], other.matrix_[i][j])) return false;
  return true;
}

template <CoeffRing Ring>
bool GradedAutomorphism<Ring>::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (!ring_.equal(matrix_[i][j], i == j ? ring_.one() : ring_.zero())) return false;
  return true;
}

template <CoeffRing Ring>
std::map<IntVector, typename Ring::Element> GradedAutomorphism<Ring>::apply_product(
    const std::vector<std::size_t>& factors) const {
  const auto& pts = cs_->polytope().lattice_points();
  std::map<IntVector, Element> acc{{IntVector(cs_->polytope().ambient_dim(), 0), ring_.one()}};
  for (auto j : factors) {
    std::map<IntVector, Element> next;
    for (const auto& [z, c] : acc)
      for (std::size_t i = 0; i < size(); ++i)
        if (!ring_.equal(matrix_[i][j], ring_.zero()))
          detail::accumulate(ring_, next, add(z, pts[i]), ring_.multiply(c, matrix_[i][j]));
    acc = std::move(next);
  }
  return acc;
}

template <CoeffRing Ring>
bool GradedAutomorphism<Ring>::degree_consistent(std::size_t max_degree) const {
  const auto& pts = cs_->polytope().lattice_points();
  for (std::size_t d = 2; d <= max_degree; ++d) {
    std::map<IntVector, std::map<IntVector, Element>> first;
    bool ok = true;
    detail::for_each_multiset(pts.size(), d, [&](const std::vector<std::size_t>& t) {
      if (!ok) return;
      IntVector z(cs_->polytope().ambient_dim(), 0);
      for (auto j : t) z = add(z, pts[j]);
      auto image = apply_product(t);
      auto [it, inserted] = first.try_emplace(z, image);
      if (!inserted && !detail::same_image(ring_, it->second, image)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

template <CoeffRing Ring>
typename Ring::Element matrix_determinant(const Ring& ring, const typename GradedAutomorphism<Ring>::Matrix& m) {
  const std::size_t n = m.size();
  if (n > 20) throw InvalidInput("determinant: matrix too large for subset expansion");
  // dp[mask]: signed sum over assignments of the first popcount(mask) rows to the columns in mask
  std::vector<typename Ring::Element> dp(std::size_t{1} << n, ring.zero());
  dp[0] = ring.one();
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask >> c & 1U)) continue;
      if (ring.equal(m[row][c], ring.zero())) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << c);
      const int later = __builtin_popcountll(rest >> c);  // columns of rest to the right of c
      auto term = ring.multiply(dp[rest], m[row][c]);
      dp[mask] = ring.add(dp[mask], later % 2 ? ring.negate(term) : term);
    }
  }
  return dp.back();
}

template <CoeffRing Ring>
std::map<IntVector, typename Ring::Element> elementary_closed_form(const ColumnStructure& cs, const Ring& ring,
                                                                   std::size_t column,
                                                                   const typename Ring::Element& scalar,
                                                                   const IntVector& z, std::size_t degree) {
  const Int h = cs.height(column, z, Int(degree));
  std::map<IntVector, typename Ring::Element> out;
  IntVector x = z;
  for (std::size_t k = 0; k <= detail::small(h, "height"); ++k) {
    detail::accumulate(ring, out, x,
                       ring.multiply(ring.from_int(detail::binomial(h, Int(k))),
                                     ring_power(ring, scalar, static_cast<unsigned>(k))));
    x = add(x, cs[column].v);
  }
  return out;
}

template <CoeffRing Ring>
bool binomial_formula_agrees(const ColumnStructure& cs, const Ring& ring, std::size_t column,
                             const typename Ring::Element& scalar, std::size_t max_degree) {
  auto e = GradedAutomorphism<Ring>::elementary(cs, ring, column, scalar);
  const auto& pts = cs.polytope().lattice_points();
  bool ok = true;
  for (std::size_t d = 1; d <= max_degree && ok; ++d) {
    detail::for_each_multiset(pts.size(), d, [&](const std::vector<std::size_t>& t) {
      if (!ok) return;
      IntVector z(cs.polytope().ambient_dim(), 0);
      for (auto j : t) z = add(z, pts[j]);
      ok = detail::same_image(ring, e.apply_product(t), elementary_closed_form(cs, ring, column, scalar, z, d));
    });
  }
  return ok;
}

}  // namespace polycol
