#pragma once

#include "polycol/coeff_ring.hpp"
#include "polycol/columns.hpp"
#include "polycol/error.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polycol {

// ---- the graded semigroup S_P

// Degree layers of S_P: layer d holds the points z with (z, d) in S_P.
class SemigroupLayers {
 public:
  explicit SemigroupLayers(Polytope p) : polytope_(std::move(p)) { layers_.push_back({IntVector(polytope_.ambient_dim(), 0)}); }

  const Polytope& polytope() const { return polytope_; }
  const std::set<IntVector>& layer(std::size_t d);
  bool contains(const IntVector& z, std::size_t d) { return layer(d).count(z) > 0; }

 private:
  Polytope polytope_;
  std::vector<std::set<IntVector>> layers_;
};

// (z, d) in S_P, i.e. z is a sum of d lattice points of P.
bool sp_membership(const Polytope& p, const IntVector& z, const Int& d);

struct ColumnsPropertyResult {
  bool holds = true;
  std::optional<std::pair<IntVector, std::size_t>> counterexample;  // (z, d) with z + v outside S_P
  std::size_t checked = 0;
};

// z + v in S_P for every (z, d) in S_P with 1 <= d <= max_degree off the face
// cone of the facet (height nonzero). v need not be a column vector.
ColumnsPropertyResult columns_property_check(const Polytope& p, const IntVector& v, std::size_t facet,
                                             std::size_t max_degree = 3);

// ---- permutation groups on L_P

using Permutation = std::vector<std::size_t>;  // lattice index -> lattice index

Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);
Permutation identity_permutation(std::size_t n);
// Closure of the generators under composition, sorted.
std::vector<Permutation> generated_group(const std::vector<Permutation>& generators, std::size_t n);

// Sigma(P): integral-affine self-maps of P acting on L_P, sorted. Closure is verified.
std::vector<Permutation> sigma_permutations(const Polytope& p);
// x -> x + (ht_v(x,1) - ht_{-v}(x,1)) v on L_P. Requires -v in Col(P); the
// result is asserted to lie in Sigma(P).
Permutation column_inversion_permutation(const ColumnStructure& cs, std::size_t v);

struct InversionSubgroup {
  std::vector<Permutation> sigma;
  std::vector<Permutation> generators;  // the column inversions
  std::vector<Permutation> subgroup;
  bool normal = false;
  std::size_t quotient_order() const { return subgroup.empty() ? 0 : sigma.size() / subgroup.size(); }
};

InversionSubgroup inversion_subgroup(const ColumnStructure& cs);

// ---- graded automorphisms over a coefficient ring

template <CoeffRing Ring>
struct Generator {
  enum class Kind { elementary, torus, symmetry };
  Kind kind = Kind::elementary;
  std::size_t column = 0;                        // elementary: index into Col(P)
  typename Ring::Element scalar{};               // elementary
  std::vector<typename Ring::Element> torus;     // torus: n + 1 units
  Permutation permutation;                       // symmetry
};

template <CoeffRing Ring>
class GradedAutomorphism {
 public:
  using Element = typename Ring::Element;
  using Matrix = std::vector<std::vector<Element>>;  // [row][col]; column j = image of lattice point j

  static GradedAutomorphism identity(const ColumnStructure& cs, Ring ring);
  static GradedAutomorphism elementary(const ColumnStructure& cs, Ring ring, std::size_t column, const Element& scalar);
  static GradedAutomorphism torus(const ColumnStructure& cs, Ring ring, const std::vector<Element>& xi);
  static GradedAutomorphism symmetry(const ColumnStructure& cs, Ring ring, const Permutation& perm);

  const Matrix& matrix() const { return matrix_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Generator<Ring>>& word() const { return word_; }
  std::size_t size() const { return matrix_.size(); }

  // (this o other)(x) = this(other(x))
  GradedAutomorphism compose(const GradedAutomorphism& other) const;
  GradedAutomorphism invert() const;
  bool equals(const GradedAutomorphism& other) const;
  bool is_identity() const;

  // Image of the degree-d monomial x_{i1} ... x_{id} as (point -> coefficient).
  std::map<IntVector, Element> apply_product(const std::vector<std::size_t>& factors) const;
  // Every decomposition of a degree-d monomial, 2 <= d <= max_degree, has the same image.
  bool degree_consistent(std::size_t max_degree = 3) const;

 private:
  GradedAutomorphism(const ColumnStructure* cs, Ring ring, Matrix m, std::vector<Generator<Ring>> word,
                     std::vector<Generator<Ring>> inverse_word)
      : cs_(cs), ring_(std::move(ring)), matrix_(std::move(m)), word_(std::move(word)),
        inverse_word_(std::move(inverse_word)) {}

  static Matrix generator_matrix(const ColumnStructure& cs, const Ring& ring, const Generator<Ring>& g);
  static Generator<Ring> generator_inverse(const Ring& ring, const Generator<Ring>& g);
  void require_compatible(const GradedAutomorphism& other) const;

  const ColumnStructure* cs_;  // not owned; must outlive the automorphism
  Ring ring_;
  Matrix matrix_;
  std::vector<Generator<Ring>> word_;
  std::vector<Generator<Ring>> inverse_word_;
};

template <CoeffRing Ring>
typename Ring::Element matrix_determinant(const Ring& ring, const typename GradedAutomorphism<Ring>::Matrix& m);

// Closed form x -> sum_k C(h,k) lambda^k (z + k v, d), h = ht_v(z, d).
template <CoeffRing Ring>
std::map<IntVector, typename Ring::Element> elementary_closed_form(const ColumnStructure& cs, const Ring& ring,
                                                                   std::size_t column,
                                                                   const typename Ring::Element& scalar,
                                                                   const IntVector& z, std::size_t degree);

// Closed form vs multiplicative action on every decomposition up to max_degree.
template <CoeffRing Ring>
bool binomial_formula_agrees(const ColumnStructure& cs, const Ring& ring, std::size_t column,
                             const typename Ring::Element& scalar, std::size_t max_degree = 3);

// ---- verification reports

struct PairReport {
  std::size_t u = 0;
  std::size_t v = 0;
  std::string status;  // "product", "commute", "stable-only"
  bool passed = true;  // always true for "stable-only"
  std::string observed;  // for stable-only pairs: what the commutator turned out to be
};

struct SteinbergReport {
  std::vector<std::pair<std::size_t, bool>> additivity;  // clause (d) per column
  std::vector<PairReport> pairs;                          // clause (e); empty when unbalanced
  bool balanced = true;
  bool all_passed() const;
};

// Over Z[lambda, mu]: e_u^l e_u^m = e_u^{l+m}, and for u + v != 0 either
// [e_u^l, e_v^m] = e_{uv}^{-lm} (product exists) or commutation (u + v not in
// Col). [a, b] = a b a^-1 b^-1.
SteinbergReport verify_steinberg_relations(const ColumnStructure& cs);

struct AfembReport {
  std::size_t facet = 0;
  std::vector<std::size_t> columns;
  bool vacuous = false;
  bool commute = true;
  bool homomorphism = true;
  std::size_t grid_points = 0;
  std::size_t distinct_matrices = 0;
  bool passed() const { return vacuous || (commute && homomorphism && distinct_matrices == grid_points); }
};

AfembReport verify_afemb(const ColumnStructure& cs, std::size_t facet);

// Line grammar:
//   # v<i> = (..) base=<f>
//   GEN v<i> base=<f>
//   REL add v<i>
//   REL comm v<i> v<j> -> v<k> sign=-1
//   REL comm v<i> v<j> -> 1
// With a modulus p the finite instantiation over Z/p follows as IGEN/IREL lines.
std::string steinberg_presentation_text(const ColumnStructure& cs, std::optional<long long> modulus = std::nullopt);
std::string steinberg_presentation_json(const ColumnStructure& cs);

// #Col(P) + n + 1
std::size_t reported_group_dimension(const ColumnStructure& cs);

}  // namespace polycol

#include "polycol/algebra_impl.hpp"
