#pragma once

#include "polycol/polytope.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polycol {

// v in Z^n with x + v in P for every lattice point x of P off the base facet.
struct ColumnVector {
  IntVector v;
  std::size_t base_facet = 0;  // index into Polytope::facets()

  bool operator==(const ColumnVector&) const = default;
};

enum class ColumnSearch {
  pruned,   // candidates restricted to <F, v> = -1 before the definition check
  literal,  // every lattice difference checked against every facet
};

// Col(P) in canonical (lexicographic) order. Requires a normalized
// full-dimensional polytope of dimension >= 1.
std::vector<ColumnVector> column_vectors(const Polytope& p, ColumnSearch mode = ColumnSearch::pruned);

// Literal definition: x + v in P for all x in L_P off facet f.
bool satisfies_column_definition(const Polytope& p, const IntVector& v, std::size_t facet);

enum class ProductKind { exists, sum_zero, none };

struct ProductEntry {
  ProductKind kind = ProductKind::none;
  std::size_t result = 0;  // valid when kind == exists
};

// Col(P) with its partial product table. Immutable after construction.
class ColumnStructure {
 public:
  explicit ColumnStructure(Polytope p, ColumnSearch mode = ColumnSearch::pruned);

  const Polytope& polytope() const { return polytope_; }
  const std::vector<ColumnVector>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  const ColumnVector& operator[](std::size_t i) const { return columns_[i]; }

  std::optional<std::size_t> index_of(const IntVector& v) const;
  // Throws PreconditionError when c is not a column vector of this polytope.
  std::size_t require_index(const ColumnVector& c) const;

  const ProductEntry& product_entry(std::size_t u, std::size_t v) const { return table_[u * size() + v]; }
  std::optional<std::size_t> product_index(std::size_t u, std::size_t v) const;
  // All (u, v, uv) triples, in (u, v) order.
  std::vector<std::array<std::size_t, 3>> product_triples() const;

  // <P_u, v>: the height of v with respect to the base facet of u.
  Int pairing(std::size_t u, std::size_t v) const;
  // ht_{P_c}(z, degree)
  Int height(std::size_t c, const IntVector& z, const Int& degree) const;
  const FacetForm& base_facet(std::size_t c) const;

 private:
  Polytope polytope_;
  std::vector<ColumnVector> columns_;
  std::map<IntVector, std::size_t> index_;
  std::vector<ProductEntry> table_;
};

// Product uv per the quantifier definition; nullopt when it does not exist.
std::optional<ColumnVector> product(const ColumnStructure& cs, const ColumnVector& u, const ColumnVector& v);

// Literal check of the product condition without the table.
bool product_exists(const Polytope& p, const ColumnVector& u, const ColumnVector& v);

// Sum of the sequence if some bracketing makes every binary product exist.
std::optional<ColumnVector> weak_product(const ColumnStructure& cs, const std::vector<ColumnVector>& seq);
// Product in the strong sense: consecutive products exist and no contiguous
// partial sum vanishes.
std::optional<ColumnVector> strict_product(const ColumnStructure& cs, const std::vector<ColumnVector>& seq);

using ColumnSet = std::set<std::size_t>;  // indices into cs.columns()

// [V]: all strict products of sequences from V.
ColumnSet strict_hull(const ColumnStructure& cs, const ColumnSet& v);
// <V>: closure of V under binary products.
ColumnSet weak_hull(const ColumnStructure& cs, const ColumnSet& v);

struct BalanceWitness {
  std::size_t u = 0;
  std::size_t v = 0;
  Int value;  // <P_u, v>
};

struct BalanceResult {
  bool balanced = true;
  std::optional<BalanceWitness> witness;
};

// <P_u, v> <= 1 for all ordered pairs; also checks the |.| <= 1 variant agrees.
BalanceResult is_balanced(const ColumnStructure& cs);

struct DivisibilityWitness {
  std::string clause;                // "cd1" or "cd2"
  std::vector<std::size_t> columns;  // (a, b, c) for cd1, (a, b, c, d) for cd2
  std::string description;
};

struct DivisibilityResult {
  bool divisible = true;
  std::optional<DivisibilityWitness> witness;
};

// Requires a balanced polytope (PreconditionError otherwise). "a = db" means:
// d in Col(P), the product db exists and equals a.
DivisibilityResult is_col_divisible(const ColumnStructure& cs);

struct KMorphismViolation {
  std::string condition;  // "i" or "ii"
  std::size_t first = 0;
  std::size_t second = 0;
  std::string description;
};

struct KMorphismResult {
  bool ok = true;
  std::vector<KMorphismViolation> violations;
};

// mu maps column indices of p to column indices of q and must be total.
KMorphismResult check_k_morphism(const ColumnStructure& p, const ColumnStructure& q,
                                 const std::vector<std::size_t>& mu);

// Classification of balanced polygons by Col signature.
struct PolygonClass {
  char label = '?';                              // 'a' .. 'f'
  bool empty_columns = false;                    // class d with t = 0
  std::map<std::string, std::size_t> named;      // "u", "v", "w", ... -> column index
  std::size_t multiple = 0;                      // k for class a (P ~ k * unit triangle)
  std::optional<IntMatrix> linear_witness;       // unimodular A carrying the labeled columns to the model
  bool projective_witness = false;               // A(P) projectively equivalent to the model
  std::string note;
};

// Precedence a, b, e, c, d, f. Requires dim 2 and balanced (PreconditionError);
// a balanced polygon matching no signature raises InvariantViolation.
PolygonClass classify_balanced_polygon(const ColumnStructure& cs);

// Model polygons used as classification targets.
Polytope unit_triangle_multiple(long long k);
Polytope trapezoid_model();
Polytope unit_square_model();

// Directed graph on vertices 0..vertex_count-1 with labels of [V] as (start, end).
struct RigidCertificate {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> labeling;  // column index -> path class
};

enum class RigidStatus { rigid, not_rigid, unknown };

struct RigidResult {
  RigidStatus status = RigidStatus::unknown;
  std::string clause;  // failing clause for not_rigid: "a", "b" or "c"
  std::string reason;
  std::optional<RigidCertificate> certificate;
  ColumnSet strict;
  ColumnSet weak;
};

// partition_budget bounds the number of vertex identifications tried after the
// forced labeling fails.
RigidResult is_rigid(const ColumnStructure& cs, const ColumnSet& v, std::size_t partition_budget = 200000);

// Independent check: graph conditions, reachability-based path classes, and
// the product isomorphism against the product table. Returns an empty string
// on success, otherwise the first failure.
std::string verify_rigid_certificate(const ColumnStructure& cs, const ColumnSet& hull, const RigidCertificate& cert);

// Graphviz digraph: nodes are column vectors; edge u -> uv labelled "*v".
std::string product_table_dot(const ColumnStructure& cs);
// {"columns":[{"v":[...],"base":i}],"products":[[i,j,k]]}
std::string product_table_json(const ColumnStructure& cs);

}  // namespace polycol
