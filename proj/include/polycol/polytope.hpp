#pragma once

#include "polycol/exact_math.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycol {

// Primitive integral linear form together with its minimum on the polytope.
// For x in P: dot(normal, x) >= offset, with equality exactly on the facet.
struct FacetForm {
  IntVector normal;
  Int offset;
  std::vector<std::size_t> on_facet;  // indices into lattice_points()
  std::vector<std::size_t> vertices;  // indices into vertices()

  Int evaluate(const IntVector& x) const { return dot(normal, x); }
};

// x -> matrix * x + translation. The inverse is computed once, when the
// matrix is square and unimodular.
class AffineLatticeMap {
 public:
  AffineLatticeMap(IntMatrix matrix, IntVector translation);

  static AffineLatticeMap identity(std::size_t n);
  static AffineLatticeMap translation_by(const IntVector& t);

  const IntMatrix& matrix() const { return matrix_; }
  const IntVector& translation() const { return translation_; }

  IntVector apply(const IntVector& x) const;
  // Linear part only.
  IntVector apply_linear(const IntVector& v) const { return matrix_ * v; }

  bool invertible() const { return inverse_.has_value(); }
  AffineLatticeMap inverse() const;
  // (this o inner)(x) = this(inner(x))
  AffineLatticeMap compose(const AffineLatticeMap& inner) const;

  bool operator==(const AffineLatticeMap& other) const {
    return matrix_ == other.matrix_ && translation_ == other.translation_;
  }

 private:
  IntMatrix matrix_;
  IntVector translation_;
  std::optional<std::pair<IntMatrix, IntVector>> inverse_;
};

// An affine lattice x0 + span_Z(basis rows) together with coordinate solving.
class LatticeChart {
 public:
  LatticeChart(IntVector origin, LatticeBasis basis);

  const IntVector& origin() const { return origin_; }
  const LatticeBasis& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rank(); }

  // Local coordinates -> ambient point.
  IntVector embed(const IntVector& local) const;
  // Ambient point -> local coordinates; nullopt outside the affine lattice.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  // The embedding as an affine map Z^rank -> Z^n.
  AffineLatticeMap embedding() const;

 private:
  IntVector origin_;
  LatticeBasis basis_;
};

class Polytope {
 public:
  // Convex hull of integral points. Throws InvalidInput on empty or ragged input.
  static Polytope from_points(const std::vector<IntVector>& points, std::string name = {});

  std::size_t ambient_dim() const;
  std::size_t dim() const;
  bool is_full_dimensional() const { return dim() == ambient_dim(); }
  const std::string& name() const;

  // Extreme points, sorted lexicographically.
  const std::vector<IntVector>& vertices() const;
  // Facet forms (requires full dimension). Sorted by normal.
  const std::vector<FacetForm>& facets() const;
  // P intersected with Z^n, sorted lexicographically.
  const std::vector<IntVector>& lattice_points() const;
  // Pairs of vertex indices joined by an edge (i < j), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const;

  // Saturated lattice of the affine hull: aff(P) intersected with Z^n.
  const LatticeChart& affine_hull_chart() const;

  std::optional<std::size_t> lattice_index(const IntVector& x) const;
  std::optional<std::size_t> facet_index(const FacetForm& f) const;
  bool contains(const IntVector& x) const;

  // Same vertex set (names ignored).
  bool operator==(const Polytope& other) const { return vertices() == other.vertices(); }

  Polytope renamed(std::string name) const;
  Polytope translated(const IntVector& t) const;
  Polytope dilated(const Int& k) const;
  Polytope mapped(const AffineLatticeMap& m) const;

 private:
  struct Impl;
  explicit Polytope(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct Normalization {
  Polytope polytope;  // full-dimensional in Z^r; L_Q affinely generates Z^r
  LatticeChart chart; // Q -> P: chart.embed maps vertices of Q onto vertices of P
};

// Re-coordinatize P in the affine lattice generated by its lattice points.
Normalization normalize_full_dim(const Polytope& p);
bool is_normalized(const Polytope& p);

// <F, z> - degree * b_F. Throws PreconditionError if f is not a facet of p.
Int height(const Polytope& p, const FacetForm& f, const IntVector& z, const Int& degree);

bool is_unimodular_simplex(const Polytope& p);

// First lattice-affine bijection carrying p onto q (canonical search order).
std::optional<AffineLatticeMap> integral_affine_equivalent(const Polytope& p, const Polytope& q);
// All integral-affine self-maps of p.
std::vector<AffineLatticeMap> symmetry_maps(const Polytope& p);

struct NormalCone {
  IntVector vertex;                 // the vertex maximizing every functional in the cone
  std::vector<IntVector> generators; // sorted primitive(vertex - neighbor)
  bool contains(const IntVector& functional) const;
};

struct NormalFan {
  std::vector<NormalCone> cones;  // one per vertex, in vertex order

  // Cone data only, ordered canonically; vertex positions are ignored.
  std::vector<std::vector<IntVector>> canonical() const;
  bool operator==(const NormalFan& other) const { return canonical() == other.canonical(); }
};

NormalFan normal_fan(const Polytope& p);

// Facet-normal matching plus vertex-facet incidence isomorphism.
bool projectively_equivalent(const Polytope& p, const Polytope& q);

// Normalized volume (dim! times Euclidean volume) measured in the lattice of
// the affine hull; computed as a sum of lattice pyramids over facets.
Int normalized_volume(const Polytope& p);

}  // namespace polycol
