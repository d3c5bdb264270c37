#include "corpus.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include "polycol/error.hpp"
#include "polycol/polytope.hpp"
#include "polycol/reports.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polycol;
using support::to_vec;

namespace {

void expect_matches_oracle(const Polytope& p) {
  const auto vs = support::vertices_of(p);
  std::vector<oracle::Vec> pts;
  for (const auto& x : p.lattice_points()) pts.push_back(to_vec(x));
  EXPECT_EQ(pts, oracle::lattice_points(vs)) << p.name();
  std::vector<oracle::Halfspace> fs;
  for (const auto& f : p.facets()) fs.push_back({to_vec(f.normal), static_cast<long long>(f.offset)});
  std::sort(fs.begin(), fs.end());
  EXPECT_EQ(fs, oracle::facets(vs)) << p.name();
  for (const auto& f : p.facets()) {
    for (std::size_t i = 0; i < p.lattice_points().size(); ++i) {
      const Int h = f.evaluate(p.lattice_points()[i]);
      EXPECT_GE(h, f.offset);
      bool listed = std::find(f.on_facet.begin(), f.on_facet.end(), i) != f.on_facet.end();
      EXPECT_EQ(listed, h == f.offset);
    }
  }
}

Polytope non_normal_tetrahedron() {
  return Polytope::from_points(
      {make_vector({0, 0, 0}), make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({1, 1, 2})}, "reeve");
}

}  // namespace

TEST(Hull, HexagonVerticesAndPoints) {
  const Polytope h = corpus::hexagon();
  EXPECT_EQ(h.vertices().size(), 6u);
  EXPECT_EQ(h.lattice_points().size(), 19u);
  EXPECT_EQ(h.facets().size(), 6u);
}

TEST(Hull, InteriorPointDropped) {
  Polytope seg = Polytope::from_points({make_vector({0, 0}), make_vector({2, 0}), make_vector({1, 0})});
  EXPECT_EQ(seg.vertices(), (std::vector<IntVector>{make_vector({0, 0}), make_vector({2, 0})}));
  EXPECT_EQ(seg.dim(), 1u);
  EXPECT_EQ(seg.lattice_points().size(), 3u);
}

TEST(Hull, BadInput) {
  EXPECT_THROW(Polytope::from_points({}), InvalidInput);
  EXPECT_THROW(Polytope::from_points({make_vector({0, 0}), make_vector({1})}), InvalidInput);
  EXPECT_THROW(parse_polytope(R"({"vertices": [[0,0],[1,0],[0.5,0.5]]})"), InvalidInput);
}

TEST(Hull, CorpusAgainstOracle) {
  for (const auto& p : corpus::all())
    if (p.is_full_dimensional()) expect_matches_oracle(p);
}

TEST(Hull, RandomAgainstOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) expect_matches_oracle(support::random_polytope(rng, 2 + trial % 2, 4));
}

TEST(Normalization, DetectsIndexTwoLattice) {
  const Polytope t = non_normal_tetrahedron();
  EXPECT_EQ(t.lattice_points().size(), 4u);
  EXPECT_FALSE(is_normalized(t));
  const Normalization n = normalize_full_dim(t);
  EXPECT_TRUE(is_normalized(n.polytope));
  EXPECT_TRUE(is_unimodular_simplex(n.polytope));
  for (const auto& v : n.polytope.vertices()) EXPECT_TRUE(t.lattice_index(n.chart.embed(v)).has_value());
  EXPECT_EQ(normalized_volume(t), 2);
}

TEST(Normalization, LowerDimensionalInput) {
  Polytope tri = Polytope::from_points({make_vector({0, 0, 1}), make_vector({2, 0, 1}), make_vector({0, 2, 1})});
  EXPECT_FALSE(tri.is_full_dimensional());
  const Normalization n = normalize_full_dim(tri);
  EXPECT_EQ(n.polytope.ambient_dim(), 2u);
  EXPECT_TRUE(integral_affine_equivalent(n.polytope, corpus::simplex(2, 2)).has_value());
}

TEST(Height, FacetFormsAndDegree) {
  const Polytope sq = corpus::unit_square();
  for (const auto& f : sq.facets()) {
    EXPECT_EQ(content(f.normal), 1);
    EXPECT_EQ(height(sq, f, make_vector({1, 1}), 2), f.evaluate(make_vector({1, 1})) - 2 * f.offset);
  }
  FacetForm foreign{make_vector({1, 1}), 0, {}, {}};
  EXPECT_THROW(height(sq, foreign, make_vector({0, 0}), 1), PreconditionError);
}

TEST(Equivalence, DilatedAndMappedCopies) {
  const Polytope t2 = corpus::simplex(2, 2);
  AffineLatticeMap m(IntMatrix::from_rows({make_vector({2, 1}), make_vector({1, 1})}, 2), make_vector({5, -3}));
  const Polytope image = t2.mapped(m);
  auto found = integral_affine_equivalent(t2, image);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(t2.mapped(*found), image);
  EXPECT_FALSE(integral_affine_equivalent(corpus::simplex(2), t2).has_value());
  EXPECT_EQ(symmetry_maps(corpus::simplex(2)).size(), 6u);
  EXPECT_EQ(symmetry_maps(corpus::unit_square()).size(), 8u);
}

TEST(Equivalence, SymmetryCountsAgainstOracle) {
  for (const auto& p : corpus::all()) {
    if (p.dim() != 2) continue;
    EXPECT_EQ(symmetry_maps(p).size(), oracle::polygon_symmetry_count(support::vertices_of(p))) << p.name();
  }
  // the trapezoid has the reflection (x, y) -> (2 - x - y, y)
  EXPECT_EQ(oracle::polygon_symmetry_count(support::vertices_of(corpus::trapezoid())), 2u);
}

TEST(Fan, SquareHasQuadrants) {
  const NormalFan fan = normal_fan(corpus::unit_square());
  ASSERT_EQ(fan.cones.size(), 4u);
  for (const auto& c : fan.cones) EXPECT_EQ(c.generators.size(), 2u);
  EXPECT_TRUE(fan.cones.back().contains(make_vector({1, 1})));
  EXPECT_FALSE(fan.cones.front().contains(make_vector({1, 1})));
}

TEST(Fan, DilationInvariant) { EXPECT_EQ(normal_fan(corpus::simplex(2)), normal_fan(corpus::simplex(2, 2))); }

TEST(Fan, GenericFunctionalsHitTheirArgmaxCone) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-40, 40);
  for (const auto& p : corpus::all()) {
    if (!p.is_full_dimensional()) continue;
    const NormalFan fan = normal_fan(p);
    for (int trial = 0; trial < 30; ++trial) {
      IntVector phi;
      for (std::size_t i = 0; i < p.ambient_dim(); ++i) phi.emplace_back(d(rng));
      std::size_t best = 0, ties = 0;
      for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        if (dot(phi, p.vertices()[i]) > dot(phi, p.vertices()[best])) best = i;
      }
      for (const auto& v : p.vertices()) ties += dot(phi, v) == dot(phi, p.vertices()[best]);
      if (ties != 1) continue;
      std::size_t hits = 0;
      for (const auto& c : fan.cones) hits += c.contains(phi);
      EXPECT_EQ(hits, 1u);
      EXPECT_TRUE(fan.cones[best].contains(phi));
    }
  }
}

TEST(Fan, ProjectiveEquivalenceMatchesConeComparison) {
  std::vector<Polytope> polys;
  for (const auto& p : corpus::all())
    if (p.dim() == 2) polys.push_back(p);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) polys.push_back(support::random_polytope(rng, 2, 3));
  for (const auto& p : polys)
    for (const auto& q : polys) EXPECT_EQ(projectively_equivalent(p, q), normal_fan(p) == normal_fan(q));
  EXPECT_TRUE(projectively_equivalent(corpus::simplex(2), corpus::simplex(2, 2)));
  EXPECT_FALSE(projectively_equivalent(corpus::unit_square(), corpus::trapezoid()));
}

TEST(Volume, UnimodularSimplices) {
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_TRUE(is_unimodular_simplex(corpus::simplex(n)));
    EXPECT_EQ(normalized_volume(corpus::simplex(n)), 1);
    EXPECT_FALSE(is_unimodular_simplex(corpus::simplex(n, 2)));
  }
  EXPECT_EQ(normalized_volume(corpus::unit_square()), 2);
}
