#include "corpus.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include "polycol/algebra.hpp"
#include "polycol/error.hpp"
#include "polycol/json_util.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace polycol;

namespace {

using PolyAut = GradedAutomorphism<PolynomialRing>;

// d-fold sumsets of the lattice points, by brute force.
std::set<oracle::Vec> sumset(const std::vector<oracle::Vec>& pts, std::size_t d) {
  std::set<oracle::Vec> layer{oracle::Vec(pts.front().size(), 0)};
  for (std::size_t k = 0; k < d; ++k) {
    std::set<oracle::Vec> next;
    for (const auto& z : layer)
      for (const auto& x : pts) next.insert(oracle::plus(z, x));
    layer = std::move(next);
  }
  return layer;
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST(Semigroup, MembershipMatchesSumsets) {
  std::vector<Polytope> polys{corpus::unit_square(), corpus::trapezoid(), corpus::slim_triangle(), corpus::pyramid()};
  std::mt19937_64 rng(9);
  for (int i = 0; i < 6; ++i) polys.push_back(support::random_polytope(rng, 2, 3));
  for (const auto& p : polys) {
    std::vector<oracle::Vec> pts;
    for (const auto& x : p.lattice_points()) pts.push_back(support::to_vec(x));
    for (std::size_t d = 0; d <= 3; ++d) {
      const auto expected = sumset(pts, d);
      for (const auto& z : expected) EXPECT_TRUE(sp_membership(p, support::to_int(z), d));
      // a few points just outside the sumset
      for (const auto& z : expected) {
        oracle::Vec shifted = z;
        shifted[0] += 1;
        EXPECT_EQ(sp_membership(p, support::to_int(shifted), d), expected.count(shifted) > 0);
      }
    }
    EXPECT_THROW(sp_membership(p, IntVector(p.ambient_dim(), 0), -1), InvalidInput);
  }
}

TEST(Semigroup, ColumnsPropertyHoldsForColumns) {
  for (const auto& p : {corpus::simplex(2), corpus::trapezoid(), corpus::two_products(), corpus::pyramid()}) {
    const ColumnStructure cs(p);
    for (const auto& c : cs.columns()) {
      const auto r = columns_property_check(p, c.v, c.base_facet, 3);
      EXPECT_TRUE(r.holds) << p.name() << ' ' << to_string(c.v);
      EXPECT_GT(r.checked, 0u);
    }
  }
  // (2, 0) on the square is not a column vector for any facet
  const Polytope sq = corpus::unit_square();
  for (std::size_t f = 0; f < sq.facets().size(); ++f) {
    const auto r = columns_property_check(sq, make_vector({2, 0}), f, 2);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.counterexample.has_value());
  }
}

TEST(Elementary, UnitSimplexMatricesAreSingleEntry) {
  const PolynomialRing ring;
  const IntPoly lambda = IntPoly::variable("lambda");
  for (std::size_t n = 1; n <= 3; ++n) {
    const ColumnStructure cs(corpus::simplex(n));
    ASSERT_EQ(cs.size(), n * (n + 1));
    const auto& pts = cs.polytope().lattice_points();
    for (std::size_t c = 0; c < cs.size(); ++c) {
      const auto m = PolyAut::elementary(cs, ring, c, lambda).matrix();
      const FacetForm& f = cs.base_facet(c);
      std::size_t off_diagonal = 0;
      for (std::size_t col = 0; col < pts.size(); ++col)
        for (std::size_t row = 0; row < pts.size(); ++row) {
          if (row == col) {
            EXPECT_EQ(m[row][col], IntPoly(1));
          } else if (!m[row][col].is_zero()) {
            ++off_diagonal;
            EXPECT_EQ(m[row][col], lambda);
            // the moved point is the vertex off the base facet
            EXPECT_EQ(f.evaluate(pts[col]) - f.offset, 1);
            EXPECT_EQ(pts[row], add(pts[col], cs[c].v));
          }
        }
      EXPECT_EQ(off_diagonal, 1u);
    }
  }
}

TEST(Elementary, DeterminantOneAndInverse) {
  const IntegerRing z;
  const ModularRing z5(5);
  for (const auto& p : {corpus::trapezoid(), corpus::two_products(), corpus::pyramid()}) {
    const ColumnStructure cs(p);
    for (std::size_t c = 0; c < cs.size(); ++c) {
      for (long long lambda : {-3, 1, 4}) {
        auto e = GradedAutomorphism<IntegerRing>::elementary(cs, z, c, Int(lambda));
        EXPECT_EQ(matrix_determinant<IntegerRing>(z, e.matrix()), 1);
        EXPECT_TRUE(e.compose(e.invert()).is_identity());
        EXPECT_TRUE(e.invert().equals(GradedAutomorphism<IntegerRing>::elementary(cs, z, c, Int(-lambda))));
      }
      auto a = GradedAutomorphism<ModularRing>::elementary(cs, z5, c, Int(2));
      auto b = GradedAutomorphism<ModularRing>::elementary(cs, z5, c, Int(3));
      EXPECT_TRUE(a.compose(b).is_identity());
    }
  }
}

TEST(Elementary, BinomialFormulaAndDegreeConsistency) {
  const PolynomialRing ring;
  const IntPoly lambda = IntPoly::variable("lambda");
  std::vector<Polytope> polys{corpus::simplex(2), corpus::trapezoid(), corpus::slim_triangle(), corpus::two_products()};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 4; ++i) polys.push_back(support::random_polytope(rng, 2, 3));
  for (const auto& p : polys) {
    const ColumnStructure cs(p);
    for (std::size_t c = 0; c < cs.size(); ++c) {
      EXPECT_TRUE(binomial_formula_agrees(cs, ring, c, lambda, 3)) << p.name();
      EXPECT_TRUE(PolyAut::elementary(cs, ring, c, lambda).degree_consistent(3));
    }
  }
}

TEST(Elementary, ClosedFormCoefficients) {
  // slim triangle: a point at height h picks up C(h, k) lambda^k at z + k v
  const ColumnStructure cs(corpus::slim_triangle());
  const IntegerRing z;
  for (std::size_t c = 0; c < cs.size(); ++c)
    for (const auto& x : cs.polytope().lattice_points())
      for (std::size_t d = 1; d <= 2; ++d) {
        IntVector zd = x;
        for (auto& e : zd) e *= static_cast<long long>(d);
        const Int h = cs.height(c, zd, Int(d));
        const auto image = elementary_closed_form(cs, z, c, Int(2), zd, d);
        ASSERT_EQ(image.size(), static_cast<std::size_t>(h) + 1);
        Int binom = 1, power = 1;
        for (long long k = 0; k <= static_cast<long long>(h); ++k) {
          IntVector target = zd;
          for (std::size_t i = 0; i < target.size(); ++i) target[i] += k * cs[c].v[i];
          EXPECT_EQ(image.at(target), binom * power);
          binom = binom * (h - k) / (k + 1);
          power *= 2;
        }
      }
}

TEST(Automorphisms, TorusAndSymmetryGenerators) {
  const RationalRing q;
  const ColumnStructure cs(corpus::trapezoid());
  std::vector<Rat> xi{Rat(2), Rat(-1, 3), Rat(5)};
  std::vector<Rat> inv{Rat(1, 2), Rat(-3), Rat(1, 5)};
  auto t = GradedAutomorphism<RationalRing>::torus(cs, q, xi);
  EXPECT_TRUE(t.degree_consistent(3));
  EXPECT_TRUE(t.compose(GradedAutomorphism<RationalRing>::torus(cs, q, inv)).is_identity());
  EXPECT_THROW(GradedAutomorphism<RationalRing>::torus(cs, q, {Rat(0), Rat(1), Rat(1)}), InvalidInput);
  for (const auto& perm : sigma_permutations(cs.polytope())) {
    auto s = GradedAutomorphism<RationalRing>::symmetry(cs, q, perm);
    EXPECT_TRUE(s.degree_consistent(3));
    EXPECT_TRUE(s.compose(s.invert()).is_identity());
  }
  // a mixed word and its inverse
  auto e = GradedAutomorphism<RationalRing>::elementary(cs, q, 0, Rat(3, 2));
  auto w = e.compose(t).compose(e);
  EXPECT_TRUE(w.compose(w.invert()).is_identity());
  EXPECT_EQ(w.word().size(), 3u);
}

TEST(Symmetry, GroupOrdersAgainstOracle) {
  EXPECT_EQ(sigma_permutations(corpus::simplex(2)).size(), 6u);
  EXPECT_EQ(sigma_permutations(corpus::unit_square()).size(), 8u);
  for (const auto& p : corpus::all()) {
    if (p.dim() != 2) continue;
    EXPECT_EQ(sigma_permutations(p).size(), oracle::polygon_symmetry_count(support::vertices_of(p))) << p.name();
  }
}

TEST(Symmetry, InversionSubgroupIsNormal) {
  const InversionSubgroup sq = inversion_subgroup(ColumnStructure(corpus::unit_square()));
  EXPECT_EQ(sq.subgroup.size(), 4u);
  EXPECT_EQ(sq.quotient_order(), 2u);
  for (const auto& p : corpus::all()) {
    const ColumnStructure cs(p);
    const InversionSubgroup g = inversion_subgroup(cs);
    EXPECT_TRUE(g.normal) << p.name();
    // normality by direct conjugation
    const std::set<Permutation> sub(g.subgroup.begin(), g.subgroup.end());
    for (const auto& s : g.sigma)
      for (const auto& h : g.generators) EXPECT_TRUE(sub.count(compose(compose(s, h), inverse(s))));
    EXPECT_EQ(g.sigma.size() % g.subgroup.size(), 0u);
  }
}

TEST(Symmetry, ColumnInversionIsInvolution) {
  const ColumnStructure cs(corpus::unit_square());
  const auto& pts = cs.polytope().lattice_points();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    const Permutation p = column_inversion_permutation(cs, c);
    EXPECT_EQ(compose(p, p), identity_permutation(pts.size()));
    EXPECT_NE(p, identity_permutation(pts.size()));
  }
  // without -v in Col(P) there is no inversion
  std::size_t refused = 0;
  for (const auto& p : corpus::all()) {
    const ColumnStructure other(p);
    for (std::size_t c = 0; c < other.size(); ++c) {
      if (other.index_of(negated(other[c].v))) {
        const Permutation q = column_inversion_permutation(other, c);
        EXPECT_EQ(compose(q, q), identity_permutation(p.lattice_points().size()));
      } else {
        ++refused;
        EXPECT_THROW(column_inversion_permutation(other, c), PreconditionError);
      }
    }
  }
  EXPECT_GT(refused, 0u);
}

TEST(Steinberg, CorpusRelationsHold) {
  for (const auto& p : {corpus::simplex(2), corpus::simplex(3), corpus::unit_square(), corpus::trapezoid(),
                        corpus::pyramid(), corpus::two_products()}) {
    const ColumnStructure cs(p);
    const SteinbergReport r = verify_steinberg_relations(cs);
    EXPECT_TRUE(r.balanced) << p.name();
    EXPECT_TRUE(r.all_passed()) << p.name();
    EXPECT_EQ(r.additivity.size(), cs.size());
    std::size_t products = 0;
    for (const auto& pr : r.pairs) products += pr.status == "product";
    EXPECT_EQ(products, cs.product_triples().size()) << p.name();
  }
}

TEST(Steinberg, UnbalancedSkipsPairs) {
  const ColumnStructure cs(corpus::slim_triangle());
  const SteinbergReport r = verify_steinberg_relations(cs);
  EXPECT_FALSE(r.balanced);
  EXPECT_TRUE(r.pairs.empty());
  for (const auto& [c, ok] : r.additivity) EXPECT_TRUE(ok);
}

TEST(Afemb, SameBaseColumnsEmbed) {
  const ColumnStructure cs(corpus::same_base());
  bool found = false;
  for (std::size_t f = 0; f < cs.polytope().facets().size(); ++f) {
    const AfembReport r = verify_afemb(cs, f);
    EXPECT_TRUE(r.passed());
    if (r.columns.size() >= 3) {
      found = true;
      EXPECT_TRUE(r.commute);
      EXPECT_EQ(r.grid_points, 25u);
      EXPECT_EQ(r.distinct_matrices, 25u);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Presentation, TextCountsMatchStructure) {
  const ColumnStructure cs(corpus::two_products());
  const std::string text = steinberg_presentation_text(cs);
  EXPECT_EQ(count_lines(text, "GEN "), cs.size());
  EXPECT_EQ(count_lines(text, "REL add "), cs.size());
  std::size_t signed_lines = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) signed_lines += line.find("sign=-1") != std::string::npos;
  EXPECT_EQ(signed_lines, cs.product_triples().size());

  const std::string mod3 = steinberg_presentation_text(cs, 3);
  EXPECT_EQ(mod3.rfind(text, 0), 0u);
  EXPECT_EQ(count_lines(mod3, "IGEN "), cs.size() * 2);
  EXPECT_NE(mod3.find("# instantiated over Z/3"), std::string::npos);
  EXPECT_THROW(steinberg_presentation_text(cs, 1), InvalidInput);
  EXPECT_THROW(steinberg_presentation_text(ColumnStructure(corpus::slim_triangle())), PreconditionError);

  const auto j = nlohmann::json::parse(steinberg_presentation_json(cs));
  EXPECT_TRUE(j.is_object());
  EXPECT_EQ(reported_group_dimension(cs), cs.size() + 3);
}
