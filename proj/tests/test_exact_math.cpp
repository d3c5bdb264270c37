#include "polycol/coeff_ring.hpp"
#include "polycol/error.hpp"
#include "polycol/exact_math.hpp"
#include "polycol/int_poly.hpp"
#include "polycol/json_util.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace polycol;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Leibniz expansion over all permutations.
long long leibniz(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    long long prod = sign;
    for (std::size_t i = 0; i < n; ++i) prod *= static_cast<long long>(m(i, perm[i]));
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(HermiteForm, SmallExample) {
  IntMatrix m = IntMatrix::from_rows({make_vector({1, 1}), make_vector({1, -1})}, 2);
  HermiteForm h = hermite_normal_form(m);
  EXPECT_EQ(h.h, IntMatrix::from_rows({make_vector({1, 1}), make_vector({0, 2})}, 2));
  EXPECT_EQ(h.u * m, h.h);
  EXPECT_EQ(abs(determinant(h.u)), 1);
  EXPECT_EQ(h.rank, 2u);
}

TEST(HermiteForm, RandomShapeAndTransform) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = random_matrix(rng, 2 + trial % 3, 3 + trial % 2, 6);
    HermiteForm h = hermite_normal_form(m);
    EXPECT_EQ(h.u * m, h.h);
    EXPECT_EQ(abs(determinant(h.u)), 1);
    // pivots positive, strictly moving right, entries above reduced
    std::size_t last = 0;
    for (std::size_t r = 0; r < h.rank; ++r) {
      std::size_t c = 0;
      while (h.h(r, c) == 0) ++c;
      EXPECT_GT(h.h(r, c), 0);
      if (r > 0) {
        EXPECT_GT(c, last);
      }
      for (std::size_t above = 0; above < r; ++above) {
        EXPECT_GE(h.h(above, c), 0);
        EXPECT_LT(h.h(above, c), h.h(r, c));
      }
      last = c;
    }
    for (std::size_t r = h.rank; r < h.h.rows(); ++r) EXPECT_TRUE(is_zero(h.h.row(r)));
  }
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    IntMatrix m = random_matrix(rng, 1 + trial % 5, 1 + trial % 5, 9);
    EXPECT_EQ(determinant(m), leibniz(m));
  }
}

TEST(Kernel, AnnihilatesAndIsSaturated) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 2, 4, 5);
    IntMatrix k = integer_kernel(m);
    for (std::size_t r = 0; r < k.rows(); ++r) EXPECT_TRUE(is_zero(m * k.row(r)));
    EXPECT_EQ(k.rows() + rank(m), 4u);
    // the kernel lattice is already saturated
    if (k.rows() > 0) {
      LatticeBasis lb(k, 4);
      IntMatrix sat = saturated_row_basis(k);
      for (std::size_t r = 0; r < sat.rows(); ++r) EXPECT_TRUE(lb.coordinates(sat.row(r)).has_value());
    }
  }
}

TEST(Saturation, RecoversHalfVectors) {
  IntMatrix m = IntMatrix::from_rows({make_vector({2, 4, 0})}, 3);
  LatticeBasis sat(saturated_row_basis(m), 3);
  EXPECT_TRUE(sat.coordinates(make_vector({1, 2, 0})).has_value());
  EXPECT_FALSE(LatticeBasis(m, 3).coordinates(make_vector({1, 2, 0})).has_value());
}

TEST(Vectors, PrimitivePartAndSection) {
  EXPECT_EQ(primitive_part(make_vector({4, -6})), make_vector({2, -3}));
  EXPECT_EQ(content(make_vector({4, -6, 10})), 2);
  for (const auto& a : {make_vector({3, 5}), make_vector({-2, 7, 3}), make_vector({0, -1})})
    EXPECT_EQ(dot(a, integral_section(a)), 1);
  EXPECT_THROW(integral_section(make_vector({2, 4})), InvalidInput);
}

TEST(Inverse, UnimodularAndRational) {
  IntMatrix m = IntMatrix::from_rows({make_vector({2, 1}), make_vector({5, 3})}, 2);
  EXPECT_EQ(unimodular_inverse(m) * m, IntMatrix::identity(2));
  IntMatrix s = IntMatrix::from_rows({make_vector({2, 0}), make_vector({0, 4})}, 2);
  EXPECT_THROW(unimodular_inverse(s), InvalidInput);
  auto inv = rational_inverse(s);
  EXPECT_EQ(inv[0][0], Rat(1, 2));
  EXPECT_EQ(inv[1][1], Rat(1, 4));
}

TEST(IntPolyArithmetic, ExpansionAndEvaluation) {
  IntPoly x = IntPoly::variable("x"), y = IntPoly::variable("y");
  IntPoly sq = (x + y) * (x + y);
  EXPECT_EQ(sq, x * x + IntPoly(2) * x * y + y * y);
  EXPECT_EQ((x - y) * (x + y), x.pow(2) - y.pow(2));
  EXPECT_EQ(sq.evaluate(std::map<std::string, Int>{{"x", 3}, {"y", -5}}), 4);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(sq.total_degree(), 2u);
}

namespace {

template <CoeffRing Ring>
void ring_axioms(const Ring& ring, const std::vector<typename Ring::Element>& xs) {
  for (const auto& a : xs)
    for (const auto& b : xs) {
      EXPECT_TRUE(ring.equal(ring.add(a, b), ring.add(b, a)));
      EXPECT_TRUE(ring.equal(ring.multiply(a, b), ring.multiply(b, a)));
      for (const auto& c : xs) {
        EXPECT_TRUE(ring.equal(ring.multiply(a, ring.add(b, c)), ring.add(ring.multiply(a, b), ring.multiply(a, c))));
        EXPECT_TRUE(ring.equal(ring.multiply(ring.multiply(a, b), c), ring.multiply(a, ring.multiply(b, c))));
      }
    }
  for (const auto& a : xs) {
    EXPECT_TRUE(ring.equal(ring.add(a, ring.negate(a)), ring.zero()));
    EXPECT_TRUE(ring.equal(ring.multiply(a, ring.one()), a));
    if (auto inv = ring.inverse(a)) {
      EXPECT_TRUE(ring.equal(ring.multiply(a, *inv), ring.one()));
    }
  }
}

}  // namespace

TEST(CoeffRings, AxiomSpotChecks) {
  ring_axioms(IntegerRing{}, {Int(0), Int(1), Int(-3), Int(7)});
  ring_axioms(RationalRing{}, {Rat(0), Rat(1, 2), Rat(-3, 5), Rat(7)});
  ModularRing z7(7);
  ring_axioms(z7, {Int(0), Int(1), Int(3), Int(6)});
  for (int a = 1; a < 7; ++a) EXPECT_TRUE(z7.inverse(a).has_value());
  EXPECT_FALSE(ModularRing(6).inverse(2).has_value());
  IntPoly l = IntPoly::variable("lambda");
  ring_axioms(PolynomialRing{}, {IntPoly(0), l, l * l - IntPoly(1), IntPoly(-2)});
  EXPECT_THROW(ModularRing(1), InvalidInput);
}

TEST(JsonInts, WideValuesBecomeStrings) {
  Int big = Int(1) << 70;
  auto j = int_to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(int_from_json(j), big);
  EXPECT_TRUE(int_to_json(Int(-12)).is_number_integer());
  EXPECT_EQ(int_from_json(int_to_json(Int(-12))), -12);
  EXPECT_THROW(int_from_json(nlohmann::json("12a")), InvalidInput);
  EXPECT_THROW(int_from_json(nlohmann::json(0.5)), InvalidInput);
}
