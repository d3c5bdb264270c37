#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace polycol {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Int>;

IntVector make_vector(std::initializer_list<long long> values);

Int dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scaled(const IntVector& a, const Int& k);
IntVector negated(const IntVector& a);
bool is_zero(const IntVector& a);

// "(1,-2,3)"
std::string to_string(const IntVector& v);

// Extended gcd: returns (g, s, t) with s*a + t*b = g and g >= 0.
std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b);

// gcd of all components; 0 for the zero vector.
Int content(const IntVector& v);

// v divided by the gcd of its components. Throws InvalidInput on v == 0.
IntVector primitive_part(const IntVector& v);

// Some w with a.w == 1, found by an extended-gcd sweep in coordinate order.
// Throws InvalidInput unless gcd(a) == 1.
IntVector integral_section(const IntVector& a);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_row(std::size_t r, const IntVector& values);

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& x) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::string to_string(const IntMatrix& m);

// Exact determinant (fraction-free Bareiss elimination). Square input only.
Int determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;  // row Hermite normal form
  IntMatrix u;  // unimodular, u * m == h
  std::size_t rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above a pivot
// reduced into [0, pivot), zero rows at the bottom. Requires rows() >= 1.
HermiteForm hermite_normal_form(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Rows form a basis of {x in Z^n : m x = 0}. Zero rows when m has full column rank.
IntMatrix integer_kernel(const IntMatrix& m);

// Rows form a basis of (R-span of the rows of m) intersected with Z^n.
IntMatrix saturated_row_basis(const IntMatrix& m);

// Inverse of a square matrix with determinant +-1. Throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Inverse over Q. Throws InvalidInput for singular input.
std::vector<std::vector<Rat>> rational_inverse(const IntMatrix& m);

// A lattice given by row generators, with coordinate solving in a fixed basis.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  // Generators may be dependent; the basis is the nonzero part of their HNF.
  LatticeBasis(const IntMatrix& generators, std::size_t ambient_dim);

  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }

  // c with c * basis == x, or nullopt when x is outside the lattice.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  IntVector combine(const IntVector& coords) const;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace polycol
