#include "polycol/exact_math.hpp"

#include "polycol/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace polycol {

IntVector make_vector(std::initializer_list<long long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return v;
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("add: dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("sub: dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector scaled(const IntVector& a, const Int& k) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

IntVector negated(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const IntVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return abs(g);
}

IntVector primitive_part(const IntVector& v) {
  Int g = content(v);
  if (g == 0) throw InvalidInput("primitive_part: zero vector");
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVector integral_section(const IntVector& a) {
  IntVector w(a.size(), Int(0));
  Int g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [g2, s, t] = extended_gcd(g, a[i]);
    for (std::size_t j = 0; j < i; ++j) w[j] *= s;
    w[i] = t;
    g = g2;
  }
  if (g != 1) throw InvalidInput("integral_section: vector " + to_string(a) + " is not primitive");
  return w;
}

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidInput("IntMatrix: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_row(std::size_t r, const IntVector& values) {
  if (values.size() != cols_) throw InvalidInput("IntMatrix: ragged rows");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("IntMatrix: shape mismatch in product");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(k, j);
    }
  return p;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (cols_ != x.size()) throw InvalidInput("IntMatrix: shape mismatch in matrix-vector product");
  IntVector y(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) y[i] += (*this)(i, k) * x[k];
  return y;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ',';
    os << to_string(m.row(r));
  }
  os << ']';
  return os.str();
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Replace rows (p, q) by the unimodular combination that leaves gcd(a, b) in
// row p and zero in row q at column c.
void combine_rows(IntMatrix& h, IntMatrix& u, std::size_t p, std::size_t q, std::size_t c) {
  const Int a = h(p, c);
  const Int b = h(q, c);
  auto [g, s, t] = extended_gcd(a, b);
  const Int a_g = a / g;
  const Int b_g = b / g;
  auto mix = [&](IntMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Int x = m(p, j);
      Int y = m(q, j);
      m(p, j) = s * x + t * y;
      m(q, j) = -b_g * x + a_g * y;
    }
  };
  mix(h);
  mix(u);
}

void subtract_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Int& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= k * m(source, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  if (m.rows() == 0) throw InvalidInput("hermite_normal_form: empty matrix");
  HermiteForm f{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = f.h;
  IntMatrix& u = f.u;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    for (std::size_t r = pivot_row + 1; r < h.rows(); ++r)
      if (h(r, c) != 0) combine_rows(h, u, pivot_row, r, c);
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) {
      for (std::size_t j = 0; j < h.cols(); ++j) h(pivot_row, j) = -h(pivot_row, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(pivot_row, j) = -u(pivot_row, j);
    }
    const Int pivot = h(pivot_row, c);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Int k = floor_div(h(r, c), pivot);
      if (k != 0) {
        subtract_row_multiple(h, r, pivot_row, k);
        subtract_row_multiple(u, r, pivot_row, k);
      }
    }
    ++pivot_row;
  }
  f.rank = pivot_row;
  return f;
}

std::size_t rank(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return hermite_normal_form(m).rank;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  if (n == 0) return IntMatrix(0, 0);
  HermiteForm f = hermite_normal_form(m.transposed());
  IntMatrix k(n - f.rank, n);
  for (std::size_t r = f.rank; r < n; ++r) k.set_row(r - f.rank, f.u.row(r));
  return k;
}

IntMatrix saturated_row_basis(const IntMatrix& m) {
  const std::size_t n = m.cols();
  IntMatrix orth = integer_kernel(m);
  if (orth.rows() == 0) return IntMatrix::identity(n);
  IntMatrix sat = integer_kernel(orth);
  if (sat.rows() == 0) return IntMatrix(0, n);
  // Canonical basis: the HNF of the saturated lattice.
  HermiteForm f = hermite_normal_form(sat);
  IntMatrix b(f.rank, n);
  for (std::size_t r = 0; r < f.rank; ++r) b.set_row(r, f.h.row(r));
  return b;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("unimodular_inverse: matrix not square");
  if (m.rows() == 0) return m;
  HermiteForm f = hermite_normal_form(m);
  if (f.h != IntMatrix::identity(m.rows()))
    throw InvalidInput("unimodular_inverse: matrix is not unimodular");
  return f.u;
}

std::vector<std::vector<Rat>> rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("rational_inverse: matrix not square");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvalidInput("rational_inverse: singular matrix");
    std::swap(a[p], a[c]);
    const Rat inv = Rat(1) / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rat k = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= k * a[c][j];
    }
  }
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------

LatticeBasis::LatticeBasis(const IntMatrix& generators, std::size_t ambient_dim)
    : ambient_(ambient_dim), basis_(0, ambient_dim) {
  if (generators.rows() == 0) return;
  if (generators.cols() != ambient_dim) throw InvalidInput("LatticeBasis: dimension mismatch");
  HermiteForm f = hermite_normal_form(generators);
  basis_ = IntMatrix(f.rank, ambient_dim);
  for (std::size_t r = 0; r < f.rank; ++r) {
    basis_.set_row(r, f.h.row(r));
    std::size_t c = 0;
    while (basis_(r, c) == 0) ++c;
    pivots_.push_back(c);
  }
}

std::optional<IntVector> LatticeBasis::coordinates(const IntVector& x) const {
  if (x.size() != ambient_) throw InvalidInput("LatticeBasis: dimension mismatch");
  IntVector residual = x;
  IntVector c(rank(), Int(0));
  for (std::size_t r = 0; r < rank(); ++r) {
    const Int& pivot = basis_(r, pivots_[r]);
    const Int& target = residual[pivots_[r]];
    if (target % pivot != 0) return std::nullopt;
    c[r] = target / pivot;
    if (c[r] != 0)
      for (std::size_t j = 0; j < ambient_; ++j) residual[j] -= c[r] * basis_(r, j);
  }
  if (!is_zero(residual)) return std::nullopt;
  return c;
}

IntVector LatticeBasis::combine(const IntVector& coords) const {
  if (coords.size() != rank()) throw InvalidInput("LatticeBasis: coordinate count mismatch");
  IntVector x(ambient_, Int(0));
  for (std::size_t r = 0; r < rank(); ++r)
    for (std::size_t j = 0; j < ambient_; ++j) x[j] += coords[r] * basis_(r, j);
  return x;
}

}  // namespace polycol
