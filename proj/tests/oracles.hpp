#pragma once

// Brute-force reference implementations on machine integers. They share no
// code with the library: facets come from vertex subsets, lattice points from
// a bounding-box scan, and column vectors from the raw quantifier definition.

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

struct Halfspace {
  Vec normal;        // primitive
  long long offset;  // normal . x >= offset on P
  bool operator<(const Halfspace& o) const { return std::tie(normal, offset) < std::tie(o.normal, o.offset); }
  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
};

inline long long dotp(const Vec& a, const Vec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec plus(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Vec minus(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Vec primitive(Vec v) {
  long long g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Facets of a full-dimensional polytope in dimension 1..3: every hyperplane
// through n affinely independent vertices with all vertices on one side and
// at least n vertices on it.
inline std::vector<Halfspace> facets(const std::vector<Vec>& vs) {
  const std::size_t n = vs.front().size();
  std::set<Halfspace> out;
  auto consider = [&](Vec normal) {
    bool zero = std::all_of(normal.begin(), normal.end(), [](long long x) { return x == 0; });
    if (zero) return;
    normal = primitive(normal);
    for (int sign : {1, -1}) {
      Vec nn = normal;
      for (auto& x : nn) x *= sign;
      long long lo = dotp(nn, vs.front());
      for (const auto& v : vs) lo = std::min(lo, dotp(nn, v));
      std::vector<Vec> on;
      for (const auto& v : vs)
        if (dotp(nn, v) == lo) on.push_back(v);
      if (on.size() >= n) out.insert({nn, lo});
    }
  };
  const std::size_t k = vs.size();
  if (n == 1) {
    consider({1});
  } else if (n == 2) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        Vec d = minus(vs[j], vs[i]);
        Vec normal{-d[1], d[0]};
        // only hyperplanes supporting the hull with vs[i] on them
        long long at = dotp(normal, vs[i]);
        bool above = true, below = true;
        for (const auto& v : vs) {
          above &= dotp(normal, v) >= at;
          below &= dotp(normal, v) <= at;
        }
        if (above || below) consider(normal);
      }
  } else if (n == 3) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) {
          Vec a = minus(vs[j], vs[i]), b = minus(vs[l], vs[i]);
          Vec normal{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
          long long at = dotp(normal, vs[i]);
          bool above = true, below = true;
          for (const auto& v : vs) {
            above &= dotp(normal, v) >= at;
            below &= dotp(normal, v) <= at;
          }
          if (above || below) consider(normal);
        }
  } else {
    throw std::invalid_argument("oracle facets: dimension 1..3 only");
  }
  return {out.begin(), out.end()};
}

inline bool inside(const std::vector<Halfspace>& hs, const Vec& x) {
  return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return dotp(h.normal, x) >= h.offset; });
}

inline std::vector<Vec> lattice_points(const std::vector<Vec>& vs) {
  const auto hs = facets(vs);
  const std::size_t n = vs.front().size();
  Vec lo = vs.front(), hi = vs.front();
  for (const auto& v : vs)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  std::vector<Vec> out;
  Vec x = lo;
  while (true) {
    if (inside(hs, x)) out.push_back(x);
    std::size_t i = 0;
    for (; i < n && x[i] == hi[i]; ++i) x[i] = lo[i];
    if (i == n) break;
    ++x[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Column {
  Vec v;
  Halfspace base;
  bool operator<(const Column& o) const { return std::tie(v, base) < std::tie(o.v, o.base); }
};

// Every (v, F) satisfying the definition, v ranging over all lattice differences.
inline std::vector<Column> columns(const std::vector<Vec>& vs) {
  const auto hs = facets(vs);
  const auto pts = lattice_points(vs);
  std::set<Vec> diffs;
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (a != b) diffs.insert(minus(a, b));
  std::vector<Column> out;
  for (const auto& v : diffs)
    for (const auto& f : hs) {
      bool ok = true;
      for (const auto& x : pts)
        if (dotp(f.normal, x) != f.offset && !inside(hs, plus(x, v))) {
          ok = false;
          break;
        }
      if (ok) out.push_back({v, f});
    }
  std::sort(out.begin(), out.end());
  return out;
}

// uv exists: u + v != 0 and no x in L_P off P_u has x + u in P_v.
inline bool product_exists(const std::vector<Vec>& vs, const Column& u, const Column& v) {
  Vec s = plus(u.v, v.v);
  if (std::all_of(s.begin(), s.end(), [](long long x) { return x == 0; })) return false;
  const auto hs = facets(vs);
  for (const auto& x : lattice_points(vs)) {
    if (dotp(u.base.normal, x) == u.base.offset) continue;
    Vec y = plus(x, u.v);
    if (inside(hs, y) && dotp(v.base.normal, y) == v.base.offset) return false;
  }
  return true;
}

// Integral-affine self-maps of a polygon whose lattice points span Z^2: fix
// a lattice basis triangle (o, p, q) and try every lattice triangle as its image.
inline std::size_t polygon_symmetry_count(const std::vector<Vec>& vs) {
  const auto pts = lattice_points(vs);
  const std::set<Vec> vset(vs.begin(), vs.end());
  auto det2 = [](const Vec& x, const Vec& y) { return x[0] * y[1] - x[1] * y[0]; };
  const Vec& o = pts.front();
  Vec p, q;
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (p.empty() && det2(minus(a, o), minus(b, o)) == 1) {
        p = a;
        q = b;
      }
  if (p.empty()) throw std::invalid_argument("oracle: lattice points do not span Z^2");
  // inverse of B = [p - o | q - o], det 1
  const Vec bp = minus(p, o), bq = minus(q, o);
  const long long inv[2][2] = {{bq[1], -bq[0]}, {-bp[1], bp[0]}};
  std::size_t count = 0;
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& c : pts) {
        const Vec ib = minus(b, a), ic = minus(c, a);
        if (std::abs(det2(ib, ic)) != 1) continue;
        // M = [ib | ic] * inv
        const long long m[2][2] = {{ib[0] * inv[0][0] + ic[0] * inv[1][0], ib[0] * inv[0][1] + ic[0] * inv[1][1]},
                                   {ib[1] * inv[0][0] + ic[1] * inv[1][0], ib[1] * inv[0][1] + ic[1] * inv[1][1]}};
        std::set<Vec> image;
        for (const auto& v : vs) {
          const Vec d = minus(v, o);
          image.insert({a[0] + m[0][0] * d[0] + m[0][1] * d[1], a[1] + m[1][0] * d[0] + m[1][1] * d[1]});
        }
        if (image == vset) ++count;
      }
  return count;
}

}  // namespace oracle
