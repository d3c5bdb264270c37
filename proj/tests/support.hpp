#pragma once

#include "oracles.hpp"
#include "polycol/polytope.hpp"
#include "polycol/reports.hpp"

#include <random>
#include <vector>

namespace support {

inline oracle::Vec to_vec(const polycol::IntVector& v) {
  oracle::Vec out;
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

inline polycol::IntVector to_int(const oracle::Vec& v) {
  polycol::IntVector out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

inline std::vector<oracle::Vec> vertices_of(const polycol::Polytope& p) {
  std::vector<oracle::Vec> out;
  for (const auto& v : p.vertices()) out.push_back(to_vec(v));
  return out;
}

// Full-dimensional, normalized hull of a few random points in [0, side]^dim.
inline polycol::Polytope random_polytope(std::mt19937_64& rng, std::size_t dim, int side = 3) {
  std::uniform_int_distribution<int> coord(0, side);
  std::uniform_int_distribution<int> count(static_cast<int>(dim) + 1, static_cast<int>(dim) + 4);
  while (true) {
    std::vector<polycol::IntVector> pts;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      polycol::IntVector x;
      for (std::size_t j = 0; j < dim; ++j) x.emplace_back(coord(rng));
      pts.push_back(x);
    }
    auto p = polycol::Polytope::from_points(pts, "random");
    if (p.is_full_dimensional()) return polycol::analysis_polytope(p);
  }
}

}  // namespace support
