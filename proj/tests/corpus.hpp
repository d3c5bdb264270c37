#pragma once

#include "polycol/polytope.hpp"

#include <vector>

namespace corpus {

using polycol::make_vector;
using polycol::Polytope;

inline Polytope simplex(std::size_t n, long long k = 1) {
  std::vector<polycol::IntVector> pts{polycol::IntVector(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    polycol::IntVector e(n, 0);
    e[i] = k;
    pts.push_back(e);
  }
  return Polytope::from_points(pts, "simplex");
}

inline Polytope unit_square() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1})},
                               "square");
}

inline Polytope trapezoid() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 1})},
                               "trapezoid");
}

// Four column vectors, two products.
inline Polytope two_products() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({3, 0}), make_vector({3, 2}), make_vector({2, 2})},
                               "two-products");
}

inline Polytope hexagon() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({5, 0}), make_vector({5, 2}), make_vector({4, 3}),
                                make_vector({2, 3}), make_vector({1, 2})},
                               "hexagon");
}

inline Polytope pyramid() {
  return Polytope::from_points({make_vector({0, 0, 0}), make_vector({1, 0, 0}), make_vector({0, 1, 0}),
                                make_vector({1, 1, 0}), make_vector({0, 0, 1})},
                               "pyramid");
}

inline Polytope slim_triangle() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({3, 0}), make_vector({0, 1})}, "slim-triangle");
}

// Three column vectors sharing the bottom edge as base.
inline Polytope same_base() {
  return Polytope::from_points({make_vector({0, 0}), make_vector({10, 0}), make_vector({9, 1}), make_vector({6, 2}),
                                make_vector({4, 2}), make_vector({1, 1})},
                               "same-base");
}

inline std::vector<Polytope> all() {
  return {simplex(1), simplex(2), simplex(2, 2), simplex(3), unit_square(), trapezoid(), two_products(),
          hexagon(), pyramid(), slim_triangle(), same_base()};
}

}  // namespace corpus
