#pragma once

#include "polycol/algebra.hpp"
#include "polycol/columns.hpp"
#include "polycol/doubling.hpp"
#include "polycol/polytope.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polycol {

// ---- polytope JSON: {"name": <string, optional>, "vertices": [[int, ...], ...]}

Polytope polytope_from_json(const nlohmann::json& j);
// Parse errors (syntax or schema) raise InvalidInput.
Polytope parse_polytope(const std::string& text);
nlohmann::json polytope_to_json(const Polytope& p);

// ---- group shapes attached to the six polygon classes

struct GroupShape {
  std::string label;        // "E_a" .. "E_f", or "E_d,t" with t filled in
  std::string description;  // block matrix over E(R)
};

// t only matters for class d.
GroupShape group_shape(char polygon_class, std::size_t t = 0);

// ---- analysis report

struct FacetRow {
  IntVector normal;
  Int offset;
  bool operator==(const FacetRow&) const = default;
};

struct ColumnRow {
  IntVector vector;
  std::size_t base_facet = 0;
  bool operator==(const ColumnRow&) const = default;
};

struct BalanceRow {
  std::size_t u = 0;
  std::size_t v = 0;
  Int value;
  bool operator==(const BalanceRow&) const = default;
};

struct DivisibilityRow {
  std::string clause;
  std::vector<std::size_t> columns;
  std::string description;
  bool operator==(const DivisibilityRow&) const = default;
};

struct AnalysisReport {
  std::string name;
  std::vector<IntVector> vertices;  // canonical (lexicographic) input vertices
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  // False when facets and columns are expressed in the coordinates of the
  // lattice generated by L_P rather than the input coordinates.
  bool input_coordinates = true;
  std::size_t lattice_points = 0;
  std::vector<FacetRow> facets;
  std::vector<ColumnRow> columns;
  std::vector<std::array<std::size_t, 3>> products;  // (u, v, uv) column indices
  bool balanced = true;
  std::optional<BalanceRow> balance_witness;
  std::optional<bool> col_divisible;  // only for balanced polytopes
  std::optional<DivisibilityRow> divisibility_witness;
  std::optional<std::string> polygon_class;  // balanced polygons only
  bool empty_columns = false;
  std::size_t sigma_order = 0;
  std::size_t sigma_inv_order = 0;
  std::optional<GroupShape> group_shape;
  std::size_t col_plus_n_plus_1 = 0;

  bool operator==(const AnalysisReport& other) const;
};

AnalysisReport analyze(const Polytope& p, ColumnSearch mode = ColumnSearch::pruned);
nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

// The structure a report is computed on: p itself when normalized, else its normalization.
Polytope analysis_polytope(const Polytope& p);

// ---- verification reports

struct VerifyOptions {
  std::size_t max_degree = 3;
  ColumnSearch mode = ColumnSearch::pruned;
};

struct VerifyOutcome {
  nlohmann::json report;
  bool passed = true;
};

// which: steinberg | afemb | heights | columns-property | doubling.
// Precondition failures are reported inside the JSON with passed = false.
VerifyOutcome run_verify(const Polytope& p, const std::string& which, const VerifyOptions& options = {});

nlohmann::json normal_fan_json(const Polytope& p);

// ---- exhaustive polygon scan

struct ScanOptions {
  int box = 3;             // coordinates 0..box
  std::uint64_t seed = 1;  // soundness sample
  unsigned threads = 0;    // 0 = hardware concurrency
  double sample_rate = 0.01;
};

struct ScanClassRecord {
  std::vector<IntVector> representative;  // first polygon of the class in enumeration order
  std::size_t lattice_points = 0;
  bool balanced = false;
  std::optional<char> polygon_class;
  bool col_divisible = false;
  std::string failure;  // classifier or divisibility failure, empty if none
};

struct ScanSummary {
  int box = 0;
  std::size_t polygons = 0;  // convex lattice polygons (vertex sets) in the box
  std::vector<ScanClassRecord> classes;  // one per integral-affine class, enumeration order
  std::size_t balanced = 0;
  std::size_t unclassified = 0;
  std::size_t not_col_divisible = 0;
  std::array<std::size_t, 6> per_class{};
  std::array<std::optional<std::size_t>, 6> witness{};  // index into classes
  std::uint64_t seed = 0;
  std::vector<std::size_t> sample;  // indices into classes rechecked with the literal search
  std::size_t sample_mismatches = 0;

  bool ok() const { return unclassified == 0 && not_col_divisible == 0 && sample_mismatches == 0; }
  nlohmann::json to_json() const;
};

using CyclicPolygon = std::vector<std::array<std::int64_t, 2>>;

// Canonical form of a convex polygon (vertices in cyclic order) under GL_2(Z)
// and translations.
std::vector<std::int64_t> polygon_normal_form(const CyclicPolygon& cyclic);

// Visits every convex lattice polygon with vertices in [0, box]^2 exactly once,
// as a counterclockwise vertex list starting at its lowest-then-leftmost vertex.
void for_each_box_polygon(int box, const std::function<void(const CyclicPolygon&)>& visit);

ScanSummary scan_polygons(const ScanOptions& options);

}  // namespace polycol
