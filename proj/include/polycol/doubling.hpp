#pragma once

#include "polycol/columns.hpp"
#include "polycol/error.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycol {

struct DoublingResult {
  Polytope base;               // P in Z^n
  Polytope doubled;            // conv(P x 0, psi(P)) in Z^{n+1}
  AffineLatticeMap embed_base; // x -> (x, 0)
  AffineLatticeMap embed_copy; // psi(x) = (x - ht(x) w, ht(x))
  std::size_t facet = 0;       // index into base.facets()
  IntVector section;           // w with <F, w> = 1
  // Lattice points of the doubled polytope outside both copies. Empty exactly
  // when |L| = 2|L_P| - |L_F|.
  std::vector<IntVector> extra_lattice_points;
};

// Requires a normalized full-dimensional p and a facet of p. The section
// defaults to integral_section(normal); a supplied one must pair to 1 with
// the facet normal.
DoublingResult double_along_facet(const Polytope& p, std::size_t facet,
                                  const std::optional<IntVector>& section = std::nullopt);
DoublingResult double_along_facet(const Polytope& p, const FacetForm& facet,
                                  const std::optional<IntVector>& section = std::nullopt);

// Folding map Z^{n+1} -> Z^n, (x, t) -> x + t w: left inverse of both embeddings.
IntVector fold(const DoublingResult& r, const IntVector& y);

struct NoExtension : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};
struct AmbiguousExtension : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// Image of Col(P) in Col(P doubled): result[i] indexes into `target`. A
// vector c of the doubled polytope extends v when it folds onto v and its
// base facet meets one of the two copies of P exactly in the image of P_v.
// The candidates (v, 0) and psi_linear(v) are tried first.
std::vector<std::size_t> extend_columns(const DoublingResult& r, const ColumnStructure& source,
                                        const ColumnStructure& target);

struct SpectrumLedgerEntry {
  std::size_t id = 0;
  std::size_t enqueued_step = 0;  // 0 for the initial queue
  std::size_t position = 0;       // 1-based queue position right after enqueueing
  std::optional<std::size_t> decomposed_step;
};

struct SpectrumStep {
  std::size_t step = 0;              // 1-based
  std::size_t chosen_id = 0;
  IntVector chosen;                  // the vector in Col(P_{step-1})
  std::size_t facet = 0;             // its base facet in P_{step-1}
  Polytope result;                   // P_step
  std::vector<std::size_t> queue;    // ids pending after this step
};

struct DoublingSpectrum {
  Polytope start;
  std::vector<SpectrumStep> steps;
  std::vector<SpectrumLedgerEntry> ledger;
  // id -> vector in the last polytope of the spectrum
  std::map<std::size_t, IntVector> current_vectors;

  // Largest (decomposed_step - enqueued_step - position); <= 0 means every
  // decomposed vector waited at most its enqueue-time queue length.
  long long worst_slack() const;
  std::string to_json() const;
};

// FIFO schedule. A decomposed vector stays in Col of every later polytope, so
// it is enqueued again; vectors first appearing in a step are enqueued in
// canonical order after it.
DoublingSpectrum doubling_spectrum(const Polytope& p, std::size_t steps);

}  // namespace polycol
