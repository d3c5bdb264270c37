#include "polycol/doubling.hpp"

#include "polycol/error.hpp"
#include "polycol/json_util.hpp"

#include <deque>
#include <limits>

namespace polycol {

namespace {

AffineLatticeMap base_embedding(std::size_t n) {
  IntMatrix m(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return AffineLatticeMap(m, IntVector(n + 1, 0));
}

// psi(x) = (x - (<F,x> - b) w, <F,x> - b)
AffineLatticeMap copy_embedding(const FacetForm& f, const IntVector& w) {
  const std::size_t n = w.size();
  IntMatrix m(n + 1, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1 : 0) - w[i] * f.normal[j];
  for (std::size_t j = 0; j < n; ++j) m(n, j) = f.normal[j];
  IntVector t(n + 1);
  for (std::size_t i = 0; i < n; ++i) t[i] = w[i] * f.offset;
  t[n] = -f.offset;
  return AffineLatticeMap(m, t);
}

}  // namespace

DoublingResult double_along_facet(const Polytope& p, std::size_t facet, const std::optional<IntVector>& section) {
  if (!p.is_full_dimensional() || p.dim() < 1 || !is_normalized(p))
    throw PreconditionError("doubling: polytope must be normalized and full-dimensional");
  const auto& facets = p.facets();
  if (facet >= facets.size()) throw PreconditionError("doubling: facet index out of range");
  const FacetForm& f = facets[facet];
  const std::size_t n = p.ambient_dim();

  IntVector w = section ? *section : integral_section(f.normal);
  if (w.size() != n || dot(f.normal, w) != 1)
    throw InvalidInput("doubling: section must pair to 1 with the facet normal");

  AffineLatticeMap base = base_embedding(n);
  AffineLatticeMap copy = copy_embedding(f, w);
  std::vector<IntVector> pts;
  for (const auto& v : p.vertices()) {
    pts.push_back(base.apply(v));
    pts.push_back(copy.apply(v));
  }
  Polytope doubled = Polytope::from_points(pts, p.name().empty() ? std::string() : p.name() + "^2");

  // Lattice points of the hull lying in neither copy of P.
  std::vector<IntVector> extra;
  for (const auto& y : doubled.lattice_points()) {
    bool in_base = y[n] == 0;
    bool in_copy = false;
    if (!in_base) {
      IntVector x(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
      x = add(x, scaled(w, y[n]));
      in_copy = p.lattice_index(x).has_value() && copy.apply(x) == y;
    }
    if (!in_base && !in_copy) extra.push_back(y);
  }
  if (doubled.lattice_points().size() != 2 * p.lattice_points().size() - f.on_facet.size() + extra.size())
    throw InvariantViolation("doubling: lattice points of the two copies are miscounted");

  IntVector last(n + 1, 0);
  last[n] = 1;
  bool base_is_facet = false;
  for (const auto& g : doubled.facets()) base_is_facet |= (g.normal == last && g.offset == 0);
  if (!base_is_facet) throw InvariantViolation("doubling: P x 0 is not a facet of the doubled polytope");

  return DoublingResult{p, doubled, base, copy, facet, w, std::move(extra)};
}

DoublingResult double_along_facet(const Polytope& p, const FacetForm& facet, const std::optional<IntVector>& section) {
  auto i = p.facet_index(facet);
  if (!i) throw PreconditionError("doubling: facet form does not belong to this polytope");
  return double_along_facet(p, *i, section);
}

IntVector fold(const DoublingResult& r, const IntVector& y) {
  const std::size_t n = r.base.ambient_dim();
  if (y.size() != n + 1) throw InvalidInput("fold: dimension mismatch");
  IntVector x(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  return add(x, scaled(r.section, y[n]));
}

std::vector<std::size_t> extend_columns(const DoublingResult& r, const ColumnStructure& source,
                                        const ColumnStructure& target) {
  if (!(source.polytope() == r.base) || !(target.polytope() == r.doubled))
    throw PreconditionError("extend_columns: column structures do not match the doubling");
  const auto& pts = r.base.lattice_points();
  const auto& tfacets = target.polytope().facets();

  // The base facet of c meets copy `e` of P exactly in e(P_v).
  auto base_matches = [&](std::size_t c, std::size_t v, const AffineLatticeMap& e) {
    const FacetForm& g = tfacets[target[c].base_facet];
    const FacetForm& fv = source.base_facet(v);
    for (const auto& x : pts) {
      bool on_image = g.evaluate(e.apply(x)) == g.offset;
      bool on_base = fv.evaluate(x) == fv.offset;
      if (on_image != on_base) return false;
    }
    return true;
  };
  auto extends = [&](std::size_t c, std::size_t v) {
    return fold(r, target[c].v) == source[v].v &&
           (base_matches(c, v, r.embed_base) || base_matches(c, v, r.embed_copy));
  };

  std::vector<std::size_t> image;
  std::set<std::size_t> used;
  for (std::size_t v = 0; v < source.size(); ++v) {
    std::optional<std::size_t> found;
    for (const IntVector& cand : {r.embed_base.apply_linear(source[v].v), r.embed_copy.apply_linear(source[v].v)}) {
      auto c = target.index_of(cand);
      if (c && extends(*c, v)) {
        found = c;
        break;
      }
    }
    if (!found) {
      for (std::size_t c = 0; c < target.size(); ++c) {
        if (!extends(c, v)) continue;
        if (found)
          throw AmbiguousExtension("extend_columns: " + to_string(source[v].v) + " extends to both " +
                                   to_string(target[*found].v) + " and " + to_string(target[c].v));
        found = c;
      }
    }
    if (!found) throw NoExtension("extend_columns: no image for " + to_string(source[v].v));
    if (!used.insert(*found).second)
      throw InvariantViolation("extend_columns: two vectors share the image " + to_string(target[*found].v));
    image.push_back(*found);
  }
  return image;
}

long long DoublingSpectrum::worst_slack() const {
  long long worst = std::numeric_limits<long long>::min();
  for (const auto& e : ledger) {
    if (!e.decomposed_step) continue;
    long long slack = static_cast<long long>(*e.decomposed_step) - static_cast<long long>(e.enqueued_step) -
                      static_cast<long long>(e.position);
    worst = std::max(worst, slack);
  }
  return worst == std::numeric_limits<long long>::min() ? 0 : worst;
}

std::string DoublingSpectrum::to_json() const {
  nlohmann::json out;
  auto polytope_json = [](const Polytope& p) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : p.vertices()) vs.push_back(vector_to_json(v));
    return vs;
  };
  out["start"] = polytope_json(start);
  out["steps"] = nlohmann::json::array();
  for (const auto& s : steps) {
    out["steps"].push_back({{"step", s.step},
                            {"chosen_id", s.chosen_id},
                            {"chosen", vector_to_json(s.chosen)},
                            {"facet", s.facet},
                            {"dim", s.result.dim()},
                            {"lattice_points", s.result.lattice_points().size()},
                            {"vertices", polytope_json(s.result)},
                            {"queue", s.queue}});
  }
  out["ledger"] = nlohmann::json::array();
  for (const auto& e : ledger) {
    nlohmann::json row{{"id", e.id}, {"enqueued_step", e.enqueued_step}, {"position", e.position}};
    row["decomposed_step"] = e.decomposed_step ? nlohmann::json(*e.decomposed_step) : nlohmann::json(nullptr);
    out["ledger"].push_back(row);
  }
  out["worst_slack"] = worst_slack();
  return out.dump(2);
}

DoublingSpectrum doubling_spectrum(const Polytope& p, std::size_t steps) {
  if (steps < 1) throw InvalidInput("doubling_spectrum: steps must be >= 1");
  ColumnStructure cs(p);
  if (cs.size() == 0) throw PreconditionError("doubling_spectrum: polytope has no column vectors");

  DoublingSpectrum out{p, {}, {}, {}};
  std::vector<std::size_t> id_of(cs.size());  // column index in current polytope -> id
  std::deque<std::size_t> queue;               // ids
  std::map<std::size_t, std::size_t> open;     // id -> ledger row awaiting decomposition
  std::size_t next_id = 0;

  auto enqueue = [&](std::size_t id, std::size_t step) {
    queue.push_back(id);
    open[id] = out.ledger.size();
    out.ledger.push_back({id, step, queue.size(), std::nullopt});
  };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    id_of[i] = next_id++;
    enqueue(id_of[i], 0);
  }

  for (std::size_t step = 1; step <= steps; ++step) {
    const std::size_t id = queue.front();
    queue.pop_front();
    std::size_t col = 0;
    while (id_of[col] != id) ++col;
    out.ledger[open.at(id)].decomposed_step = step;
    open.erase(id);

    DoublingResult r = double_along_facet(cs.polytope(), cs[col].base_facet);
    ColumnStructure next(r.doubled);
    std::vector<std::size_t> image = extend_columns(r, cs, next);

    std::vector<std::size_t> next_ids(next.size(), SIZE_MAX);
    for (std::size_t i = 0; i < image.size(); ++i) next_ids[image[i]] = id_of[i];
    enqueue(id, step);
    for (std::size_t c = 0; c < next.size(); ++c) {
      if (next_ids[c] != SIZE_MAX) continue;
      next_ids[c] = next_id++;
      enqueue(next_ids[c], step);
    }

    out.steps.push_back({step, id, cs[col].v, cs[col].base_facet, r.doubled, {queue.begin(), queue.end()}});
    cs = std::move(next);
    id_of = std::move(next_ids);
  }
  for (std::size_t c = 0; c < cs.size(); ++c) out.current_vectors[id_of[c]] = cs[c].v;
  return out;
}

}  // namespace polycol
