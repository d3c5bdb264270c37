#include "polycol/reports.hpp"

#include "polycol/error.hpp"
#include "polycol/json_util.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace polycol {

using nlohmann::json;

// ---- polytope JSON

Polytope polytope_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("polytope JSON must be an object");
  if (!j.contains("vertices") || !j.at("vertices").is_array() || j.at("vertices").empty())
    throw InvalidInput("polytope JSON needs a nonempty \"vertices\" array");
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InvalidInput("\"name\" must be a string");
    name = j.at("name").get<std::string>();
  }
  std::vector<IntVector> pts;
  for (const auto& v : j.at("vertices")) pts.push_back(vector_from_json(v));
  return Polytope::from_points(pts, name);
}

Polytope parse_polytope(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return polytope_from_json(j);
}

json polytope_to_json(const Polytope& p) {
  json out;
  if (!p.name().empty()) out["name"] = p.name();
  out["vertices"] = json::array();
  for (const auto& v : p.vertices()) out["vertices"].push_back(vector_to_json(v));
  return out;
}

// ---- group shapes

GroupShape group_shape(char polygon_class, std::size_t t) {
  const std::string e = "E(R)", end = "End_R(R^(N))", hom = "Hom_R(R^(N),R)";
  const std::string affine = "[[" + e + ", " + hom + "], [0, 1]]";
  switch (polygon_class) {
    case 'a':
      return {"E_a", e};
    case 'b':
      return {"E_b", "[[" + e + ", " + end + "], [0, " + e + "]]"};
    case 'c':
      return {"E_c", "[[" + e + ", " + end + ", " + hom + "], [0, " + e + ", " + hom + "], [0, 0, 1]]"};
    case 'd': {
      const std::string ts = std::to_string(t);
      return {"E_d," + ts, "[[" + e + ", Hom_R(R^(N),R^" + ts + ")], [0, Id_" + ts + "]]"};
    }
    case 'e':
      return {"E_e", e + " x " + e};
    case 'f':
      return {"E_f", affine + " x " + affine};
    default:
      throw InvalidInput(std::string("unknown polygon class '") + polygon_class + "'");
  }
}

// ---- analysis

Polytope analysis_polytope(const Polytope& p) {
  if (p.dim() < 1) throw PreconditionError("analysis: polytope must have positive dimension");
  if (is_normalized(p)) return p;
  return normalize_full_dim(p).polytope;
}

bool AnalysisReport::operator==(const AnalysisReport& o) const {
  auto shape = [](const std::optional<GroupShape>& g) {
    return g ? std::optional<std::pair<std::string, std::string>>({g->label, g->description}) : std::nullopt;
  };
  return name == o.name && vertices == o.vertices && ambient_dim == o.ambient_dim && dim == o.dim &&
         input_coordinates == o.input_coordinates && lattice_points == o.lattice_points && facets == o.facets &&
         columns == o.columns && products == o.products && balanced == o.balanced &&
         balance_witness == o.balance_witness && col_divisible == o.col_divisible &&
         divisibility_witness == o.divisibility_witness && polygon_class == o.polygon_class &&
         empty_columns == o.empty_columns && sigma_order == o.sigma_order && sigma_inv_order == o.sigma_inv_order &&
         shape(group_shape) == shape(o.group_shape) && col_plus_n_plus_1 == o.col_plus_n_plus_1;
}

AnalysisReport analyze(const Polytope& p, ColumnSearch mode) {
  const Polytope q = analysis_polytope(p);
  const ColumnStructure cs(q, mode);

  AnalysisReport r;
  r.name = p.name();
  r.vertices = p.vertices();
  r.ambient_dim = p.ambient_dim();
  r.dim = p.dim();
  r.input_coordinates = q.vertices() == p.vertices();
  r.lattice_points = p.lattice_points().size();
  for (const auto& f : q.facets()) r.facets.push_back({f.normal, f.offset});
  for (const auto& c : cs.columns()) r.columns.push_back({c.v, c.base_facet});
  r.products = cs.product_triples();

  const BalanceResult bal = is_balanced(cs);
  r.balanced = bal.balanced;
  if (bal.witness) r.balance_witness = BalanceRow{bal.witness->u, bal.witness->v, bal.witness->value};
  if (r.balanced) {
    const DivisibilityResult div = is_col_divisible(cs);
    r.col_divisible = div.divisible;
    if (div.witness) r.divisibility_witness = DivisibilityRow{div.witness->clause, div.witness->columns,
                                                              div.witness->description};
    if (q.dim() == 2) {
      const PolygonClass cls = classify_balanced_polygon(cs);
      r.polygon_class = std::string(1, cls.label);
      r.empty_columns = cls.empty_columns;
      r.group_shape = group_shape(cls.label, cs.size());
    }
  }
  r.sigma_order = sigma_permutations(q).size();
  r.sigma_inv_order = inversion_subgroup(cs).subgroup.size();
  r.col_plus_n_plus_1 = reported_group_dimension(cs);
  return r;
}

namespace {

json vectors_to_json(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(v));
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("report JSON: missing \"") + key + "\"");
  return j.at(key).get<T>();
}

}  // namespace

json report_to_json(const AnalysisReport& r) {
  json out;
  out["name"] = r.name;
  out["vertices"] = vectors_to_json(r.vertices);
  out["ambient_dim"] = r.ambient_dim;
  out["dim"] = r.dim;
  out["input_coordinates"] = r.input_coordinates;
  out["lattice_points"] = r.lattice_points;
  out["facets"] = json::array();
  for (const auto& f : r.facets) out["facets"].push_back({{"normal", vector_to_json(f.normal)}, {"offset", int_to_json(f.offset)}});
  out["columns"] = json::array();
  for (const auto& c : r.columns)
    out["columns"].push_back({{"vector", vector_to_json(c.vector)}, {"base_facet", c.base_facet}});
  out["products"] = r.products;
  out["balanced"] = r.balanced;
  out["balance_witness"] = r.balance_witness ? json{{"u", r.balance_witness->u},
                                                    {"v", r.balance_witness->v},
                                                    {"value", int_to_json(r.balance_witness->value)}}
                                             : json(nullptr);
  out["col_divisible"] = r.col_divisible ? json(*r.col_divisible) : json(nullptr);
  out["divisibility_witness"] = r.divisibility_witness ? json{{"clause", r.divisibility_witness->clause},
                                                              {"columns", r.divisibility_witness->columns},
                                                              {"description", r.divisibility_witness->description}}
                                                       : json(nullptr);
  out["polygon_class"] = r.polygon_class ? json(*r.polygon_class) : json(nullptr);
  out["empty_columns"] = r.empty_columns;
  out["sigma_order"] = r.sigma_order;
  out["sigma_inv_order"] = r.sigma_inv_order;
  out["group_shape"] = r.group_shape ? json{{"label", r.group_shape->label}, {"description", r.group_shape->description}}
                                     : json(nullptr);
  out["col_plus_n_plus_1"] = r.col_plus_n_plus_1;
  return out;
}

AnalysisReport report_from_json(const json& j) {
  try {
    AnalysisReport r;
    r.name = field<std::string>(j, "name");
    for (const auto& v : j.at("vertices")) r.vertices.push_back(vector_from_json(v));
    r.ambient_dim = field<std::size_t>(j, "ambient_dim");
    r.dim = field<std::size_t>(j, "dim");
    r.input_coordinates = field<bool>(j, "input_coordinates");
    r.lattice_points = field<std::size_t>(j, "lattice_points");
    for (const auto& f : j.at("facets")) r.facets.push_back({vector_from_json(f.at("normal")), int_from_json(f.at("offset"))});
    for (const auto& c : j.at("columns"))
      r.columns.push_back({vector_from_json(c.at("vector")), c.at("base_facet").get<std::size_t>()});
    r.products = j.at("products").get<std::vector<std::array<std::size_t, 3>>>();
    r.balanced = field<bool>(j, "balanced");
    if (const auto& w = j.at("balance_witness"); !w.is_null())
      r.balance_witness = BalanceRow{w.at("u").get<std::size_t>(), w.at("v").get<std::size_t>(), int_from_json(w.at("value"))};
    if (const auto& c = j.at("col_divisible"); !c.is_null()) r.col_divisible = c.get<bool>();
    if (const auto& w = j.at("divisibility_witness"); !w.is_null())
      r.divisibility_witness = DivisibilityRow{w.at("clause").get<std::string>(),
                                               w.at("columns").get<std::vector<std::size_t>>(),
                                               w.at("description").get<std::string>()};
    if (const auto& c = j.at("polygon_class"); !c.is_null()) r.polygon_class = c.get<std::string>();
    r.empty_columns = field<bool>(j, "empty_columns");
    r.sigma_order = field<std::size_t>(j, "sigma_order");
    r.sigma_inv_order = field<std::size_t>(j, "sigma_inv_order");
    if (const auto& g = j.at("group_shape"); !g.is_null())
      r.group_shape = GroupShape{g.at("label").get<std::string>(), g.at("description").get<std::string>()};
    r.col_plus_n_plus_1 = field<std::size_t>(j, "col_plus_n_plus_1");
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report JSON: ") + e.what());
  }
}

// ---- verification

namespace {

VerifyOutcome verify_steinberg(const ColumnStructure& cs) {
  VerifyOutcome out;
  json& r = out.report;
  if (!is_balanced(cs).balanced) {
    r["precondition"] = "polytope is not balanced";
    out.passed = false;
    return out;
  }
  const SteinbergReport s = verify_steinberg_relations(cs);
  r["additivity"] = json::array();
  for (const auto& [c, ok] : s.additivity)
    r["additivity"].push_back({{"column", c}, {"vector", vector_to_json(cs[c].v)}, {"passed", ok}});
  r["pairs"] = json::array();
  for (const auto& pr : s.pairs) {
    json row{{"u", pr.u}, {"v", pr.v}, {"status", pr.status}, {"passed", pr.passed}};
    if (!pr.observed.empty()) row["observed"] = pr.observed;
    r["pairs"].push_back(row);
  }
  out.passed = s.all_passed();
  return out;
}

VerifyOutcome verify_afemb_all(const ColumnStructure& cs) {
  VerifyOutcome out;
  out.report["facets"] = json::array();
  for (std::size_t f = 0; f < cs.polytope().facets().size(); ++f) {
    const AfembReport a = verify_afemb(cs, f);
    out.report["facets"].push_back({{"facet", f},
                                    {"columns", a.columns},
                                    {"vacuous", a.vacuous},
                                    {"commute", a.commute},
                                    {"homomorphism", a.homomorphism},
                                    {"grid_points", a.grid_points},
                                    {"distinct_matrices", a.distinct_matrices},
                                    {"passed", a.passed()}});
    out.passed = out.passed && a.passed();
  }
  return out;
}

VerifyOutcome verify_heights(const ColumnStructure& cs) {
  VerifyOutcome out;
  const Polytope& q = cs.polytope();
  out.report["columns"] = json::array();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    const Int h = cs.height(c, cs[c].v, 0);
    const bool def = satisfies_column_definition(q, cs[c].v, cs[c].base_facet);
    out.report["columns"].push_back(
        {{"vector", vector_to_json(cs[c].v)}, {"base_facet", cs[c].base_facet}, {"height", int_to_json(h)}, {"definition", def}});
    out.passed = out.passed && h == -1 && def;
  }
  const bool agree = column_vectors(q, ColumnSearch::pruned) == column_vectors(q, ColumnSearch::literal);
  out.report["pruned_equals_literal"] = agree;
  out.passed = out.passed && agree;
  return out;
}

VerifyOutcome verify_columns_property(const ColumnStructure& cs, std::size_t max_degree) {
  VerifyOutcome out;
  out.report["max_degree"] = max_degree;
  out.report["columns"] = json::array();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    const auto res = columns_property_check(cs.polytope(), cs[c].v, cs[c].base_facet, max_degree);
    json row{{"vector", vector_to_json(cs[c].v)}, {"holds", res.holds}, {"checked", res.checked}};
    row["counterexample"] = res.counterexample ? json{{"z", vector_to_json(res.counterexample->first)},
                                                      {"degree", res.counterexample->second}}
                                               : json(nullptr);
    out.report["columns"].push_back(row);
    out.passed = out.passed && res.holds;
  }
  return out;
}

VerifyOutcome verify_doubling(const ColumnStructure& cs) {
  VerifyOutcome out;
  const Polytope& q = cs.polytope();
  const bool simplex = is_unimodular_simplex(q);
  out.report["facets"] = json::array();
  for (std::size_t f = 0; f < q.facets().size(); ++f) {
    const DoublingResult r = double_along_facet(q, f);
    bool left_inverse = true;
    for (const auto& x : q.lattice_points())
      left_inverse = left_inverse && fold(r, r.embed_base.apply(x)) == x && fold(r, r.embed_copy.apply(x)) == x;
    std::string extension = "ok";
    try {
      extend_columns(r, cs, ColumnStructure(r.doubled));
    } catch (const InvariantViolation& e) {
      extension = e.what();
    }
    const bool doubled_simplex = is_unimodular_simplex(r.doubled);
    const bool ok = left_inverse && extension == "ok" && (!simplex || doubled_simplex);
    out.report["facets"].push_back({{"facet", f},
                                    {"normal", vector_to_json(q.facets()[f].normal)},
                                    {"doubled", polytope_to_json(r.doubled)},
                                    {"dim", r.doubled.dim()},
                                    {"lattice_points", r.doubled.lattice_points().size()},
                                    {"extra_lattice_points", vectors_to_json(r.extra_lattice_points)},
                                    {"unimodular_simplex", doubled_simplex},
                                    {"fold_left_inverse", left_inverse},
                                    {"column_extension", extension},
                                    {"passed", ok}});
    out.passed = out.passed && ok;
  }
  return out;
}

}  // namespace

VerifyOutcome run_verify(const Polytope& p, const std::string& which, const VerifyOptions& options) {
  static const std::set<std::string> known{"steinberg", "afemb", "heights", "columns-property", "doubling"};
  if (!known.count(which)) throw InvalidInput("verify: unknown check '" + which + "'");
  const Polytope q = analysis_polytope(p);
  const ColumnStructure cs(q, options.mode);

  VerifyOutcome out;
  try {
    if (which == "steinberg")
      out = verify_steinberg(cs);
    else if (which == "afemb")
      out = verify_afemb_all(cs);
    else if (which == "heights")
      out = verify_heights(cs);
    else if (which == "columns-property")
      out = verify_columns_property(cs, options.max_degree);
    else
      out = verify_doubling(cs);
  } catch (const PreconditionError& e) {
    out.report = json::object();
    out.report["precondition"] = e.what();
    out.passed = false;
  }
  out.report["check"] = which;
  out.report["polytope"] = polytope_to_json(p);
  out.report["passed"] = out.passed;
  return out;
}

json normal_fan_json(const Polytope& p) {
  const NormalFan fan = normal_fan(p);
  json out;
  out["cones"] = json::array();
  for (const auto& c : fan.cones)
    out["cones"].push_back({{"vertex", vector_to_json(c.vertex)}, {"generators", vectors_to_json(c.generators)}});
  return out;
}

// ---- polygon scan

namespace {

using Point = std::array<std::int64_t, 2>;

std::int64_t cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Row Hermite normal form of a 2 x m integer matrix of full row rank.
void hermite_2xm(std::vector<std::int64_t>& a, std::vector<std::int64_t>& b) {
  const std::size_t m = a.size();
  std::size_t p1 = 0;
  while (p1 < m && a[p1] == 0 && b[p1] == 0) ++p1;
  while (b[p1] != 0) {
    const std::int64_t q = a[p1] / b[p1];
    for (std::size_t j = 0; j < m; ++j) a[j] -= q * b[j];
    std::swap(a, b);
  }
  if (a[p1] < 0)
    for (auto& x : a) x = -x;
  std::size_t p2 = p1 + 1;
  while (p2 < m && b[p2] == 0) ++p2;
  if (p2 == m) throw InvariantViolation("polygon_normal_form: degenerate polygon");
  if (b[p2] < 0)
    for (auto& x : b) x = -x;
  std::int64_t q = a[p2] / b[p2];
  if (a[p2] - q * b[p2] < 0) --q;
  for (std::size_t j = 0; j < m; ++j) a[j] -= q * b[j];
}

}  // namespace

std::vector<std::int64_t> polygon_normal_form(const CyclicPolygon& cyclic) {
  const std::size_t k = cyclic.size();
  if (k < 3) throw InvalidInput("polygon_normal_form: need at least three vertices");
  std::vector<std::int64_t> best;
  for (std::size_t start = 0; start < k; ++start)
    for (int dir : {1, -1}) {
      std::vector<std::int64_t> a(k - 1), b(k - 1);
      for (std::size_t j = 1; j < k; ++j) {
        const Point& v = cyclic[(start + k + static_cast<std::size_t>(dir) * j) % k];
        a[j - 1] = v[0] - cyclic[start][0];
        b[j - 1] = v[1] - cyclic[start][1];
      }
      hermite_2xm(a, b);
      a.insert(a.end(), b.begin(), b.end());
      if (best.empty() || a < best) best = std::move(a);
    }
  return best;
}

void for_each_box_polygon(int box, const std::function<void(const CyclicPolygon&)>& visit) {
  if (box < 1) throw InvalidInput("scan: box must be positive");
  std::vector<Point> grid;
  for (std::int64_t y = 0; y <= box; ++y)
    for (std::int64_t x = 0; x <= box; ++x) grid.push_back({x, y});

  CyclicPolygon path;
  std::function<void()> extend = [&]() {
    const Point s = path.front();
    const Point last = path.back();
    if (path.size() >= 3 && cross(path[path.size() - 2], last, s) > 0 && cross(last, s, path[1]) > 0) visit(path);
    for (const Point& c : grid) {
      if (c[1] < s[1] || (c[1] == s[1] && c[0] <= s[0])) continue;
      // strictly increasing angle around s, and a strict left turn at last
      if (path.size() >= 2 && (cross(s, last, c) <= 0 || cross(path[path.size() - 2], last, c) <= 0)) continue;
      path.push_back(c);
      extend();
      path.pop_back();
    }
  };
  for (const Point& s : grid) {
    path = {s};
    extend();
  }
}

namespace {

ScanClassRecord scan_one(const std::vector<IntVector>& vertices) {
  ScanClassRecord rec;
  const Polytope p = Polytope::from_points(vertices);
  rec.representative = p.vertices();
  rec.lattice_points = p.lattice_points().size();
  const ColumnStructure cs(analysis_polytope(p));
  rec.balanced = is_balanced(cs).balanced;
  if (!rec.balanced) return rec;
  try {
    rec.polygon_class = classify_balanced_polygon(cs).label;
  } catch (const InvariantViolation& e) {
    rec.failure = std::string("classifier: ") + e.what();
  }
  try {
    rec.col_divisible = is_col_divisible(cs).divisible;
  } catch (const InvariantViolation& e) {
    rec.failure += std::string(rec.failure.empty() ? "" : "; ") + "divisibility: " + e.what();
  }
  return rec;
}

bool literal_recheck(const ScanClassRecord& rec) {
  const Polytope q = analysis_polytope(Polytope::from_points(rec.representative));
  const ColumnStructure pruned(q, ColumnSearch::pruned);
  const ColumnStructure literal(q, ColumnSearch::literal);
  if (pruned.columns() != literal.columns()) return false;
  if (!is_balanced(literal).balanced) return false;
  try {
    return classify_balanced_polygon(literal).label == rec.polygon_class.value_or('?');
  } catch (const InvariantViolation&) {
    return !rec.polygon_class.has_value();
  }
}

}  // namespace

ScanSummary scan_polygons(const ScanOptions& options) {
  if (options.box < 1 || options.box > 4) throw InvalidInput("scan: box must be between 1 and 4");
  ScanSummary out;
  out.box = options.box;
  out.seed = options.seed;

  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<IntVector>> reps;
  for_each_box_polygon(options.box, [&](const CyclicPolygon& poly) {
    ++out.polygons;
    if (!seen.insert(polygon_normal_form(poly)).second) return;
    std::vector<IntVector> vs;
    for (const auto& v : poly) vs.push_back(make_vector({v[0], v[1]}));
    reps.push_back(std::move(vs));
  });

  // Workers fill slots by index; the merge below reads them in enumeration order.
  std::vector<ScanClassRecord> slots(reps.size());
  std::vector<std::exception_ptr> errors(reps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < reps.size(); i = next++) {
      try {
        slots[i] = scan_one(reps[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  out.classes = std::move(slots);
  std::vector<std::size_t> balanced;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    const auto& rec = out.classes[i];
    if (!rec.balanced) continue;
    ++out.balanced;
    balanced.push_back(i);
    if (!rec.polygon_class) {
      ++out.unclassified;
    } else {
      const std::size_t c = static_cast<std::size_t>(*rec.polygon_class - 'a');
      ++out.per_class[c];
      auto key = [&](std::size_t j) { return std::tie(out.classes[j].lattice_points, out.classes[j].representative); };
      if (!out.witness[c] || key(i) < key(*out.witness[c])) out.witness[c] = i;
    }
    if (!rec.col_divisible) ++out.not_col_divisible;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i : balanced)
    if (coin(rng) < options.sample_rate) out.sample.push_back(i);
  if (out.sample.empty() && !balanced.empty()) out.sample.push_back(balanced[rng() % balanced.size()]);
  for (std::size_t i : out.sample)
    if (!literal_recheck(out.classes[i])) ++out.sample_mismatches;
  return out;
}

json ScanSummary::to_json() const {
  json out;
  out["box"] = box;
  out["polygons"] = polygons;
  out["classes"] = classes.size();
  out["balanced"] = balanced;
  out["unclassified"] = unclassified;
  out["not_col_divisible"] = not_col_divisible;
  out["per_class"] = json::object();
  out["witnesses"] = json::object();
  out["absent"] = json::array();
  for (std::size_t c = 0; c < 6; ++c) {
    const std::string label(1, static_cast<char>('a' + c));
    out["per_class"][label] = per_class[c];
    if (witness[c]) {
      const auto& rec = classes[*witness[c]];
      out["witnesses"][label] = {{"vertices", vectors_to_json(rec.representative)},
                                 {"lattice_points", rec.lattice_points}};
    } else {
      out["absent"].push_back(label);
    }
  }
  out["failures"] = json::array();
  for (const auto& rec : classes)
    if (!rec.failure.empty())
      out["failures"].push_back({{"vertices", vectors_to_json(rec.representative)}, {"message", rec.failure}});
  out["soundness"] = {{"seed", seed}, {"sample", sample}, {"mismatches", sample_mismatches}};
  out["ok"] = ok();
  return out;
}

}  // namespace polycol
