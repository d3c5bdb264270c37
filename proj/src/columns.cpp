#include "polycol/columns.hpp"

#include "polycol/error.hpp"
#include "polycol/json_util.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace polycol {

namespace {

void require_column_domain(const Polytope& p) {
  if (!p.is_full_dimensional() || p.dim() < 1)
    throw PreconditionError("column vectors: polytope must be full-dimensional of dimension >= 1");
  if (!is_normalized(p)) throw PreconditionError("column vectors: polytope must be normalized");
}

bool off_facet(const FacetForm& f, const IntVector& x) { return f.evaluate(x) != f.offset; }

}  // namespace

bool satisfies_column_definition(const Polytope& p, const IntVector& v, std::size_t facet) {
  if (is_zero(v)) return false;
  const FacetForm& f = p.facets().at(facet);
  for (const auto& x : p.lattice_points())
    if (off_facet(f, x) && !p.lattice_index(add(x, v))) return false;
  return true;
}

std::vector<ColumnVector> column_vectors(const Polytope& p, ColumnSearch mode) {
  require_column_domain(p);
  const auto& pts = p.lattice_points();
  const auto& facets = p.facets();

  std::set<IntVector> differences;
  for (const auto& x : pts)
    for (const auto& y : pts)
      if (x != y) differences.insert(sub(y, x));

  std::map<IntVector, std::vector<std::size_t>> found;
  for (const auto& v : differences) {
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (mode == ColumnSearch::pruned && facets[f].evaluate(v) != -1) continue;
      if (satisfies_column_definition(p, v, f)) found[v].push_back(f);
    }
  }

  std::vector<ColumnVector> out;
  for (auto& [v, fs] : found) {
    if (fs.size() != 1)
      throw InvariantViolation("column vector " + to_string(v) + " has more than one base facet");
    out.push_back({v, fs.front()});
  }
  return out;
}

ColumnStructure::ColumnStructure(Polytope p, ColumnSearch mode)
    : polytope_(std::move(p)), columns_(column_vectors(polytope_, mode)) {
  for (std::size_t i = 0; i < columns_.size(); ++i) index_.emplace(columns_[i].v, i);

  const auto& facets = polytope_.facets();
  const auto& pts = polytope_.lattice_points();
  const std::size_t n = columns_.size();
  table_.assign(n * n, ProductEntry{});
  for (std::size_t a = 0; a < n; ++a) {
    const FacetForm& fa = facets[columns_[a].base_facet];
    for (std::size_t b = 0; b < n; ++b) {
      ProductEntry& e = table_[a * n + b];
      IntVector sum = add(columns_[a].v, columns_[b].v);
      if (is_zero(sum)) {
        e.kind = ProductKind::sum_zero;
        continue;
      }
      const FacetForm& fb = facets[columns_[b].base_facet];
      bool ok = true;
      for (const auto& x : pts) {
        if (!off_facet(fa, x)) continue;
        if (!off_facet(fb, add(x, columns_[a].v))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto it = index_.find(sum);
      if (it == index_.end())
        throw InvariantViolation("product " + to_string(columns_[a].v) + "*" + to_string(columns_[b].v) +
                                 " is not a column vector");
      if (columns_[it->second].base_facet != columns_[a].base_facet)
        throw InvariantViolation("product " + to_string(sum) + " does not keep the base facet of its left factor");
      e.kind = ProductKind::exists;
      e.result = it->second;
    }
  }
}

std::optional<std::size_t> ColumnStructure::index_of(const IntVector& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ColumnStructure::require_index(const ColumnVector& c) const {
  auto i = index_of(c.v);
  if (!i || columns_[*i].base_facet != c.base_facet)
    throw PreconditionError("not a column vector of this polytope: " + to_string(c.v));
  return *i;
}

std::optional<std::size_t> ColumnStructure::product_index(std::size_t u, std::size_t v) const {
  const auto& e = product_entry(u, v);
  if (e.kind != ProductKind::exists) return std::nullopt;
  return e.result;
}

std::vector<std::array<std::size_t, 3>> ColumnStructure::product_triples() const {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (auto k = product_index(a, b)) out.push_back({a, b, *k});
  return out;
}

const FacetForm& ColumnStructure::base_facet(std::size_t c) const {
  return polytope_.facets()[columns_.at(c).base_facet];
}

Int ColumnStructure::pairing(std::size_t u, std::size_t v) const {
  return base_facet(u).evaluate(columns_.at(v).v);
}

Int ColumnStructure::height(std::size_t c, const IntVector& z, const Int& degree) const {
  return polycol::height(polytope_, base_facet(c), z, degree);
}

std::optional<ColumnVector> product(const ColumnStructure& cs, const ColumnVector& u, const ColumnVector& v) {
  auto k = cs.product_index(cs.require_index(u), cs.require_index(v));
  if (!k) return std::nullopt;
  return cs[*k];
}

bool product_exists(const Polytope& p, const ColumnVector& u, const ColumnVector& v) {
  if (is_zero(add(u.v, v.v))) return false;
  const FacetForm& fu = p.facets().at(u.base_facet);
  const FacetForm& fv = p.facets().at(v.base_facet);
  for (const auto& x : p.lattice_points())
    if (off_facet(fu, x) && !off_facet(fv, add(x, u.v))) return false;
  return true;
}

std::optional<ColumnVector> weak_product(const ColumnStructure& cs, const std::vector<ColumnVector>& seq) {
  if (seq.empty()) throw InvalidInput("weak_product: empty sequence");
  const std::size_t m = seq.size();
  std::vector<std::size_t> idx;
  for (const auto& c : seq) idx.push_back(cs.require_index(c));

  // best[i][j]: index of the product of seq[i..j] if some bracketing works.
  std::vector<std::vector<std::optional<std::size_t>>> best(m, std::vector<std::optional<std::size_t>>(m));
  for (std::size_t i = 0; i < m; ++i) best[i][i] = idx[i];
  for (std::size_t len = 2; len <= m; ++len) {
    for (std::size_t i = 0; i + len <= m; ++i) {
      const std::size_t j = i + len - 1;
      for (std::size_t k = i; k < j && !best[i][j]; ++k) {
        if (!best[i][k] || !best[k + 1][j]) continue;
        best[i][j] = cs.product_index(*best[i][k], *best[k + 1][j]);
      }
    }
  }
  if (!best[0][m - 1]) return std::nullopt;
  return cs[*best[0][m - 1]];
}

std::optional<ColumnVector> strict_product(const ColumnStructure& cs, const std::vector<ColumnVector>& seq) {
  if (seq.empty()) throw InvalidInput("strict_product: empty sequence");
  std::vector<std::size_t> idx;
  for (const auto& c : seq) idx.push_back(cs.require_index(c));
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (!cs.product_index(idx[i], idx[i + 1])) return std::nullopt;
  for (std::size_t r = 0; r < seq.size(); ++r) {
    IntVector s = seq[r].v;
    for (std::size_t t = r + 1; t < seq.size(); ++t) {
      s = add(s, seq[t].v);
      if (is_zero(s)) return std::nullopt;
    }
  }
  auto w = weak_product(cs, seq);
  if (!w) throw InvariantViolation("strict product exists but some bracketing fails");
  return w;
}

ColumnSet strict_hull(const ColumnStructure& cs, const ColumnSet& v) {
  for (auto i : v)
    if (i >= cs.size()) throw PreconditionError("strict_hull: column index out of range");

  // A sequence is summarized by its last element and the set of its suffix
  // products; extending by y needs last*y and every suffix + y nonzero.
  using State = std::pair<std::size_t, std::vector<std::size_t>>;
  std::set<State> seen;
  std::deque<State> queue;
  ColumnSet hull;
  for (auto x : v) {
    State s{x, {x}};
    if (seen.insert(s).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    hull.insert(s.second.begin(), s.second.end());
    for (auto y : v) {
      if (!cs.product_index(s.first, y)) continue;
      std::vector<std::size_t> next{y};
      bool valid = true;
      for (auto suffix : s.second) {
        IntVector sum = add(cs[suffix].v, cs[y].v);
        if (is_zero(sum)) {
          valid = false;
          break;
        }
        auto k = cs.product_index(suffix, y);
        if (!k) throw InvariantViolation("strict product: suffix " + to_string(cs[suffix].v) + " times " +
                                         to_string(cs[y].v) + " does not exist");
        next.push_back(*k);
      }
      if (!valid) continue;
      std::sort(next.begin(), next.end());
      State t{y, std::move(next)};
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }
  }
  return hull;
}

ColumnSet weak_hull(const ColumnStructure& cs, const ColumnSet& v) {
  for (auto i : v)
    if (i >= cs.size()) throw PreconditionError("weak_hull: column index out of range");
  ColumnSet hull = v;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> cur(hull.begin(), hull.end());
    for (auto a : cur)
      for (auto b : cur)
        if (auto k = cs.product_index(a, b); k && hull.insert(*k).second) grew = true;
  }
  return hull;
}

BalanceResult is_balanced(const ColumnStructure& cs) {
  BalanceResult one_sided, absolute;
  for (std::size_t u = 0; u < cs.size(); ++u) {
    for (std::size_t v = 0; v < cs.size(); ++v) {
      Int h = cs.pairing(u, v);
      // keep the largest violation
      if (h > 1 && (one_sided.balanced || h > one_sided.witness->value)) one_sided = {false, BalanceWitness{u, v, h}};
      if (abs(h) > 1 && (absolute.balanced || abs(h) > abs(absolute.witness->value)))
        absolute = {false, BalanceWitness{u, v, h}};
    }
  }
  if (one_sided.balanced != absolute.balanced)
    throw InvariantViolation("balanced: one-sided and absolute-value tests disagree");
  return one_sided;
}

DivisibilityResult is_col_divisible(const ColumnStructure& cs) {
  if (!is_balanced(cs).balanced) throw PreconditionError("Col-divisibility is defined for balanced polytopes only");
  const std::size_t n = cs.size();
  auto prod_is = [&](std::size_t x, std::size_t y, std::size_t target) {
    auto k = cs.product_index(x, y);
    return k && *k == target;
  };
  auto vec = [&](std::size_t i) { return to_string(cs[i].v); };

  // cd1: ac and bc exist, a != b  =>  a = db or b = da for some d.
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!cs.product_index(a, c)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || !cs.product_index(b, c)) continue;
        bool found = false;
        for (std::size_t d = 0; d < n && !found; ++d) found = prod_is(d, b, a) || prod_is(d, a, b);
        if (!found)
          return {false, DivisibilityWitness{"cd1",
                                             {a, b, c},
                                             "a=" + vec(a) + " b=" + vec(b) + " c=" + vec(c) +
                                                 ": ac and bc exist but no d gives a=db or b=da"}};
      }
    }
  }

  // cd2: ab = cd, a != c  =>  at = c and td = b, or ct = a and tb = d.
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> by_result;
  for (const auto& [a, b, k] : cs.product_triples()) by_result[k].push_back({a, b});
  for (const auto& [k, pairs] : by_result) {
    for (const auto& [a, b] : pairs) {
      for (const auto& [c, d] : pairs) {
        if (a == c) continue;
        bool found = false;
        for (std::size_t t = 0; t < n && !found; ++t)
          found = (prod_is(a, t, c) && prod_is(t, d, b)) || (prod_is(c, t, a) && prod_is(t, b, d));
        if (!found)
          return {false, DivisibilityWitness{"cd2",
                                             {a, b, c, d},
                                             "a=" + vec(a) + " b=" + vec(b) + " c=" + vec(c) + " d=" + vec(d) +
                                                 ": ab=cd but no t with at=c, td=b or ct=a, tb=d"}};
      }
    }
  }
  return {};
}

KMorphismResult check_k_morphism(const ColumnStructure& p, const ColumnStructure& q,
                                 const std::vector<std::size_t>& mu) {
  if (mu.size() != p.size()) throw PreconditionError("k-morphism: map must be total on Col(P)");
  for (auto m : mu)
    if (m >= q.size()) throw PreconditionError("k-morphism: image index out of range");
  KMorphismResult r;
  for (std::size_t w = 0; w < p.size(); ++w) {
    for (std::size_t v = 0; v < p.size(); ++v) {
      Int lhs = p.pairing(w, v), rhs = q.pairing(mu[w], mu[v]);
      if (lhs != rhs)
        r.violations.push_back({"i", w, v, "<P_w,v>=" + lhs.str() + " but <Q_mu(w),mu(v)>=" + rhs.str()});
    }
  }
  for (const auto& [v, w, vw] : p.product_triples()) {
    auto img = q.product_index(mu[v], mu[w]);
    if (!img || *img != mu[vw])
      r.violations.push_back({"ii", v, w,
                              img ? "mu(vw)=" + to_string(q[mu[vw]].v) + " but mu(v)mu(w)=" + to_string(q[*img].v)
                                  : "mu(v)mu(w) does not exist"});
  }
  r.ok = r.violations.empty();
  return r;
}

// ---- polygon classification

Polytope unit_triangle_multiple(long long k) {
  return Polytope::from_points({make_vector({0, 0}), make_vector({k, 0}), make_vector({0, k})},
                               k == 1 ? "unit triangle" : std::to_string(k) + "x unit triangle");
}

Polytope trapezoid_model() {
  return Polytope::from_points(
      {make_vector({0, 0}), make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 1})}, "trapezoid");
}

Polytope unit_square_model() {
  return Polytope::from_points(
      {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1})}, "unit square");
}

namespace {

// A with A*src[i] == dst[i], when src is a lattice basis and A is unimodular.
std::optional<IntMatrix> linear_map_between(const IntVector& s0, const IntVector& s1, const IntVector& d0,
                                            const IntVector& d1) {
  IntMatrix src = IntMatrix::from_columns({s0, s1}, 2);
  Int det = determinant(src);
  if (det != 1 && det != -1) return std::nullopt;
  IntMatrix a = IntMatrix::from_columns({d0, d1}, 2) * unimodular_inverse(src);
  Int da = determinant(a);
  if (da != 1 && da != -1) return std::nullopt;
  return a;
}

void attach_projective_witness(PolygonClass& out, const ColumnStructure& cs, const Polytope& model,
                               const IntVector& s0, const IntVector& s1, const IntVector& d0, const IntVector& d1) {
  out.linear_witness = linear_map_between(s0, s1, d0, d1);
  if (out.linear_witness) {
    Polytope image = cs.polytope().mapped(AffineLatticeMap(*out.linear_witness, IntVector(2, 0)));
    out.projective_witness = projectively_equivalent(image, model);
  }
}

}  // namespace

PolygonClass classify_balanced_polygon(const ColumnStructure& cs) {
  const Polytope& p = cs.polytope();
  if (p.dim() != 2 || p.ambient_dim() != 2) throw PreconditionError("classify: polygon required");
  if (!is_balanced(cs).balanced) throw PreconditionError("classify: polygon is not balanced");

  const std::size_t n = cs.size();
  const auto triples = cs.product_triples();
  auto neg = [&](std::size_t i) { return cs.index_of(negated(cs[i].v)); };
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (neg(i)) ++pairs;
  pairs /= 2;
  std::set<std::size_t> bases;
  for (const auto& c : cs.columns()) bases.insert(c.base_facet);

  PolygonClass out;

  if (n == 6 && pairs == 3 && triples.size() == 6) {
    out.label = 'a';
    const auto& [u, v, w] = triples.front();
    out.named = {{"u", u}, {"v", v}, {"w", w}};
    const auto& e = p.edges().front();
    Int k = content(sub(p.vertices()[e.second], p.vertices()[e.first]));
    out.multiple = static_cast<std::size_t>(k);
    if (auto m = integral_affine_equivalent(p, unit_triangle_multiple(static_cast<long long>(k)))) {
      out.linear_witness = m->matrix();
      out.projective_witness = true;
    }
    return out;
  }

  if (n == 4 && pairs == 1 && triples.size() == 2) {
    // uv = w and w(-v) = u
    for (const auto& [x, y, z] : triples) {
      auto ny = neg(y);
      if (!ny) continue;
      auto back = cs.product_index(z, *ny);
      if (back && *back == x) {
        out.label = 'b';
        out.named = {{"u", x}, {"v", y}, {"-v", *ny}, {"w", z}};
        attach_projective_witness(out, cs, trapezoid_model(), cs[x].v, cs[y].v, make_vector({1, -1}),
                                  make_vector({-1, 0}));
        return out;
      }
    }
  }

  if (n == 4 && pairs == 2 && triples.empty()) {
    out.label = 'e';
    std::size_t u = 0, v = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (cs[i].v != negated(cs[u].v)) {
        v = i;
        break;
      }
    out.named = {{"u", u}, {"-u", *neg(u)}, {"v", v}, {"-v", *neg(v)}};
    attach_projective_witness(out, cs, unit_square_model(), cs[u].v, cs[v].v, make_vector({1, 0}),
                              make_vector({0, 1}));
    return out;
  }

  if (n == 3 && triples.size() == 1) {
    const auto& [u, v, w] = triples.front();
    out.label = 'c';
    out.named = {{"u", u}, {"v", v}, {"w", w}};
    return out;
  }

  if (bases.size() <= 1 && triples.empty()) {
    out.label = 'd';
    for (std::size_t i = 0; i < n; ++i) out.named["v" + std::to_string(i + 1)] = i;
    if (n == 0) {
      out.empty_columns = true;
      out.note = "no column vectors; reported as class d with t = 0";
    }
    return out;
  }

  if (n == 2 && bases.size() == 2 && triples.empty()) {
    out.label = 'f';
    out.named = {{"u", 0}, {"v", 1}};
    return out;
  }

  std::ostringstream msg;
  msg << "unclassifiable balanced polygon with vertices";
  for (const auto& v : p.vertices()) msg << ' ' << to_string(v);
  msg << ": |Col|=" << n << " products=" << triples.size() << " opposite pairs=" << pairs
      << " bases=" << bases.size();
  throw InvariantViolation(msg.str());
}

// ---- rigid systems

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// Labels each hull element by (class of start, class of end) under the
// vertex assignment `vertex_of` (endpoint node -> vertex id).
RigidCertificate build_certificate(const ColumnStructure& cs, const std::vector<std::size_t>& elems,
                                   const std::vector<std::size_t>& irreducible,
                                   const std::vector<std::size_t>& vertex_of, std::size_t vertex_count) {
  RigidCertificate cert;
  cert.vertex_count = vertex_count;
  for (std::size_t i = 0; i < elems.size(); ++i)
    cert.labeling[elems[i]] = {vertex_of[2 * i], vertex_of[2 * i + 1]};
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto e : irreducible) edges.insert(cert.labeling[e]);
  cert.edges.assign(edges.begin(), edges.end());
  (void)cs;
  return cert;
}

}  // namespace

std::string verify_rigid_certificate(const ColumnStructure& cs, const ColumnSet& hull, const RigidCertificate& cert) {
  const std::size_t nv = cert.vertex_count;
  std::vector<std::vector<std::size_t>> out(nv);
  std::vector<bool> touched(nv, false);
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (const auto& [a, b] : cert.edges) {
    if (a >= nv || b >= nv) return "edge endpoint out of range";
    if (a == b) return "self-loop at vertex " + std::to_string(a);
    if (!edge_set.insert({a, b}).second) return "multiple edge";
    out[a].push_back(b);
    touched[a] = touched[b] = true;
  }
  for (std::size_t x = 0; x < nv; ++x)
    if (!touched[x]) return "isolated vertex " + std::to_string(x);

  // reach[a][b]: a nonempty directed path a -> b exists
  std::vector<std::vector<bool>> reach(nv, std::vector<bool>(nv, false));
  for (std::size_t s = 0; s < nv; ++s) {
    std::vector<std::size_t> stack(out[s].begin(), out[s].end());
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (reach[s][x]) continue;
      reach[s][x] = true;
      for (auto y : out[x]) stack.push_back(y);
    }
  }
  for (std::size_t x = 0; x < nv; ++x)
    if (reach[x][x]) return "directed cycle through vertex " + std::to_string(x);
  for (const auto& [a, b] : cert.edges)
    for (auto c : out[a])
      if (c != b && reach[c][b])
        return "edge " + std::to_string(a) + "->" + std::to_string(b) + " has a parallel path";

  std::set<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b)
      if (reach[a][b]) classes.insert({a, b});

  if (cert.labeling.size() != hull.size()) return "labeling domain differs from the hull";
  std::set<std::pair<std::size_t, std::size_t>> image;
  for (auto x : hull) {
    auto it = cert.labeling.find(x);
    if (it == cert.labeling.end()) return "hull element " + to_string(cs[x].v) + " unlabeled";
    if (!classes.count(it->second)) return "label of " + to_string(cs[x].v) + " is not a path class";
    if (!image.insert(it->second).second) return "labeling is not injective";
  }
  if (image != classes) return "labeling misses a path class";

  for (auto x : hull) {
    for (auto y : hull) {
      const auto& lx = cert.labeling.at(x);
      const auto& ly = cert.labeling.at(y);
      auto k = cs.product_index(x, y);
      bool exists = k && hull.count(*k);
      bool composes = lx.second == ly.first;
      if (exists != composes)
        return "product " + to_string(cs[x].v) + "*" + to_string(cs[y].v) +
               (exists ? " exists but labels do not compose" : " missing although labels compose");
      if (exists && cert.labeling.at(*k) != std::make_pair(lx.first, ly.second))
        return "label of product " + to_string(cs[*k].v) + " is not the composed path class";
    }
  }
  return {};
}

RigidResult is_rigid(const ColumnStructure& cs, const ColumnSet& v, std::size_t partition_budget) {
  RigidResult r;
  r.strict = strict_hull(cs, v);
  r.weak = weak_hull(cs, v);

  for (auto x : r.strict) {
    auto nx = cs.index_of(negated(cs[x].v));
    if (nx && r.strict.count(*nx)) {
      r.status = RigidStatus::not_rigid;
      r.clause = "a";
      r.reason = "[V] contains " + to_string(cs[x].v) + " and its negative";
      return r;
    }
  }
  if (r.strict != r.weak) {
    r.status = RigidStatus::not_rigid;
    r.clause = "b";
    r.reason = "[V] differs from <V>";
    return r;
  }

  const std::vector<std::size_t> elems(r.strict.begin(), r.strict.end());
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;

  std::vector<std::array<std::size_t, 3>> products;  // positions (x, y, xy) inside the hull
  std::set<std::size_t> composite;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (auto k = cs.product_index(elems[i], elems[j]); k && pos.count(*k)) {
        products.push_back({i, j, pos[*k]});
        composite.insert(*k);
      }
  std::vector<std::size_t> irreducible;
  for (auto x : elems)
    if (!composite.count(x)) irreducible.push_back(x);

  // Endpoint nodes: 2i = start of elems[i], 2i+1 = its end. Forced identifications.
  DisjointSets ds(2 * elems.size());
  for (const auto& [i, j, k] : products) {
    ds.unite(2 * i + 1, 2 * j);
    ds.unite(2 * k, 2 * i);
    ds.unite(2 * k + 1, 2 * j + 1);
  }
  std::map<std::size_t, std::size_t> class_id;
  std::vector<std::size_t> node_class(2 * elems.size());
  for (std::size_t x = 0; x < node_class.size(); ++x) {
    auto root = ds.find(x);
    auto [it, inserted] = class_id.try_emplace(root, class_id.size());
    node_class[x] = it->second;
  }
  const std::size_t classes = class_id.size();

  auto attempt = [&](const std::vector<std::size_t>& merge_of_class, std::size_t vertex_count) {
    std::vector<std::size_t> vertex_of(node_class.size());
    for (std::size_t x = 0; x < node_class.size(); ++x) vertex_of[x] = merge_of_class[node_class[x]];
    RigidCertificate cert = build_certificate(cs, elems, irreducible, vertex_of, vertex_count);
    if (verify_rigid_certificate(cs, r.strict, cert).empty()) return std::optional<RigidCertificate>(cert);
    return std::optional<RigidCertificate>();
  };

  std::vector<std::size_t> identity(classes);
  std::iota(identity.begin(), identity.end(), 0);
  if (auto cert = attempt(identity, classes)) {
    r.status = RigidStatus::rigid;
    r.certificate = std::move(cert);
    return r;
  }

  // Any certificate induces a coarsening of the forced classes; enumerate them
  // as restricted-growth strings.
  std::vector<std::size_t> rgs(classes, 0);
  std::size_t tried = 0;
  bool exhausted = true;
  std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t used) -> bool {
    if (i == classes) {
      if (++tried > partition_budget) {
        exhausted = false;
        return true;
      }
      if (auto cert = attempt(rgs, used)) {
        r.status = RigidStatus::rigid;
        r.certificate = std::move(cert);
        return true;
      }
      return false;
    }
    for (std::size_t b = 0; b <= used && b < classes; ++b) {
      rgs[i] = b;
      if (walk(i + 1, std::max(used, b + 1))) return true;
    }
    return false;
  };
  walk(0, 0);
  if (r.status == RigidStatus::rigid) return r;
  if (!exhausted) {
    r.status = RigidStatus::unknown;
    r.reason = "partition budget exhausted after " + std::to_string(partition_budget) + " vertex assignments";
    return r;
  }
  r.status = RigidStatus::not_rigid;
  r.clause = "c";
  r.reason = "no graph realizes [V] as path classes";
  return r;
}

// ---- exports

std::string product_table_dot(const ColumnStructure& cs) {
  std::ostringstream os;
  os << "digraph col {\n";
  for (std::size_t i = 0; i < cs.size(); ++i)
    os << "  c" << i << " [label=\"" << to_string(cs[i].v) << "\"];\n";
  for (const auto& [u, v, w] : cs.product_triples())
    os << "  c" << u << " -> c" << w << " [label=\"\xC2\xB7" << to_string(cs[v].v) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string product_table_json(const ColumnStructure& cs) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : cs.columns()) cols.push_back({{"v", vector_to_json(c.v)}, {"base", c.base_facet}});
  nlohmann::json prods = nlohmann::json::array();
  for (const auto& [u, v, w] : cs.product_triples()) prods.push_back({u, v, w});
  return nlohmann::json{{"columns", cols}, {"products", prods}}.dump();
}

}  // namespace polycol
