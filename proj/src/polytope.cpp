#include "polycol/polytope.hpp"

#include "polycol/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace polycol {

// ---------------------------------------------------------------------------
// AffineLatticeMap

AffineLatticeMap::AffineLatticeMap(IntMatrix matrix, IntVector translation)
    : matrix_(std::move(matrix)), translation_(std::move(translation)) {
  if (translation_.size() != matrix_.rows())
    throw InvalidInput("AffineLatticeMap: translation does not match matrix rows");
  if (matrix_.rows() == matrix_.cols()) {
    Int det = determinant(matrix_);
    if (det == 1 || det == -1) {
      IntMatrix inv = unimodular_inverse(matrix_);
      IntVector t = negated(inv * translation_);
      inverse_.emplace(std::move(inv), std::move(t));
    }
  }
}

AffineLatticeMap AffineLatticeMap::identity(std::size_t n) {
  return AffineLatticeMap(IntMatrix::identity(n), IntVector(n, Int(0)));
}

AffineLatticeMap AffineLatticeMap::translation_by(const IntVector& t) {
  return AffineLatticeMap(IntMatrix::identity(t.size()), t);
}

IntVector AffineLatticeMap::apply(const IntVector& x) const { return add(matrix_ * x, translation_); }

AffineLatticeMap AffineLatticeMap::inverse() const {
  if (!inverse_) throw PreconditionError("AffineLatticeMap: map is not invertible over Z");
  return AffineLatticeMap(inverse_->first, inverse_->second);
}

AffineLatticeMap AffineLatticeMap::compose(const AffineLatticeMap& inner) const {
  return AffineLatticeMap(matrix_ * inner.matrix_, add(matrix_ * inner.translation_, translation_));
}

// ---------------------------------------------------------------------------
// LatticeChart

LatticeChart::LatticeChart(IntVector origin, LatticeBasis basis)
    : origin_(std::move(origin)), basis_(std::move(basis)) {
  if (origin_.size() != basis_.ambient_dim()) throw InvalidInput("LatticeChart: dimension mismatch");
}

IntVector LatticeChart::embed(const IntVector& local) const { return add(origin_, basis_.combine(local)); }

std::optional<IntVector> LatticeChart::coordinates(const IntVector& x) const {
  return basis_.coordinates(sub(x, origin_));
}

AffineLatticeMap LatticeChart::embedding() const {
  return AffineLatticeMap(basis_.basis().transposed(), origin_);
}

// ---------------------------------------------------------------------------
// Hull computation

namespace {

struct Halfspace {
  IntVector normal;
  Int offset;
  bool operator<(const Halfspace& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

// Normal of the hyperplane through r affinely independent points of Z^r
// (generalized cross product of the difference vectors); zero if dependent.
IntVector hyperplane_normal(const std::vector<IntVector>& pts, const std::vector<std::size_t>& idx,
                            std::size_t r) {
  IntMatrix diff(r - 1, r);
  for (std::size_t i = 1; i < r; ++i) diff.set_row(i - 1, sub(pts[idx[i]], pts[idx[0]]));
  IntVector normal(r);
  IntMatrix minor(r - 1, r - 1);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t a = 0; a + 1 < r; ++a)
      for (std::size_t c = 0, cc = 0; c < r; ++c)
        if (c != j) minor(a, cc++) = diff(a, c);
    normal[j] = determinant(minor);
    if (j % 2 == 1) normal[j] = -normal[j];
  }
  return normal;
}

// Facet inequalities of conv(pts) for full-dimensional point sets in Z^r,
// by scanning hyperplanes through affinely independent r-subsets.
std::vector<Halfspace> hull_halfspaces(const std::vector<IntVector>& pts, std::size_t r) {
  std::set<Halfspace> found;
  const std::size_t k = pts.size();
  std::vector<std::size_t> idx(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == r) {
      IntVector normal = hyperplane_normal(pts, idx, r);
      if (is_zero(normal)) return;
      normal = primitive_part(normal);
      const Int level = dot(normal, pts[idx[0]]);
      bool above = false, below = false;
      for (const auto& x : pts) {
        Int v = dot(normal, x);
        if (v > level) above = true;
        if (v < level) below = true;
        if (above && below) return;
      }
      if (below) found.insert({negated(normal), -level});
      else found.insert({normal, level});
      return;
    }
    for (std::size_t i = start; i + (r - depth) <= k; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return {found.begin(), found.end()};
}

bool lex_less(const IntVector& a, const IntVector& b) { return a < b; }

}  // namespace

struct Polytope::Impl {
  std::string name;
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<IntVector> vertices;        // ambient, sorted
  LatticeChart chart{IntVector{}, LatticeBasis{}};
  std::vector<IntVector> local_vertices;  // chart coordinates, same order
  std::vector<Halfspace> local_halfspaces;
  std::vector<std::vector<std::size_t>> facet_vertices;  // per halfspace

  mutable std::once_flag lattice_once;
  mutable std::vector<IntVector> lattice_points;
  mutable std::vector<FacetForm> facets;

  mutable std::once_flag edges_once;
  mutable std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool local_contains(const IntVector& local) const {
    for (const auto& h : local_halfspaces)
      if (dot(h.normal, local) < h.offset) return false;
    return true;
  }

  void compute_lattice() const;
  void compute_edges() const;
};

void Polytope::Impl::compute_lattice() const {
  std::vector<IntVector> pts;
  if (dim == 0) {
    pts.push_back(vertices.front());
  } else {
    IntVector lo = local_vertices.front(), hi = local_vertices.front();
    for (const auto& v : local_vertices)
      for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    // Scan the box in the leading coordinates; the last coordinate is an
    // interval cut out by the halfspaces.
    const std::size_t last = dim - 1;
    auto floor_div = [](const Int& a, const Int& b) {
      Int q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    };
    IntVector cur = lo;
    while (true) {
      Int from = lo[last], to = hi[last];
      bool feasible = true;
      for (const auto& h : local_halfspaces) {
        Int rest = h.offset;
        for (std::size_t i = 0; i < last; ++i) rest -= h.normal[i] * cur[i];
        const Int& c = h.normal[last];
        if (c > 0)
          from = std::max(from, -floor_div(-rest, c));
        else if (c < 0)
          to = std::min(to, floor_div(rest, c));
        else if (rest > 0)
          feasible = false;
      }
      if (feasible)
        for (Int x = from; x <= to; ++x) {
          cur[last] = x;
          pts.push_back(chart.embed(cur));
        }
      std::size_t i = 0;
      while (i < last) {
        if (cur[i] < hi[i]) {
          ++cur[i];
          break;
        }
        cur[i] = lo[i];
        ++i;
      }
      if (i == last) break;
    }
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  lattice_points = std::move(pts);

  if (dim == ambient && dim > 0) {
    facets.clear();
    for (std::size_t f = 0; f < local_halfspaces.size(); ++f) {
      FacetForm form{local_halfspaces[f].normal, local_halfspaces[f].offset, {}, facet_vertices[f]};
      for (std::size_t i = 0; i < lattice_points.size(); ++i)
        if (dot(form.normal, lattice_points[i]) == form.offset) form.on_facet.push_back(i);
      facets.push_back(std::move(form));
    }
  }
}

void Polytope::Impl::compute_edges() const {
  edges.clear();
  if (dim == 0) return;
  if (dim == 1) {
    edges.emplace_back(0, 1);
    return;
  }
  std::vector<std::vector<std::size_t>> incident(vertices.size());
  for (std::size_t f = 0; f < facet_vertices.size(); ++f)
    for (std::size_t v : facet_vertices[f]) incident[v].push_back(f);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      std::vector<IntVector> common;
      std::size_t a = 0, b = 0;
      while (a < incident[i].size() && b < incident[j].size()) {
        if (incident[i][a] < incident[j][b]) ++a;
        else if (incident[j][b] < incident[i][a]) ++b;
        else {
          common.push_back(local_halfspaces[incident[i][a]].normal);
          ++a;
          ++b;
        }
      }
      if (common.size() + 1 < dim) continue;
      if (rank(IntMatrix::from_rows(common, dim)) == dim - 1) edges.emplace_back(i, j);
    }
}

Polytope Polytope::from_points(const std::vector<IntVector>& points, std::string name) {
  if (points.empty()) throw InvalidInput("polytope: empty point set");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw InvalidInput("polytope: points of different dimensions");

  std::vector<IntVector> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->ambient = n;

  // Saturated lattice of the affine hull.
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  LatticeBasis hull_basis;
  bool full = false;
  if (diffs.empty() || n == 0) {
    hull_basis = LatticeBasis(IntMatrix(0, n), n);
  } else {
    IntMatrix sat = saturated_row_basis(IntMatrix::from_rows(diffs, n));
    full = sat.rows() == n;
    hull_basis = LatticeBasis(sat, n);
  }
  const std::size_t r = hull_basis.rank();
  impl->dim = r;
  if (full) {
    impl->chart = LatticeChart(IntVector(n, Int(0)), LatticeBasis(IntMatrix::identity(n), n));
  } else {
    impl->chart = LatticeChart(pts[0], hull_basis);
  }

  std::vector<IntVector> local;
  local.reserve(pts.size());
  for (const auto& p : pts) {
    auto c = impl->chart.coordinates(p);
    if (!c) throw InvariantViolation("polytope: point outside its own affine hull lattice");
    local.push_back(std::move(*c));
  }

  if (r == 0) {
    impl->vertices = {pts[0]};
    impl->local_vertices = {local[0]};
    return Polytope(impl);
  }

  std::vector<Halfspace> halfspaces = hull_halfspaces(local, r);

  // A point is a vertex iff the normals of the facets through it have full rank.
  std::vector<std::size_t> vertex_ids;
  for (std::size_t i = 0; i < local.size(); ++i) {
    std::vector<IntVector> normals;
    for (const auto& h : halfspaces)
      if (dot(h.normal, local[i]) == h.offset) normals.push_back(h.normal);
    if (normals.size() >= r && rank(IntMatrix::from_rows(normals, r)) == r) vertex_ids.push_back(i);
  }
  for (std::size_t i : vertex_ids) {
    impl->vertices.push_back(pts[i]);
    impl->local_vertices.push_back(local[i]);
  }
  impl->local_halfspaces = std::move(halfspaces);
  for (const auto& h : impl->local_halfspaces) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < impl->local_vertices.size(); ++v)
      if (dot(h.normal, impl->local_vertices[v]) == h.offset) on.push_back(v);
    impl->facet_vertices.push_back(std::move(on));
  }
  return Polytope(impl);
}

std::size_t Polytope::ambient_dim() const { return impl_->ambient; }
std::size_t Polytope::dim() const { return impl_->dim; }
const std::string& Polytope::name() const { return impl_->name; }
const std::vector<IntVector>& Polytope::vertices() const { return impl_->vertices; }
const LatticeChart& Polytope::affine_hull_chart() const { return impl_->chart; }

const std::vector<FacetForm>& Polytope::facets() const {
  if (!is_full_dimensional() || dim() == 0)
    throw PreconditionError("facets: polytope is not full-dimensional; normalize first");
  std::call_once(impl_->lattice_once, [this] { impl_->compute_lattice(); });
  return impl_->facets;
}

const std::vector<IntVector>& Polytope::lattice_points() const {
  std::call_once(impl_->lattice_once, [this] { impl_->compute_lattice(); });
  return impl_->lattice_points;
}

const std::vector<std::pair<std::size_t, std::size_t>>& Polytope::edges() const {
  std::call_once(impl_->edges_once, [this] { impl_->compute_edges(); });
  return impl_->edges;
}

std::optional<std::size_t> Polytope::lattice_index(const IntVector& x) const {
  const auto& pts = lattice_points();
  auto it = std::lower_bound(pts.begin(), pts.end(), x, lex_less);
  if (it == pts.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - pts.begin());
}

std::optional<std::size_t> Polytope::facet_index(const FacetForm& f) const {
  const auto& fs = facets();
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].normal == f.normal && fs[i].offset == f.offset) return i;
  return std::nullopt;
}

bool Polytope::contains(const IntVector& x) const {
  if (x.size() != ambient_dim()) throw InvalidInput("contains: dimension mismatch");
  if (dim() == 0) return x == vertices().front();
  auto c = impl_->chart.coordinates(x);
  return c && impl_->local_contains(*c);
}

Polytope Polytope::renamed(std::string name) const { return from_points(vertices(), std::move(name)); }

Polytope Polytope::translated(const IntVector& t) const {
  std::vector<IntVector> pts;
  for (const auto& v : vertices()) pts.push_back(add(v, t));
  return from_points(pts, name());
}

Polytope Polytope::dilated(const Int& k) const {
  if (k < 1) throw InvalidInput("dilated: factor must be positive");
  std::vector<IntVector> pts;
  for (const auto& v : vertices()) pts.push_back(scaled(v, k));
  return from_points(pts, name());
}

Polytope Polytope::mapped(const AffineLatticeMap& m) const {
  std::vector<IntVector> pts;
  for (const auto& v : vertices()) pts.push_back(m.apply(v));
  return from_points(pts, name());
}

// ---------------------------------------------------------------------------

Normalization normalize_full_dim(const Polytope& p) {
  const auto& pts = p.lattice_points();
  const std::size_t n = p.ambient_dim();
  IntMatrix gens(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i) gens.set_row(i - 1, sub(pts[i], pts[0]));
  LatticeChart chart(pts[0], LatticeBasis(gens, n));
  if (chart.rank() != p.dim()) throw InvariantViolation("normalize_full_dim: rank mismatch");
  std::vector<IntVector> local;
  for (const auto& v : p.vertices()) {
    auto c = chart.coordinates(v);
    if (!c) throw InvariantViolation("normalize_full_dim: vertex outside the lattice of L_P");
    local.push_back(std::move(*c));
  }
  return {Polytope::from_points(local, p.name()), std::move(chart)};
}

bool is_normalized(const Polytope& p) {
  if (!p.is_full_dimensional()) return false;
  const auto& pts = p.lattice_points();
  const std::size_t n = p.ambient_dim();
  if (n == 0) return true;
  IntMatrix gens(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i) gens.set_row(i - 1, sub(pts[i], pts[0]));
  LatticeBasis b(gens, n);
  return b.rank() == n && b.basis() == IntMatrix::identity(n);
}

Int height(const Polytope& p, const FacetForm& f, const IntVector& z, const Int& degree) {
  if (!p.facet_index(f)) throw PreconditionError("height: facet form does not belong to this polytope");
  return f.evaluate(z) - degree * f.offset;
}

bool is_unimodular_simplex(const Polytope& p) {
  const auto& vs = p.vertices();
  if (vs.size() != p.dim() + 1) return false;
  if (p.dim() == 0) return true;
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < vs.size(); ++i) edges.push_back(sub(vs[i], vs[0]));
  const std::size_t n = p.ambient_dim();
  LatticeBasis saturated(saturated_row_basis(IntMatrix::from_rows(edges, n)), n);
  IntMatrix coords(edges.size(), saturated.rank());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto c = saturated.coordinates(edges[i]);
    if (!c) throw InvariantViolation("is_unimodular_simplex: edge outside saturated lattice");
    coords.set_row(i, *c);
  }
  Int det = determinant(coords);
  return det == 1 || det == -1;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const Polytope& p) {
  std::vector<std::vector<std::size_t>> adj(p.vertices().size());
  for (auto [i, j] : p.edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<AffineLatticeMap> affine_maps(const Polytope& p, const Polytope& q, bool first_only) {
  if (!p.is_full_dimensional() || !q.is_full_dimensional())
    throw PreconditionError("integral-affine search: polytopes must be full-dimensional");
  std::vector<AffineLatticeMap> out;
  const std::size_t n = p.ambient_dim();
  if (n != q.ambient_dim()) return out;
  const auto& pv = p.vertices();
  const auto& qv = q.vertices();
  if (pv.size() != qv.size()) return out;
  if (n == 0) {
    out.push_back(AffineLatticeMap::identity(0));
    return out;
  }
  if (p.lattice_points().size() != q.lattice_points().size()) return out;
  if (p.facets().size() != q.facets().size()) return out;

  auto padj = adjacency(p);
  auto qadj = adjacency(q);

  // Anchor: vertex 0 of p and n neighbors with independent edge directions.
  const std::size_t a0 = 0;
  std::vector<std::size_t> anchors;
  std::vector<IntVector> dirs;
  for (std::size_t nb : padj[a0]) {
    auto trial = dirs;
    trial.push_back(sub(pv[nb], pv[a0]));
    if (rank(IntMatrix::from_rows(trial, n)) == trial.size()) {
      dirs = std::move(trial);
      anchors.push_back(nb);
      if (anchors.size() == n) break;
    }
  }
  if (anchors.size() != n) throw InvariantViolation("integral-affine search: vertex cone not full-dimensional");
  const auto inv = rational_inverse(IntMatrix::from_columns(dirs, n));

  std::vector<IntVector> target = qv;  // sorted already
  std::vector<std::size_t> choice(n);
  std::vector<bool> used;

  for (std::size_t b0 = 0; b0 < qv.size(); ++b0) {
    if (qadj[b0].size() != padj[a0].size()) continue;
    used.assign(qv.size(), false);
    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
      if (depth == n) {
        // A = Mq * Mp^{-1}
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            Rat s = 0;
            for (std::size_t k = 0; k < n; ++k) s += Rat(qv[choice[k]][i] - qv[b0][i]) * inv[k][j];
            if (denominator(s) != 1) return false;
            a(i, j) = numerator(s);
          }
        Int det = determinant(a);
        if (det != 1 && det != -1) return false;
        IntVector t = sub(qv[b0], a * pv[a0]);
        AffineLatticeMap m(a, t);
        std::vector<IntVector> image;
        image.reserve(pv.size());
        for (const auto& v : pv) image.push_back(m.apply(v));
        std::sort(image.begin(), image.end(), lex_less);
        if (image != target) return false;
        out.push_back(std::move(m));
        return first_only;
      }
      for (std::size_t nb : qadj[b0]) {
        if (used[nb]) continue;
        used[nb] = true;
        choice[depth] = nb;
        if (rec(depth + 1)) return true;
        used[nb] = false;
      }
      return false;
    };
    if (rec(0)) break;
  }
  return out;
}

}  // namespace

std::optional<AffineLatticeMap> integral_affine_equivalent(const Polytope& p, const Polytope& q) {
  auto maps = affine_maps(p, q, true);
  if (maps.empty()) return std::nullopt;
  return maps.front();
}

std::vector<AffineLatticeMap> symmetry_maps(const Polytope& p) { return affine_maps(p, p, false); }

bool NormalCone::contains(const IntVector& functional) const {
  return std::all_of(generators.begin(), generators.end(),
                     [&](const IntVector& g) { return dot(functional, g) >= 0; });
}

std::vector<std::vector<IntVector>> NormalFan::canonical() const {
  std::vector<std::vector<IntVector>> c;
  for (const auto& cone : cones) c.push_back(cone.generators);
  std::sort(c.begin(), c.end());
  return c;
}

NormalFan normal_fan(const Polytope& p) {
  if (!p.is_full_dimensional() || p.dim() == 0)
    throw PreconditionError("normal_fan: polytope is not full-dimensional");
  auto adj = adjacency(p);
  NormalFan fan;
  const auto& vs = p.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    NormalCone cone{vs[i], {}};
    for (std::size_t j : adj[i]) cone.generators.push_back(primitive_part(sub(vs[i], vs[j])));
    std::sort(cone.generators.begin(), cone.generators.end());
    fan.cones.push_back(std::move(cone));
  }
  return fan;
}

bool projectively_equivalent(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) return false;
  if (!p.is_full_dimensional() || !q.is_full_dimensional()) return false;
  if (p.dim() == 0) return true;
  auto normals = [](const Polytope& x) {
    std::vector<IntVector> ns;
    for (const auto& f : x.facets()) ns.push_back(f.normal);
    return ns;  // facets are sorted by normal
  };
  if (normals(p) != normals(q)) return false;
  auto incidences = [](const Polytope& x) {
    std::vector<std::vector<IntVector>> inc(x.vertices().size());
    for (const auto& f : x.facets())
      for (std::size_t v : f.vertices) inc[v].push_back(f.normal);
    for (auto& s : inc) std::sort(s.begin(), s.end());
    std::sort(inc.begin(), inc.end());
    return inc;
  };
  return incidences(p) == incidences(q);
}

Int normalized_volume(const Polytope& p) {
  if (p.dim() == 0) return 1;
  if (!p.is_full_dimensional()) {
    std::vector<IntVector> local;
    for (const auto& v : p.vertices()) local.push_back(*p.affine_hull_chart().coordinates(v));
    return normalized_volume(Polytope::from_points(local));
  }
  if (p.dim() == 1) return p.vertices()[1][0] - p.vertices()[0][0];
  const IntVector& apex = p.vertices().front();
  Int total = 0;
  for (const auto& f : p.facets()) {
    Int h = f.evaluate(apex) - f.offset;
    if (h == 0) continue;
    std::vector<IntVector> face;
    for (std::size_t v : f.vertices) face.push_back(p.vertices()[v]);
    total += h * normalized_volume(Polytope::from_points(face));
  }
  return total;
}

}  // namespace polycol
