#include "polycol/algebra.hpp"

#include "polycol/json_util.hpp"

#include <deque>
#include <sstream>

namespace polycol {

const std::set<IntVector>& SemigroupLayers::layer(std::size_t d) {
  const auto& pts = polytope_.lattice_points();
  while (layers_.size() <= d) {
    std::set<IntVector> next;
    for (const auto& z : layers_.back())
      for (const auto& x : pts) next.insert(add(z, x));
    layers_.push_back(std::move(next));
  }
  return layers_[d];
}

bool sp_membership(const Polytope& p, const IntVector& z, const Int& d) {
  if (d < 0) throw InvalidInput("sp_membership: negative degree");
  if (z.size() != p.ambient_dim()) throw InvalidInput("sp_membership: dimension mismatch");
  const std::size_t deg = detail::small(d, "degree");
  if (deg == 0) return is_zero(z);
  // z / d must lie in P
  for (const auto& f : p.facets())
    if (f.evaluate(z) < d * f.offset) return false;

  // (z, d) in S_P iff (z - x, d - 1) in S_P for some x in L_P
  std::map<std::pair<IntVector, std::size_t>, bool> memo;
  std::function<bool(const IntVector&, std::size_t)> member = [&](const IntVector& y, std::size_t k) -> bool {
    if (k == 0) return is_zero(y);
    for (const auto& f : p.facets())
      if (f.evaluate(y) < Int(k) * f.offset) return false;
    auto key = std::make_pair(y, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool found = false;
    for (const auto& x : p.lattice_points()) {
      if (member(sub(y, x), k - 1)) {
        found = true;
        break;
      }
    }
    memo[key] = found;
    return found;
  };
  if (!p.is_full_dimensional()) {
    SemigroupLayers layers(p);
    return layers.contains(z, deg);
  }
  return member(z, deg);
}

ColumnsPropertyResult columns_property_check(const Polytope& p, const IntVector& v, std::size_t facet,
                                             std::size_t max_degree) {
  const FacetForm& f = p.facets().at(facet);
  SemigroupLayers layers(p);
  ColumnsPropertyResult r;
  for (std::size_t d = 1; d <= max_degree; ++d) {
    for (const auto& z : layers.layer(d)) {
      if (f.evaluate(z) - Int(d) * f.offset == 0) continue;
      ++r.checked;
      if (!layers.contains(add(z, v), d)) {
        r.holds = false;
        r.counterexample = {z, d};
        return r;
      }
    }
  }
  return r;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = i;
  return r;
}

Permutation identity_permutation(std::size_t n) {
  Permutation r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

std::vector<Permutation> generated_group(const std::vector<Permutation>& generators, std::size_t n) {
  std::set<Permutation> seen{identity_permutation(n)};
  std::deque<Permutation> queue{identity_permutation(n)};
  while (!queue.empty()) {
    Permutation g = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      Permutation h = compose(s, g);
      if (seen.insert(h).second) queue.push_back(std::move(h));
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Permutation> sigma_permutations(const Polytope& p) {
  const auto& pts = p.lattice_points();
  std::set<Permutation> out;
  for (const auto& m : symmetry_maps(p)) {
    Permutation perm(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto j = p.lattice_index(m.apply(pts[i]));
      if (!j) throw InvariantViolation("symmetry map leaves the lattice points of P");
      perm[i] = *j;
    }
    out.insert(perm);
  }
  for (const auto& a : out)
    for (const auto& b : out)
      if (!out.count(compose(a, b))) throw InvariantViolation("Sigma(P) is not closed under composition");
  return {out.begin(), out.end()};
}

Permutation column_inversion_permutation(const ColumnStructure& cs, std::size_t v) {
  auto nv = cs.index_of(negated(cs[v].v));
  if (!nv) throw PreconditionError("column inversion: -v is not a column vector");
  const Polytope& p = cs.polytope();
  const auto& pts = p.lattice_points();
  Permutation perm(pts.size());
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Int t = cs.height(v, pts[i], 1) - cs.height(*nv, pts[i], 1);
    auto j = p.lattice_index(add(pts[i], scaled(cs[v].v, t)));
    if (!j) throw InvariantViolation("column inversion leaves the polytope at " + to_string(pts[i]));
    perm[i] = *j;
    hit.insert(*j);
  }
  if (hit.size() != pts.size()) throw InvariantViolation("column inversion is not a bijection of L_P");
  auto sigma = sigma_permutations(p);
  if (!std::binary_search(sigma.begin(), sigma.end(), perm))
    throw InvariantViolation("column inversion is not an integral-affine symmetry");
  return perm;
}

InversionSubgroup inversion_subgroup(const ColumnStructure& cs) {
  InversionSubgroup r;
  r.sigma = sigma_permutations(cs.polytope());
  std::set<Permutation> gens;
  for (std::size_t v = 0; v < cs.size(); ++v)
    if (cs.index_of(negated(cs[v].v))) gens.insert(column_inversion_permutation(cs, v));
  r.generators.assign(gens.begin(), gens.end());
  const std::size_t n = cs.polytope().lattice_points().size();
  r.subgroup = generated_group(r.generators, n);
  r.normal = true;
  for (const auto& g : r.sigma)
    for (const auto& s : r.generators)
      if (!std::binary_search(r.subgroup.begin(), r.subgroup.end(), compose(compose(g, s), inverse(g))))
        r.normal = false;
  return r;
}

bool SteinbergReport::all_passed() const {
  for (const auto& [c, ok] : additivity)
    if (!ok) return false;
  if (!balanced) return false;
  for (const auto& p : pairs)
    if (!p.passed) return false;
  return true;
}

namespace {

using PolyAut = GradedAutomorphism<PolynomialRing>;

PolyAut commutator(const PolyAut& a, const PolyAut& b) {
  return a.compose(b).compose(a.invert()).compose(b.invert());
}

}  // namespace

SteinbergReport verify_steinberg_relations(const ColumnStructure& cs) {
  const PolynomialRing ring;
  const IntPoly lambda = IntPoly::variable("lambda"), mu = IntPoly::variable("mu");
  SteinbergReport r;
  for (std::size_t u = 0; u < cs.size(); ++u) {
    auto lhs = PolyAut::elementary(cs, ring, u, lambda).compose(PolyAut::elementary(cs, ring, u, mu));
    r.additivity.push_back({u, lhs.equals(PolyAut::elementary(cs, ring, u, lambda + mu))});
  }
  r.balanced = is_balanced(cs).balanced;
  if (!r.balanced) return r;

  for (std::size_t u = 0; u < cs.size(); ++u) {
    for (std::size_t v = 0; v < cs.size(); ++v) {
      IntVector sum = add(cs[u].v, cs[v].v);
      if (is_zero(sum)) continue;
      PolyAut c = commutator(PolyAut::elementary(cs, ring, u, lambda), PolyAut::elementary(cs, ring, v, mu));
      PairReport pr{u, v, {}, true, {}};
      if (auto w = cs.product_index(u, v)) {
        pr.status = "product";
        pr.passed = c.equals(PolyAut::elementary(cs, ring, *w, -(lambda * mu)));
      } else if (auto w = cs.index_of(sum); !w) {
        pr.status = "commute";
        pr.passed = c.is_identity();
      } else {
        pr.status = "stable-only";
        if (c.is_identity())
          pr.observed = "identity";
        else if (c.equals(PolyAut::elementary(cs, ring, *w, -(lambda * mu))))
          pr.observed = "e_{u+v}^{-lambda*mu}";
        else if (c.equals(PolyAut::elementary(cs, ring, *w, lambda * mu)))
          pr.observed = "e_{u+v}^{lambda*mu}";
        else
          pr.observed = "other";
      }
      r.pairs.push_back(std::move(pr));
    }
  }
  return r;
}

AfembReport verify_afemb(const ColumnStructure& cs, std::size_t facet) {
  AfembReport r;
  r.facet = facet;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].base_facet == facet) r.columns.push_back(i);
  if (r.columns.size() < 2) {
    r.vacuous = true;
    return r;
  }
  const PolynomialRing ring;
  const std::size_t k = r.columns.size();
  auto var = [](const std::string& name, std::size_t i) { return IntPoly::variable(name + std::to_string(i + 1)); };

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto a = PolyAut::elementary(cs, ring, r.columns[i], var("t", i));
      auto b = PolyAut::elementary(cs, ring, r.columns[j], var("t", j));
      if (!a.compose(b).equals(b.compose(a))) r.commute = false;
    }

  // phi(s + t) = phi(s) phi(t), phi(x) = prod_i e_{v_i}^{x_i}
  auto phi = [&](const std::function<IntPoly(std::size_t)>& coord) {
    PolyAut g = PolyAut::identity(cs, ring);
    for (std::size_t i = 0; i < k; ++i) g = g.compose(PolyAut::elementary(cs, ring, r.columns[i], coord(i)));
    return g;
  };
  auto s = [&](std::size_t i) { return var("s", i); };
  auto t = [&](std::size_t i) { return var("t", i); };
  r.homomorphism = phi([&](std::size_t i) { return s(i) + t(i); }).equals(phi(s).compose(phi(t)));
  for (std::size_t i = 0; i < k && r.homomorphism; ++i) {
    auto lhs = PolyAut::elementary(cs, ring, r.columns[i], s(i) + t(i));
    auto rhs = PolyAut::elementary(cs, ring, r.columns[i], s(i)).compose(PolyAut::elementary(cs, ring, r.columns[i], t(i)));
    r.homomorphism = lhs.equals(rhs);
  }

  // 25 distinct parameter tuples over Q
  const RationalRing q;
  std::set<std::vector<std::vector<Rat>>> images;
  for (long long a = 0; a < 5; ++a)
    for (long long b = 0; b < 5; ++b) {
      auto g = GradedAutomorphism<RationalRing>::identity(cs, q);
      for (std::size_t i = 0; i < k; ++i) {
        Rat x(Int((a + static_cast<long long>(i) * b) % 5 - 2), Int(static_cast<long long>(i) + 1));
        g = g.compose(GradedAutomorphism<RationalRing>::elementary(cs, q, r.columns[i], x));
      }
      ++r.grid_points;
      images.insert(g.matrix());
    }
  r.distinct_matrices = images.size();
  return r;
}

std::string steinberg_presentation_text(const ColumnStructure& cs, std::optional<long long> modulus) {
  if (!is_balanced(cs).balanced) throw PreconditionError("presentation: polytope must be balanced");
  std::ostringstream os;
  auto name = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i < cs.size(); ++i)
    os << "# " << name(i) << " = " << to_string(cs[i].v) << " base=" << cs[i].base_facet << '\n';
  for (std::size_t i = 0; i < cs.size(); ++i) os << "GEN " << name(i) << " base=" << cs[i].base_facet << '\n';
  for (std::size_t i = 0; i < cs.size(); ++i) os << "REL add " << name(i) << '\n';

  struct Comm {
    std::size_t u, v;
    std::optional<std::size_t> w;
  };
  std::vector<Comm> comms;
  for (std::size_t u = 0; u < cs.size(); ++u)
    for (std::size_t v = 0; v < cs.size(); ++v) {
      if (u == v) continue;
      IntVector sum = add(cs[u].v, cs[v].v);
      if (is_zero(sum)) continue;
      if (auto w = cs.product_index(u, v)) {
        comms.push_back({u, v, w});
      } else if (!cs.index_of(sum)) {
        if (u < v) comms.push_back({u, v, std::nullopt});
      } else {
        os << "# skip " << name(u) << ' ' << name(v) << " (sum is a column vector, no product)\n";
      }
    }
  for (const auto& c : comms) {
    os << "REL comm " << name(c.u) << ' ' << name(c.v) << " -> ";
    if (c.w)
      os << name(*c.w) << " sign=-1\n";
    else
      os << "1\n";
  }

  if (modulus) {
    const long long p = *modulus;
    if (p < 2) throw InvalidInput("presentation: modulus must be >= 2");
    auto gen = [&](std::size_t i, long long a) { return "x" + std::to_string(i) + "^" + std::to_string(a); };
    os << "# instantiated over Z/" << p << '\n';
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (long long a = 1; a < p; ++a) os << "IGEN " << gen(i, a) << '\n';
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (long long a = 1; a < p; ++a)
        for (long long b = 1; b < p; ++b) {
          long long s = (a + b) % p;
          os << "IREL " << gen(i, a) << ' ' << gen(i, b) << " = " << (s ? gen(i, s) : "1") << '\n';
        }
    for (const auto& c : comms)
      for (long long a = 1; a < p; ++a)
        for (long long b = 1; b < p; ++b) {
          os << "IREL [" << gen(c.u, a) << ',' << gen(c.v, b) << "] = ";
          if (c.w) {
            long long e = ((-a * b) % p + p) % p;
            os << (e ? gen(*c.w, e) : "1") << '\n';
          } else {
            os << "1\n";
          }
        }
  }
  return os.str();
}

std::string steinberg_presentation_json(const ColumnStructure& cs) {
  if (!is_balanced(cs).balanced) throw PreconditionError("presentation: polytope must be balanced");
  nlohmann::json gens = nlohmann::json::array(), rels = nlohmann::json::array();
  auto name = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i < cs.size(); ++i)
    gens.push_back({{"name", name(i)}, {"v", vector_to_json(cs[i].v)}, {"base", cs[i].base_facet}});
  for (std::size_t i = 0; i < cs.size(); ++i) rels.push_back({{"type", "add"}, {"gen", name(i)}});
  for (std::size_t u = 0; u < cs.size(); ++u)
    for (std::size_t v = 0; v < cs.size(); ++v) {
      if (u == v) continue;
      IntVector sum = add(cs[u].v, cs[v].v);
      if (is_zero(sum)) continue;
      if (auto w = cs.product_index(u, v))
        rels.push_back({{"type", "comm"}, {"left", name(u)}, {"right", name(v)}, {"result", name(*w)}, {"sign", -1}});
      else if (!cs.index_of(sum) && u < v)
        rels.push_back({{"type", "comm"}, {"left", name(u)}, {"right", name(v)}, {"result", nullptr}});
    }
  return nlohmann::json{{"generators", gens}, {"relations", rels}}.dump(2);
}

std::size_t reported_group_dimension(const ColumnStructure& cs) {
  return cs.size() + cs.polytope().ambient_dim() + 1;
}

}  // namespace polycol
