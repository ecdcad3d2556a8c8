#include "polysg/semigroup.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "polysg/errors.hpp"
#include "polysg/gapdecomp.hpp"

namespace polysg {

namespace {

using i128 = __int128;

i128 floor_div(i128 n, i128 d) { return n >= 0 ? n / d : -((-n + d - 1) / d); }
i128 ceil_div(i128 n, i128 d) { return n >= 0 ? (n + d - 1) / d : -((-n) / d); }

// Real interval {s > 0 : p in sP} as fractions with positive denominators.
struct Bounds {
  bool in_cone = false;
  bool has_hi = false;
  i128 lo_n = 0, lo_d = 1, hi_n = 0, hi_d = 1;
};

Bounds bounds(const SemigroupHandle& h, const LatticePoint& p) {
  Bounds b;
  for (const auto& f : h.lattice_facets) {
    i128 s = i128(f.normal[0]) * p.x + i128(f.normal[1]) * p.y + i128(f.normal[2]) * p.z;
    if (f.offset == 0) {
      if (s < 0) return b;
    } else if (f.offset > 0) {
      if (!b.has_hi || s * b.hi_d < b.hi_n * f.offset) {
        b.hi_n = s;
        b.hi_d = f.offset;
        b.has_hi = true;
      }
    } else if (-s * b.lo_d > b.lo_n * -i128(f.offset)) {
      b.lo_n = -s;
      b.lo_d = -i128(f.offset);
    }
  }
  if (b.has_hi) {
    if (b.hi_n <= 0) return b;
    if (b.lo_n * b.hi_d > b.hi_n * b.lo_d) return b;
  }
  b.in_cone = true;
  return b;
}

std::vector<std::array<std::int64_t, 3>> integer_cone_facets(const SemigroupHandle& h) {
  std::vector<std::array<std::int64_t, 3>> out;
  for (const auto& n : h.cone_facets) out.push_back({to_int64(n.x.get_num()), to_int64(n.y.get_num()), to_int64(n.z.get_num())});
  return out;
}

// Calls fn on every lattice point of the cone with coordinate sum d.
template <class Fn>
void for_each_cone_point(const std::vector<std::array<std::int64_t, 3>>& cone, std::int64_t d, Fn&& fn) {
  for (std::int64_t x = 0; x <= d; ++x)
    for (std::int64_t y = 0; y <= d - x; ++y) {
      LatticePoint p{x, y, d - x - y};
      bool ok = true;
      for (const auto& n : cone)
        if (i128(n[0]) * p.x + i128(n[1]) * p.y + i128(n[2]) * p.z < 0) {
          ok = false;
          break;
        }
      if (ok) fn(p);
    }
}

std::int64_t degree_cap(const SemigroupHandle& h, std::int64_t layer) {
  return to_int64(floor_rat(Rat(layer) * h.max_degree));
}

void check_budget(std::int64_t layer, const SearchOptions& opts, const char* what) {
  if (layer > opts.budget_layers && !opts.allow_partial)
    throw Error(ErrorKind::BudgetExceeded,
                std::string(what) + " not certified within " + std::to_string(opts.budget_layers) + " layers");
}

}  // namespace

PointStatus SemigroupHandle::locate(const LatticePoint& p, std::int64_t* layer) const {
  if (p.is_zero()) {
    if (layer) *layer = 0;
    return PointStatus::Member;
  }
  if (!p.nonnegative()) return PointStatus::OutsideCone;
  Bounds b = bounds(*this, p);
  if (!b.in_cone) return PointStatus::OutsideCone;
  i128 kmin = std::max<i128>(1, ceil_div(b.lo_n, b.lo_d));
  if (b.has_hi && kmin > floor_div(b.hi_n, b.hi_d)) return PointStatus::Gap;
  if (layer) *layer = static_cast<std::int64_t>(kmin);
  return PointStatus::Member;
}

bool SemigroupHandle::below_level(const LatticePoint& p, std::int64_t k) const {
  if (p.is_zero()) return true;
  if (!p.nonnegative()) return false;
  Bounds b = bounds(*this, p);
  return b.in_cone && b.lo_n <= i128(k) * b.lo_d;
}

bool SemigroupHandle::in_cone(const Point3& p) const {
  for (const auto& n : cone_facets)
    if (sgn(dot(n, p)) < 0) return false;
  return true;
}

int SemigroupHandle::ray_index(const Point3& p) const {
  if (p.is_zero()) return -1;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (same_ray(p, rays[i])) return static_cast<int>(i);
  return -1;
}

std::int64_t SemigroupHandle::ray_point_denominator(int i) const { return to_int64(denominator_lcm(ray_point(i))); }

SemigroupHandle build(std::span<const Point3> vertices) {
  for (const auto& v : vertices)
    if (sgn(v.x) < 0 || sgn(v.y) < 0 || sgn(v.z) < 0)
      throw Error(ErrorKind::DegenerateInput, "vertex outside the nonnegative orthant: " + to_string(v));
  SemigroupHandle h;
  h.body = convex_hull(vertices);
  const Point3 origin{Rat(0), Rat(0), Rat(0)};
  h.origin_inside = contains(h.body, origin);

  std::vector<Point3> dirs;
  for (const auto& v : h.body.vertices) {
    if (v.is_zero()) continue;
    Point3 d = primitive_direction(v);
    if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
  }
  std::sort(dirs.begin(), dirs.end());

  std::vector<Point3> normals;
  for (std::size_t a = 0; a < dirs.size(); ++a)
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      Point3 n = cross(dirs[a], dirs[b]);
      if (n.is_zero()) continue;
      bool pos = true, neg = true;
      for (const auto& d : dirs) {
        int s = sgn(dot(n, d));
        if (s < 0) pos = false;
        if (s > 0) neg = false;
      }
      if (!pos && !neg) continue;
      if (!pos) n = -n;
      n = primitive_direction(n);
      if (std::find(normals.begin(), normals.end(), n) == normals.end()) normals.push_back(n);
    }
  std::sort(normals.begin(), normals.end());
  h.cone_facets = normals;

  std::vector<Point3> extreme;
  for (const auto& d : dirs) {
    int on = 0;
    for (const auto& n : normals)
      if (sgn(dot(n, d)) == 0) ++on;
    if (on >= 2) extreme.push_back(d);
  }
  if (extreme.size() < 3) throw Error(ErrorKind::DegenerateInput, "cone over the polyhedron is not pointed and full");

  // Cyclic order: walk facet adjacency from the lexicographically smallest ray.
  auto share_facet = [&](const Point3& a, const Point3& b) {
    for (const auto& n : normals)
      if (sgn(dot(n, a)) == 0 && sgn(dot(n, b)) == 0) return true;
    return false;
  };
  std::vector<Point3> order{extreme.front()};
  std::vector<bool> used(extreme.size(), false);
  used[0] = true;
  std::vector<int> first_nb;
  for (std::size_t j = 1; j < extreme.size(); ++j)
    if (share_facet(extreme[0], extreme[j])) first_nb.push_back(static_cast<int>(j));
  if (first_nb.size() != 2) throw Error(ErrorKind::DegenerateInput, "cone facet structure is inconsistent");
  int next = first_nb[0];
  if (sgn(det3(extreme[0], extreme[first_nb[0]], extreme[first_nb[1]])) < 0) next = first_nb[1];
  while (next >= 0) {
    used[next] = true;
    order.push_back(extreme[next]);
    int cur = next;
    next = -1;
    for (std::size_t j = 0; j < extreme.size(); ++j)
      if (!used[j] && share_facet(extreme[cur], extreme[j])) {
        next = static_cast<int>(j);
        break;
      }
  }
  if (order.size() != extreme.size()) throw Error(ErrorKind::DegenerateInput, "cone facet structure is inconsistent");
  h.rays = order;
  h.simplicial = h.rays.size() == 3;

  for (const auto& d : h.rays) {
    RayHit hit = ray_intersect(h.body, d);
    if (hit.kind == RayHit::Kind::Empty) throw Error(ErrorKind::DegenerateInput, "extremal ray misses the polyhedron");
    h.ray_data.push_back(hit);
  }

  for (const auto& f : h.body.facets) {
    BigInt den = f.offset.get_den();
    LatticeFacet lf{};
    for (int c = 0; c < 3; ++c) lf.normal[c] = to_int64(BigInt(f.normal[c].get_num() * den));
    lf.offset = to_int64(f.offset.get_num());
    h.lattice_facets.push_back(lf);
  }

  h.min_degree = h.max_degree = h.body.vertices.front().x + h.body.vertices.front().y + h.body.vertices.front().z;
  for (const auto& v : h.body.vertices) {
    Rat d = v.x + v.y + v.z;
    if (d < h.min_degree) h.min_degree = d;
    if (d > h.max_degree) h.max_degree = d;
  }

  for (std::size_t i = 0; i < h.rays.size(); ++i) h.ray_generators.push_back(ray_generator(h, static_cast<int>(i)));
  return h;
}

Membership member(const SemigroupHandle& h, const LatticePoint& p) {
  std::int64_t k = -1;
  PointStatus s = h.locate(p, &k);
  if (s == PointStatus::OutsideCone) throw Error(ErrorKind::OutsideCone, to_string(p) + " is not in the cone");
  Membership m;
  m.in = s == PointStatus::Member;
  if (m.in) m.witness_k = k;
  return m;
}

Point3 ray_generator(const SemigroupHandle& h, int i) {
  if (i < 0 || i >= static_cast<int>(h.rays.size())) throw Error(ErrorKind::BadParameter, "ray index out of range");
  const RayHit& hit = h.ray_data[i];
  if (hit.kind == RayHit::Kind::Point) {
    Point3 p = h.ray_point(i);
    return Rat(denominator_lcm(p)) * p;
  }
  if (sgn(hit.lambda_lo) == 0) return h.rays[i];
  // Smallest m >= 1 with k*lo <= m <= k*hi for some integer k >= 1.
  for (std::int64_t m = 1;; ++m) {
    Rat mr(m);
    BigInt kmin = ceil_rat(mr / hit.lambda_hi);
    if (kmin < 1) kmin = 1;
    if (kmin <= floor_rat(mr / hit.lambda_lo)) return mr * h.rays[i];
  }
}

std::int64_t period_length(const SemigroupHandle& h) {
  BigInt l(1);
  for (std::size_t i = 0; i < h.rays.size(); ++i)
    if (h.ray_data[i].kind == RayHit::Kind::Point) l = lcm(l, BigInt(h.ray_point_denominator(static_cast<int>(i))));
  return to_int64(l);
}

GeneratorSet sieve_generators(const SemigroupHandle& h, const MonoidPredicate& in_monoid, std::int64_t start,
                              std::int64_t period, const SearchOptions& opts) {
  auto cone = integer_cone_facets(h);
  std::vector<LatticePoint> gens;  // discovery order, by degree
  std::vector<std::int64_t> layers;
  std::int64_t max_layer = 0;
  std::int64_t done_degree = 0;
  GeneratorSet out;
  std::int64_t J = 1;
  for (;; ++J) {
    if (J > opts.budget_layers) {
      check_budget(J, opts, "minimal generating set");
      break;
    }
    std::int64_t cap = degree_cap(h, J);
    for (std::int64_t d = done_degree + 1; d <= cap; ++d)
      for_each_cone_point(cone, d, [&](const LatticePoint& p) {
        if (!in_monoid(p)) return;
        for (const auto& g : gens) {
          LatticePoint r = p - g;
          if (r.nonnegative() && in_monoid(r)) return;
        }
        std::int64_t k = -1;
        if (h.locate(p, &k) != PointStatus::Member) k = -1;
        gens.push_back(p);
        layers.push_back(k);
        max_layer = std::max(max_layer, k);
      });
    done_degree = std::max(done_degree, cap);
    // Two generator-free periods past the periodic regime: one to stop, one to certify.
    if (J >= start + 2 * period && max_layer <= J - 2 * period) {
      out.certified = true;
      break;
    }
  }
  out.layers_scanned = std::min(J, opts.budget_layers);
  std::vector<std::size_t> idx(gens.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gens[a] < gens[b]; });
  for (auto i : idx) {
    out.generators.push_back(gens[i]);
    out.layer_index.push_back(layers[i]);
  }
  return out;
}

GeneratorSet minimal_generators(const SemigroupHandle& h, const SearchOptions& opts) {
  auto cls = classify(h);
  std::int64_t k0 = kappa0(h, cls);
  return sieve_generators(h, [&h](const LatticePoint& p) { return h.in_semigroup(p); }, k0, period_length(h), opts);
}

std::vector<LatticePoint> maximal_elements(std::span<const LatticePoint> elements, const MonoidPredicate& in_monoid) {
  std::vector<LatticePoint> out;
  for (const auto& x : elements) {
    bool maximal = true;
    for (const auto& y : elements) {
      if (y == x) continue;
      LatticePoint d = y - x;
      if (d.nonnegative() && in_monoid(d)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(x);
  }
  return out;
}

AperyBasis apery_intersection(const SemigroupHandle& h, const MonoidPredicate& in_monoid,
                              std::span<const LatticePoint> ray_gens, const SearchOptions& opts,
                              const MonoidPredicate& slice) {
  auto cls = classify(h);
  std::int64_t start = kappa0(h, cls);
  std::int64_t period = period_length(h);
  std::int64_t G = 0;
  for (const auto& g : ray_gens) {
    std::int64_t k = 0;
    h.locate(g, &k);
    G = std::max(G, k);
  }
  std::int64_t window = period + G;
  auto cone = integer_cone_facets(h);
  AperyBasis out;
  out.elements.push_back(LatticePoint{});
  std::int64_t max_layer = 0;
  std::int64_t done_degree = 0;
  std::int64_t J = 1;
  for (;; ++J) {
    if (J > opts.budget_layers) {
      check_budget(J, opts, "Apery intersection");
      break;
    }
    std::int64_t cap = degree_cap(h, J);
    for (std::int64_t d = done_degree + 1; d <= cap; ++d)
      for_each_cone_point(cone, d, [&](const LatticePoint& p) {
        if (slice && !slice(p)) return;
        if (!in_monoid(p)) return;
        for (const auto& g : ray_gens) {
          LatticePoint r = p - g;
          if (r.nonnegative() && in_monoid(r)) return;
        }
        std::int64_t k = -1;
        if (h.locate(p, &k) != PointStatus::Member) k = -1;
        out.elements.push_back(p);
        max_layer = std::max(max_layer, k);
      });
    done_degree = std::max(done_degree, cap);
    if (J >= start + window + period && max_layer <= J - window - period) {
      out.certified = true;
      break;
    }
  }
  out.layers_scanned = std::min(J, opts.budget_layers);
  std::sort(out.elements.begin(), out.elements.end());
  out.maximal_elements = maximal_elements(out.elements, in_monoid);
  return out;
}

AperyBasis apery_intersection(const SemigroupHandle& h, const SearchOptions& opts) {
  if (!h.simplicial) throw Error(ErrorKind::NotSimplicial, "Apery intersection needs exactly three extremal rays");
  std::vector<LatticePoint> gens;
  for (const auto& g : h.ray_generators) gens.push_back(to_lattice(g));
  return apery_intersection(h, [&h](const LatticePoint& p) { return h.in_semigroup(p); }, gens, opts);
}

ClosureSemigroup::ClosureSemigroup(const SemigroupHandle& h, std::vector<LatticePoint> added)
    : handle_(&h), added_sorted_(std::move(added)) {
  std::sort(added_sorted_.begin(), added_sorted_.end());
  added_sorted_.erase(std::unique(added_sorted_.begin(), added_sorted_.end()), added_sorted_.end());
  added_.insert(added_sorted_.begin(), added_sorted_.end());
}

bool ClosureSemigroup::contains(const LatticePoint& p) const {
  if (!p.nonnegative()) return false;
  return handle_->in_semigroup(p) || added_.count(p) > 0;
}

std::vector<LatticePoint> ClosureSemigroup::ray_generators() const {
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < handle_->rays.size(); ++i) {
    LatticePoint d = to_lattice(handle_->rays[i]);
    for (std::int64_t m = 1;; ++m)
      if (contains(m * d)) {
        out.push_back(m * d);
        break;
      }
  }
  return out;
}

MonoidPredicate ClosureSemigroup::predicate() const {
  return [this](const LatticePoint& p) { return contains(p); };
}

std::vector<LatticePoint> lattice_points_below(const SemigroupHandle& h, std::int64_t k) {
  auto cone = integer_cone_facets(h);
  std::vector<LatticePoint> out;
  std::int64_t cap = degree_cap(h, k);
  for (std::int64_t d = 0; d <= cap; ++d)
    for_each_cone_point(cone, d, [&](const LatticePoint& p) {
      if (h.below_level(p, k)) out.push_back(p);
    });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> closure_added_points(const SemigroupHandle& h, std::span<const LatticePoint> generators) {
  auto cls = classify(h);
  std::int64_t k = kappa0(h, cls) + period_length(h);
  std::vector<LatticePoint> out;
  for (const auto& a : lattice_points_below(h, k)) {
    if (h.locate(a) != PointStatus::Gap) continue;
    bool all = true;
    for (const auto& g : generators)
      if (!h.in_semigroup(a + g)) {
        all = false;
        break;
      }
    if (all) out.push_back(a);
  }
  return out;
}

ClosureResult closure(const SemigroupHandle& h, const GeneratorSet& generators, const SearchOptions& opts) {
  ClosureResult r;
  r.added_points = closure_added_points(h, generators.generators);
  ClosureSemigroup sbar(h, r.added_points);
  auto cls = classify(h);
  std::int64_t L = period_length(h);
  r.gens_of_closure = sieve_generators(h, sbar.predicate(), kappa0(h, cls) + L, L, opts);
  return r;
}

}  // namespace polysg
