#include "polysg/gapdecomp.hpp"

#include <algorithm>
#include <map>

#include "polysg/errors.hpp"

namespace polysg {

namespace {

using i128 = __int128;

bool in_dilate(const SemigroupHandle& h, const LatticePoint& p, std::int64_t k) {
  for (const auto& f : h.lattice_facets) {
    i128 s = i128(f.normal[0]) * p.x + i128(f.normal[1]) * p.y + i128(f.normal[2]) * p.z;
    if (s < i128(k) * f.offset) return false;
  }
  return true;
}

struct CornerPoint {
  Point3 point;
  int neighbour;
};

int near_vertex_checked(const SemigroupHandle& h, const VertexClassification& cls, int i) {
  if (i < 0 || i >= static_cast<int>(h.rays.size())) throw Error(ErrorKind::BadParameter, "ray index out of range");
  int v = cls.near_vertex[i];
  if (v < 0 || cls.of_vertex[v] != VertexClass::W)
    throw Error(ErrorKind::BadParameter, "ray " + std::to_string(i) + " does not meet P in a single point");
  return v;
}

void require_level(const SemigroupHandle& h, const VertexClassification& cls, std::int64_t k) {
  if (k < kappa0(h, cls)) throw Error(ErrorKind::BadParameter, "level below kappa0");
}

std::vector<CornerPoint> corner_points(const SemigroupHandle& h, const VertexClassification& cls, int i, std::int64_t k) {
  int v = near_vertex_checked(h, cls, i);
  const Point3& P = h.body.vertices[v];
  Polyhedron lower = dilate(h.body, Rat(k));
  Polyhedron upper = dilate(h.body, Rat(k + 1));
  std::vector<CornerPoint> out;
  for (int q : h.body.neighbours(v)) {
    VertexClass c = cls.of_vertex[q];
    if (c == VertexClass::W) continue;
    const Point3& Q = h.body.vertices[q];
    bool near = c == VertexClass::V1 || c == VertexClass::W1;
    Rat s = near ? Rat(k + 1) : Rat(k);
    Point3 a = s * P, b = s * Q;
    auto clip = clip_segment(near ? lower : upper, a, b);
    if (!clip || sgn(clip->first) == 0)
      throw Error(ErrorKind::AssumptionViolated, "no entry point on the edge towards " + to_string(Q) + " at level " +
                                                     std::to_string(k));
    out.push_back({a + clip->first * (b - a), q});
  }
  return out;
}

// Orders the fan around ray i from the side of the previous ray to the side of the next one.
std::vector<Point3> fan_order(const SemigroupHandle& h, int i, std::vector<CornerPoint> pts) {
  int t = static_cast<int>(h.rays.size());
  const Point3& d = h.rays[i];
  const Point3& prev = h.rays[(i + t - 1) % t];
  const Point3& next = h.rays[(i + 1) % t];
  int orient = sgn(det3(d, prev, next));
  std::sort(pts.begin(), pts.end(), [&](const CornerPoint& a, const CornerPoint& b) {
    int s = sgn(det3(d, a.point, b.point)) * orient;
    if (s != 0) return s > 0;
    return a.point < b.point;
  });
  std::vector<Point3> out;
  for (auto& p : pts)
    if (out.empty() || !(out.back() == p.point)) out.push_back(p.point);
  return out;
}

}  // namespace

const char* class_name(VertexClass c) {
  switch (c) {
    case VertexClass::W: return "W";
    case VertexClass::W1: return "W1";
    case VertexClass::W2: return "W2";
    case VertexClass::V1: return "V1";
    case VertexClass::V2: return "V2";
  }
  return "?";
}

bool VertexClassification::ray_is_point(int ray) const {
  int v = near_vertex[ray];
  return v >= 0 && of_vertex[v] == VertexClass::W;
}

VertexClassification classify(const SemigroupHandle& h) {
  VertexClassification cls;
  std::size_t n = h.body.vertices.size();
  cls.of_vertex.resize(n);
  cls.paired_point.resize(n);
  cls.ray_of_vertex.assign(n, -1);
  cls.near_vertex.assign(h.rays.size(), -1);
  for (std::size_t vi = 0; vi < n; ++vi) {
    const Point3& v = h.body.vertices[vi];
    int idx = static_cast<int>(vi);
    if (v.is_zero()) {
      cls.of_vertex[vi] = VertexClass::V1;
      cls.paired_point[vi] = v;
      cls.V1.push_back(idx);
      continue;
    }
    Point3 d = primitive_direction(v);
    RayHit hit = ray_intersect(h.body, d);
    int ray = h.ray_index(d);
    cls.ray_of_vertex[vi] = ray;
    int axis = sgn(d.x) != 0 ? 0 : (sgn(d.y) != 0 ? 1 : 2);
    Rat lambda = v[axis] / d[axis];
    VertexClass c;
    if (hit.kind == RayHit::Kind::Point) {
      c = ray >= 0 ? VertexClass::W : VertexClass::V1;
      cls.paired_point[vi] = v;
    } else if (lambda == hit.lambda_lo) {
      c = ray >= 0 ? VertexClass::W1 : VertexClass::V1;
      cls.paired_point[vi] = hit.lambda_hi * d;
    } else {
      c = ray >= 0 ? VertexClass::W2 : VertexClass::V2;
      cls.paired_point[vi] = hit.lambda_lo * d;
    }
    cls.of_vertex[vi] = c;
    switch (c) {
      case VertexClass::W: cls.W.push_back(idx); break;
      case VertexClass::W1: cls.W1.push_back(idx); break;
      case VertexClass::W2: cls.W2.push_back(idx); break;
      case VertexClass::V1: cls.V1.push_back(idx); break;
      case VertexClass::V2: cls.V2.push_back(idx); break;
    }
    if (ray >= 0 && (c == VertexClass::W || c == VertexClass::W1)) cls.near_vertex[ray] = idx;
  }
  return cls;
}

std::int64_t kappa0(const SemigroupHandle& h, const VertexClassification& cls) {
  std::int64_t best = 0;
  for (std::size_t vi = 0; vi < h.body.vertices.size(); ++vi) {
    const Point3& v = h.body.vertices[vi];
    if (v.is_zero() || cls.of_vertex[vi] == VertexClass::W) continue;
    const Point3& w = cls.paired_point[vi];
    if (w.is_zero()) continue;
    if (w == v)
      throw Error(ErrorKind::AssumptionViolated,
                  "vertex " + to_string(v) + " is the only point of P on its non-extremal ray");
    Rat rho;
    for (int c = 0; c < 3; ++c)
      if (sgn(v[c]) != 0) {
        rho = v[c] / w[c];
        break;
      }
    if (rho < 1) rho = 1 / rho;
    std::int64_t k = to_int64(floor_rat(1 / (rho - 1))) + 1;
    best = std::max(best, k);
  }
  return best;
}

std::vector<Point3> corner_vertex_set(const SemigroupHandle& h, const VertexClassification& cls, int i, std::int64_t k) {
  require_level(h, cls, k);
  int v = near_vertex_checked(h, cls, i);
  const Point3& P = h.body.vertices[v];
  std::vector<Point3> out{Rat(k) * P, Rat(k + 1) * P};
  for (auto& c : corner_points(h, cls, i, k))
    if (std::find(out.begin(), out.end(), c.point) == out.end()) out.push_back(c.point);
  return out;
}

SlabSet slabs(const SemigroupHandle& h, const VertexClassification& cls, std::int64_t k) {
  require_level(h, cls, k);
  SlabSet s;
  int t = static_cast<int>(h.rays.size());
  std::vector<int> corner_of_ray(t, -1);
  for (int i = 0; i < t; ++i) {
    if (!cls.ray_is_point(i)) continue;
    const Point3& P = h.body.vertices[cls.near_vertex[i]];
    CornerSlab c;
    c.ray = i;
    c.k = k;
    c.apex_lo = Rat(k) * P;
    c.apex_hi = Rat(k + 1) * P;
    c.fan = fan_order(h, i, corner_points(h, cls, i, k));
    for (std::size_t j = 0; j + 1 < c.fan.size(); ++j)
      c.tetrahedra.emplace_back(std::vector<Point3>{c.apex_lo, c.apex_hi, c.fan[j], c.fan[j + 1]});
    corner_of_ray[i] = static_cast<int>(s.corner.size());
    s.corner.push_back(std::move(c));
  }
  for (int i = 0; i < t; ++i) {
    int j = (i + 1) % t;
    if (corner_of_ray[i] < 0 || corner_of_ray[j] < 0) continue;
    if (t == 2 && i == 1) break;
    int vi = cls.near_vertex[i], vj = cls.near_vertex[j];
    if (!h.body.adjacent(vi, vj))
      throw Error(ErrorKind::AssumptionViolated, "near points of consecutive rays " + std::to_string(i) + " and " +
                                                     std::to_string(j) + " are not adjacent vertices");
    const CornerSlab& a = s.corner[corner_of_ray[i]];
    const CornerSlab& b = s.corner[corner_of_ray[j]];
    BridgeSlab br;
    br.ray_a = i;
    br.ray_b = j;
    br.k = k;
    br.triangle_a = {a.apex_lo, a.apex_hi};
    br.triangle_b = {b.apex_lo, b.apex_hi};
    if (!a.fan.empty()) br.triangle_a.push_back(a.fan.back());
    if (!b.fan.empty()) br.triangle_b.push_back(b.fan.front());
    std::vector<Point3> all = br.triangle_a;
    all.insert(all.end(), br.triangle_b.begin(), br.triangle_b.end());
    br.body = ConvexBody(all);
    s.bridge.push_back(std::move(br));
  }
  return s;
}

std::vector<LatticePoint> slab_gap_points(const SemigroupHandle& h, const SlabSet& s, std::int64_t k) {
  std::vector<LatticePoint> out;
  auto collect = [&](const ConvexBody& b) {
    for (const auto& p : b.lattice_points())
      if (!in_dilate(h, p, k) && !in_dilate(h, p, k + 1)) out.push_back(p);
  };
  for (const auto& c : s.corner)
    for (const auto& t : c.tetrahedra) collect(t);
  for (const auto& b : s.bridge) collect(b.body);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Gauge> gauge(const SemigroupHandle& h, const Point3& x) {
  if (x.is_zero()) return Gauge{Rat(0), Rat(0), false};
  Gauge g{Rat(0), Rat(0), true};
  for (const auto& f : h.body.facets) {
    Rat s = dot(f.normal, x);
    int c = sgn(f.offset);
    if (c == 0) {
      if (sgn(s) < 0) return std::nullopt;
    } else if (c > 0) {
      Rat b = s / f.offset;
      if (g.unbounded || b < g.hi) g.hi = b;
      g.unbounded = false;
    } else {
      Rat b = s / f.offset;
      if (b > g.lo) g.lo = b;
    }
  }
  if (!g.unbounded && (sgn(g.hi) <= 0 || g.lo > g.hi)) return std::nullopt;
  return g;
}

GapCase gap_case(const SemigroupHandle& h, const VertexClassification& cls) {
  if (!h.simplicial) return GapCase::NotSimplicial;
  int points = 0;
  for (int i = 0; i < 3; ++i)
    if (cls.ray_is_point(i)) ++points;
  switch (points) {
    case 0: return GapCase::NoPointRay;
    case 1: return GapCase::OnePointRay;
    case 2: return GapCase::TwoPointRays;
    default: return GapCase::ThreePointRays;
  }
}

std::int64_t k3(const SemigroupHandle& h, const VertexClassification& cls, const std::vector<Point3>& ray_gens_in) {
  GapCase gc = gap_case(h, cls);
  if (gc != GapCase::TwoPointRays && gc != GapCase::ThreePointRays)
    throw Error(ErrorKind::UnsupportedCase, "k3 needs at least two extremal rays meeting P in a single point");
  const std::vector<Point3>& gens = ray_gens_in.empty() ? h.ray_generators : ray_gens_in;
  const std::int64_t k0 = kappa0(h, cls);
  const std::int64_t L = period_length(h);
  const int t = 3;

  // Level window [k + lo_j, k + hi_j] where a translate by g_j of a level-k slab can land.
  std::vector<std::int64_t> shift_lo(t), shift_hi(t);
  for (int j = 0; j < t; ++j) {
    auto g = gauge(h, gens[j]);
    if (!g || g->unbounded) throw Error(ErrorKind::AssumptionViolated, "ray generator outside the cone");
    shift_lo[j] = to_int64(floor_rat(g->hi)) - 2;
    shift_hi[j] = to_int64(ceil_rat(g->lo)) + 2;
  }

  std::map<std::int64_t, SlabSet> cache;
  auto at = [&](std::int64_t k) -> const SlabSet& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, slabs(h, cls, k)).first;
    return it->second;
  };

  std::int64_t span = 2 * L + 6;
  std::int64_t worst = -1;
  for (std::int64_t k = k0;; ++k) {
    if (k > k0 + span) {
      // Bad pairs still near the end of the window: widen it.
      if (worst >= k0 + span - L - 2) {
        span *= 2;
        if (span > 2000) throw Error(ErrorKind::BudgetExceeded, "k3 search did not settle");
      } else {
        break;
      }
    }
    const SlabSet& base = at(k);
    for (const auto& c : base.corner) {
      int i = c.ray;
      for (int j = 0; j < t; ++j) {
        if (j == i) continue;
        for (std::int64_t kp = std::max(k0, k + shift_lo[j]); kp <= k + shift_hi[j]; ++kp) {
          const SlabSet& target = at(kp);
          std::vector<const ConvexBody*> bodies;
          for (const auto& tc : target.corner)
            if (tc.ray != i)
              for (const auto& tet : tc.tetrahedra) bodies.push_back(&tet);
          for (const auto& tb : target.bridge)
            if (tb.ray_a != i && tb.ray_b != i) bodies.push_back(&tb.body);
          bool bad = false;
          for (const auto& tet : c.tetrahedra) {
            ConvexBody moved = tet.translated(gens[j]);
            for (const ConvexBody* b : bodies)
              if (intersects(moved, *b)) {
                bad = true;
                break;
              }
            if (bad) break;
          }
          if (bad) worst = std::max(worst, std::min(k, kp));
        }
      }
    }
  }
  return std::max(k0, worst + 1);
}

GapRegion gap_region(const SemigroupHandle& h, const VertexClassification& cls, std::int64_t hull_level,
                     std::int64_t k3_value) {
  GapRegion r;
  r.kappa0 = kappa0(h, cls);
  r.period = period_length(h);
  for (std::size_t i = 0; i < h.rays.size(); ++i) {
    if (cls.ray_is_point(static_cast<int>(i)))
      r.period_vectors.push_back(h.ray_generators[i]);
    else
      r.period_vectors.push_back(Point3{Rat(0), Rat(0), Rat(0)});
  }
  GapCase gc = gap_case(h, cls);
  if (k3_value >= 0)
    r.k3 = k3_value;
  else if (gc == GapCase::TwoPointRays || gc == GapCase::ThreePointRays)
    r.k3 = k3(h, cls);
  else
    r.k3 = r.kappa0;
  r.hull_level = hull_level >= 0 ? std::max(hull_level, r.kappa0) : r.k3;
  return r;
}

std::vector<LatticePoint> gap_points(const SemigroupHandle& h, const VertexClassification& cls, const GapRegion& region,
                                     std::int64_t extra_periods) {
  std::vector<LatticePoint> out;
  for (const auto& p : lattice_points_below(h, region.hull_level))
    if (h.locate(p) == PointStatus::Gap) out.push_back(p);
  if (!cls.W.empty()) {
    std::int64_t end = region.hull_level + extra_periods * region.period;
    for (std::int64_t k = region.hull_level; k < end; ++k) {
      auto pts = slab_gap_points(h, slabs(h, cls, k), k);
      out.insert(out.end(), pts.begin(), pts.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace polysg
