#include "polysg/geometry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "polysg/errors.hpp"

namespace polysg {

namespace {

const Point3 kOrigin{Rat(0), Rat(0), Rat(0)};

std::vector<Point3> unique_points(std::span<const Point3> points) {
  std::vector<Point3> out(points.begin(), points.end());
  for (auto& p : out)
    for (int c = 0; c < 3; ++c) p[c].canonicalize();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Indices of an affinely independent subset of maximal size (up to 4 points).
std::vector<int> affine_basis(const std::vector<Point3>& pts) {
  std::vector<int> basis;
  if (pts.empty()) return basis;
  basis.push_back(0);
  const int n = static_cast<int>(pts.size());
  for (int i = 1; i < n && basis.size() < 2; ++i)
    if (!(pts[i] == pts[0])) basis.push_back(i);
  if (basis.size() < 2) return basis;
  const Point3 d1 = pts[basis[1]] - pts[0];
  for (int i = 1; i < n && basis.size() < 3; ++i)
    if (!cross(d1, pts[i] - pts[0]).is_zero()) basis.push_back(i);
  if (basis.size() < 3) return basis;
  const Point3 nrm = cross(d1, pts[basis[2]] - pts[0]);
  for (int i = 1; i < n && basis.size() < 4; ++i)
    if (sgn(dot(nrm, pts[i] - pts[0])) != 0) basis.push_back(i);
  return basis;
}

bool rank3(const std::vector<Point3>& normals) {
  const std::size_t n = normals.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Point3 c = cross(normals[i], normals[j]);
      if (c.is_zero()) continue;
      for (std::size_t k = j + 1; k < n; ++k)
        if (sgn(dot(c, normals[k])) != 0) return true;
    }
  return false;
}

// Orders the vertices of a facet counter-clockwise as seen from outside.
void order_facet(const std::vector<Point3>& verts, const HalfSpace& facet, std::vector<int>& ids) {
  if (ids.size() < 3) return;
  Point3 centroid;
  for (int id : ids) centroid = centroid + verts[id];
  centroid = Rat(1, static_cast<unsigned long>(ids.size())) * centroid;
  const Point3 outward = -facet.normal;
  const Point3 u = verts[ids[0]] - centroid;
  const Point3 w = cross(outward, u);
  auto coords = [&](int id) {
    Point3 d = verts[id] - centroid;
    return std::pair<Rat, Rat>{dot(d, u), dot(d, w)};
  };
  auto half = [](const std::pair<Rat, Rat>& c) { return sgn(c.second) < 0 || (sgn(c.second) == 0 && sgn(c.first) < 0); };
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    auto ca = coords(a), cb = coords(b);
    bool ha = half(ca), hb = half(cb);
    if (ha != hb) return !ha;
    return sgn(ca.first * cb.second - ca.second * cb.first) > 0;
  });
}

using Constraint = std::array<Rat, 4>;  // a . x >= c  stored as (a0, a1, a2, c)

bool normalize(Constraint& c) {
  for (int i = 0; i < 3; ++i) {
    if (sgn(c[i]) != 0) {
      Rat scale = abs(c[i]);
      for (auto& v : c) v /= scale;
      return true;
    }
  }
  return false;
}

}  // namespace

bool operator==(const HalfSpace& a, const HalfSpace& b) { return a.normal == b.normal && a.offset == b.offset; }
bool operator<(const HalfSpace& a, const HalfSpace& b) {
  if (!(a.normal == b.normal)) return a.normal < b.normal;
  return a.offset < b.offset;
}

HalfSpace make_halfspace(const Point3& normal, const Point3& point) {
  Point3 n = primitive_direction(normal);
  return {n, dot(n, point)};
}

bool Polyhedron::adjacent(int a, int b) const {
  auto e = std::minmax(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::pair<int, int>{e.first, e.second});
}

std::vector<int> Polyhedron::neighbours(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Polyhedron::vertex_index(const Point3& p) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it != vertices.end() && *it == p) return static_cast<int>(it - vertices.begin());
  return -1;
}

bool same_polyhedron(const Polyhedron& a, const Polyhedron& b) {
  return a.vertices == b.vertices && a.facets == b.facets && a.edges == b.edges;
}

Polyhedron convex_hull(std::span<const Point3> input) {
  std::vector<Point3> pts = unique_points(input);
  if (affine_basis(pts).size() < 4)
    throw Error(ErrorKind::DegenerateInput, "convex hull input is not full-dimensional");

  const int n = static_cast<int>(pts.size());
  std::set<HalfSpace> planes;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Point3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (nrm.is_zero()) continue;
        HalfSpace h = make_halfspace(nrm, pts[i]);
        if (planes.count(h)) continue;
        HalfSpace flipped{-h.normal, -h.offset};
        if (planes.count(flipped)) continue;
        bool pos = false, neg = false;
        for (const auto& p : pts) {
          int s = sgn(h.eval(p));
          pos |= s > 0;
          neg |= s < 0;
          if (pos && neg) break;
        }
        if (!neg) planes.insert(h);
        else if (!pos) planes.insert(flipped);
      }

  Polyhedron poly;
  poly.facets.assign(planes.begin(), planes.end());
  for (const auto& p : pts) {
    std::vector<Point3> normals;
    for (const auto& f : poly.facets)
      if (f.on_boundary(p)) normals.push_back(f.normal);
    if (rank3(normals)) poly.vertices.push_back(p);
  }
  const int nv = static_cast<int>(poly.vertices.size());
  std::vector<std::vector<int>> vertex_facets(nv);
  for (std::size_t f = 0; f < poly.facets.size(); ++f) {
    std::vector<int> ids;
    for (int v = 0; v < nv; ++v)
      if (poly.facets[f].on_boundary(poly.vertices[v])) {
        ids.push_back(v);
        vertex_facets[v].push_back(static_cast<int>(f));
      }
    order_facet(poly.vertices, poly.facets[f], ids);
    poly.facet_vertices.push_back(std::move(ids));
  }
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      std::vector<int> common;
      std::set_intersection(vertex_facets[a].begin(), vertex_facets[a].end(), vertex_facets[b].begin(),
                            vertex_facets[b].end(), std::back_inserter(common));
      if (common.size() >= 2) poly.edges.emplace_back(a, b);
    }
  return poly;
}

bool contains(const Polyhedron& poly, const Point3& p, Containment mode, std::span<const int> exempt) {
  if (poly.facets.empty()) return poly.vertices.size() == 1 && poly.vertices[0] == p;
  for (std::size_t f = 0; f < poly.facets.size(); ++f) {
    int s = sgn(poly.facets[f].eval(p));
    if (s < 0) return false;
    if (s == 0 && mode == Containment::RelativeInterior &&
        std::find(exempt.begin(), exempt.end(), static_cast<int>(f)) == exempt.end())
      return false;
  }
  return true;
}

std::vector<int> cone_supporting_facets(const Polyhedron& poly) {
  std::vector<int> out;
  for (std::size_t f = 0; f < poly.facets.size(); ++f)
    if (sgn(poly.facets[f].offset) == 0) out.push_back(static_cast<int>(f));
  return out;
}

RayHit ray_intersect(const Polyhedron& poly, const Point3& direction) {
  if (direction.is_zero()) throw Error(ErrorKind::BadParameter, "ray direction must be nonzero");
  RayHit hit;
  Rat lo(0);
  std::optional<Rat> hi;
  for (const auto& f : poly.facets) {
    Rat a = dot(f.normal, direction);
    int s = sgn(a);
    if (s == 0) {
      if (sgn(f.offset) > 0) return hit;
      continue;
    }
    Rat bound = f.offset / a;
    if (s > 0) {
      if (bound > lo) lo = bound;
    } else if (!hi || bound < *hi) {
      hi = bound;
    }
  }
  if (!hi) throw Error(ErrorKind::DegenerateInput, "ray is unbounded in polyhedron");
  if (lo > *hi) return hit;
  hit.lambda_lo = lo;
  hit.lambda_hi = *hi;
  hit.kind = lo == *hi ? RayHit::Kind::Point : RayHit::Kind::Segment;
  return hit;
}

Polyhedron dilate(const Polyhedron& poly, const Rat& k) {
  if (sgn(k) < 0) throw Error(ErrorKind::BadParameter, "dilation factor must be nonnegative");
  if (sgn(k) == 0) {
    Polyhedron origin;
    origin.vertices.push_back(kOrigin);
    return origin;
  }
  Polyhedron out = poly;
  for (auto& v : out.vertices) v = k * v;
  for (auto& f : out.facets) f.offset *= k;
  return out;
}

Polyhedron translate(const Polyhedron& poly, const Point3& v) {
  Polyhedron out = poly;
  for (auto& p : out.vertices) p = p + v;
  for (auto& f : out.facets) f.offset += dot(f.normal, v);
  return out;
}

Polyhedron hull_union(const Polyhedron& a, const Polyhedron& b) {
  std::vector<Point3> pts = a.vertices;
  pts.insert(pts.end(), b.vertices.begin(), b.vertices.end());
  return convex_hull(pts);
}

SegmentHit segment_plane_hit(const Point3& a, const Point3& b, const HalfSpace& facet) {
  SegmentHit hit;
  Rat ea = facet.eval(a), eb = facet.eval(b);
  int sa = sgn(ea), sb = sgn(eb);
  if (sa == 0 && sb == 0) {
    hit.kind = SegmentHit::Kind::WholeSegment;
    hit.point = a;
  } else if (sa == 0 || sb == 0 || sa != sb) {
    Rat t = ea / (ea - eb);
    hit.kind = SegmentHit::Kind::Point;
    hit.point = a + t * (b - a);
  }
  return hit;
}

SegmentHit segment_plane_hit(const Point3& a, const Point3& b, const Polyhedron& poly, int facet) {
  SegmentHit hit = segment_plane_hit(a, b, poly.facets.at(facet));
  switch (hit.kind) {
    case SegmentHit::Kind::Empty: break;
    case SegmentHit::Kind::Point:
      if (!contains(poly, hit.point)) hit.kind = SegmentHit::Kind::Empty;
      break;
    case SegmentHit::Kind::WholeSegment:
      if (auto range = clip_segment(poly, a, b)) hit.point = a + range->first * (b - a);
      else hit.kind = SegmentHit::Kind::Empty;
      break;
  }
  return hit;
}

std::optional<std::pair<Rat, Rat>> clip_segment(const Polyhedron& poly, const Point3& a, const Point3& b) {
  Rat t0(0), t1(1);
  for (const auto& f : poly.facets) {
    Rat ea = f.eval(a);
    Rat slope = f.eval(b) - ea;
    int s = sgn(slope);
    if (s == 0) {
      if (sgn(ea) < 0) return std::nullopt;
      continue;
    }
    Rat t = -ea / slope;
    if (s > 0) {
      if (t > t0) t0 = t;
    } else if (t < t1) {
      t1 = t;
    }
    if (t0 > t1) return std::nullopt;
  }
  return std::pair<Rat, Rat>{t0, t1};
}

ConvexBody::ConvexBody(std::vector<Point3> points) {
  points_ = unique_points(points);
  if (points_.empty()) return;
  lo_ = hi_ = points_[0];
  for (const auto& p : points_)
    for (int i = 0; i < 3; ++i) {
      if (p[i] < lo_[i]) lo_[i] = p[i];
      if (p[i] > hi_[i]) hi_[i] = p[i];
    }
  std::vector<int> basis = affine_basis(points_);
  dimension_ = static_cast<int>(basis.size()) - 1;
  const Point3& p0 = points_[0];
  auto add_equality = [&](const Point3& n) { equalities_.push_back(make_halfspace(n, p0)); };
  auto add_supporting = [&](const Point3& n, const Point3& through) {
    if (n.is_zero()) return;
    HalfSpace h = make_halfspace(n, through);
    bool pos = false, neg = false;
    for (const auto& p : points_) {
      int s = sgn(h.eval(p));
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos && neg) return;
    if (!neg) inequalities_.push_back(h);
    else inequalities_.push_back({-h.normal, -h.offset});
  };
  switch (dimension_) {
    case 0:
      add_equality({Rat(1), Rat(0), Rat(0)});
      add_equality({Rat(0), Rat(1), Rat(0)});
      add_equality({Rat(0), Rat(0), Rat(1)});
      break;
    case 1: {
      Point3 d = points_[basis[1]] - p0;
      Point3 n1 = cross(d, Point3{Rat(1), Rat(0), Rat(0)});
      if (n1.is_zero()) n1 = cross(d, Point3{Rat(0), Rat(1), Rat(0)});
      add_equality(n1);
      add_equality(cross(d, n1));
      for (const auto& p : points_) add_supporting(d, p);
      break;
    }
    case 2: {
      Point3 n = cross(points_[basis[1]] - p0, points_[basis[2]] - p0);
      add_equality(n);
      for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j) add_supporting(cross(n, points_[j] - points_[i]), points_[i]);
      break;
    }
    default: {
      Polyhedron poly = convex_hull(points_);
      inequalities_ = poly.facets;
      points_ = poly.vertices;
      break;
    }
  }
  std::sort(inequalities_.begin(), inequalities_.end());
  inequalities_.erase(std::unique(inequalities_.begin(), inequalities_.end()), inequalities_.end());
}

bool ConvexBody::contains(const Point3& p) const {
  if (points_.empty()) return false;
  for (int i = 0; i < 3; ++i)
    if (p[i] < lo_[i] || p[i] > hi_[i]) return false;
  for (const auto& e : equalities_)
    if (sgn(e.eval(p)) != 0) return false;
  for (const auto& h : inequalities_)
    if (sgn(h.eval(p)) < 0) return false;
  return true;
}

bool ConvexBody::contains(const LatticePoint& p) const { return contains(to_point(p)); }

ConvexBody ConvexBody::translated(const Point3& v) const {
  ConvexBody out = *this;
  for (auto& p : out.points_) p = p + v;
  for (auto& h : out.inequalities_) h.offset += dot(h.normal, v);
  for (auto& h : out.equalities_) h.offset += dot(h.normal, v);
  out.lo_ = lo_ + v;
  out.hi_ = hi_ + v;
  return out;
}

std::vector<LatticePoint> ConvexBody::lattice_points() const {
  std::vector<LatticePoint> out;
  if (points_.empty()) return out;
  const std::int64_t x0 = to_int64(ceil_rat(lo_.x)), x1 = to_int64(floor_rat(hi_.x));
  const std::int64_t y0 = to_int64(ceil_rat(lo_.y)), y1 = to_int64(floor_rat(hi_.y));
  const std::int64_t z0 = to_int64(ceil_rat(lo_.z)), z1 = to_int64(floor_rat(hi_.z));
  for (std::int64_t x = x0; x <= x1; ++x)
    for (std::int64_t y = y0; y <= y1; ++y)
      for (std::int64_t z = z0; z <= z1; ++z) {
        LatticePoint p{x, y, z};
        if (contains(p)) out.push_back(p);
      }
  return out;
}

bool feasible(std::vector<HalfSpace> system) {
  std::vector<Constraint> rows;
  rows.reserve(system.size());
  for (auto& h : system) rows.push_back({h.normal.x, h.normal.y, h.normal.z, h.offset});

  for (int var = 2; var >= -1; --var) {
    // Reduce: drop trivial rows, keep the tightest offset per direction.
    std::map<std::array<Rat, 3>, Rat> tightest;
    for (auto& r : rows) {
      if (!normalize(r)) {
        if (sgn(r[3]) > 0) return false;
        continue;
      }
      std::array<Rat, 3> key{r[0], r[1], r[2]};
      auto [it, inserted] = tightest.emplace(key, r[3]);
      if (!inserted && r[3] > it->second) it->second = r[3];
    }
    rows.clear();
    for (auto& [key, c] : tightest) rows.push_back({key[0], key[1], key[2], c});
    if (var < 0) break;

    std::vector<Constraint> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r[var]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rat wp = -q[var], wq = p[var];
        Constraint c;
        for (int i = 0; i < 4; ++i) c[i] = wp * p[i] + wq * q[i];
        c[var] = 0;
        next.push_back(std::move(c));
      }
    rows = std::move(next);
  }
  return true;
}

bool intersects(const ConvexBody& a, const ConvexBody& b) {
  if (a.empty() || b.empty()) return false;
  for (int i = 0; i < 3; ++i)
    if (a.box_hi()[i] < b.box_lo()[i] || b.box_hi()[i] < a.box_lo()[i]) return false;
  std::vector<HalfSpace> system;
  for (const auto* body : {&a, &b}) {
    system.insert(system.end(), body->inequalities().begin(), body->inequalities().end());
    for (const auto& e : body->equalities()) {
      system.push_back(e);
      system.push_back({-e.normal, -e.offset});
    }
  }
  return feasible(std::move(system));
}

}  // namespace polysg
