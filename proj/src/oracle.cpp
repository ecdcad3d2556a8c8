#include "polysg/oracle.hpp"

#include <algorithm>
#include <limits>

#include "polysg/errors.hpp"

namespace polysg::oracle {

namespace {

using i128 = __int128;
using V3 = std::array<i128, 3>;

V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 crs(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
i128 dt(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// y in the simplex a + conv(0, e0, e1, e2) spanned by columns e0, e1, e2.
bool in_simplex(const V3& y, const V3& a, const V3& e0, const V3& e1, const V3& e2) {
  V3 r = sub(y, a);
  i128 det = dt(e0, crs(e1, e2));
  if (det == 0) return false;
  // Cramer: mu_i = det(with column i replaced by r) / det
  i128 m0 = dt(r, crs(e1, e2));
  i128 m1 = dt(e0, crs(r, e2));
  i128 m2 = dt(e0, crs(e1, r));
  if (det < 0) {
    det = -det;
    m0 = -m0;
    m1 = -m1;
    m2 = -m2;
  }
  return m0 >= 0 && m1 >= 0 && m2 >= 0 && m0 + m1 + m2 <= det;
}

V3 widen(const std::array<std::int64_t, 3>& v, std::int64_t k) { return {i128(v[0]) * k, i128(v[1]) * k, i128(v[2]) * k}; }

bool in_hull_of(const std::vector<V3>& pts, const V3& y) {
  std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (in_simplex(y, pts[a], sub(pts[b], pts[a]), sub(pts[c], pts[a]), sub(pts[d], pts[a]))) return true;
  return false;
}

// Nondegenerate tetrahedra on a fixed point set, each with its bounding box.
class TetraCover {
 public:
  explicit TetraCover(const std::vector<V3>& pts) {
    std::size_t n = pts.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d) {
            Tet t{pts[a], sub(pts[b], pts[a]), sub(pts[c], pts[a]), sub(pts[d], pts[a]), {}, {}};
            if (dt(t.e0, crs(t.e1, t.e2)) == 0) continue;
            for (int i = 0; i < 3; ++i) {
              t.lo[i] = std::min({pts[a][i], pts[b][i], pts[c][i], pts[d][i]});
              t.hi[i] = std::max({pts[a][i], pts[b][i], pts[c][i], pts[d][i]});
            }
            tets_.push_back(t);
          }
  }

  bool contains(const V3& y) const {
    for (const auto& t : tets_) {
      if (y[0] < t.lo[0] || y[0] > t.hi[0] || y[1] < t.lo[1] || y[1] > t.hi[1] || y[2] < t.lo[2] || y[2] > t.hi[2])
        continue;
      if (in_simplex(y, t.a, t.e0, t.e1, t.e2)) return true;
    }
    return false;
  }

 private:
  struct Tet {
    V3 a, e0, e1, e2;
    V3 lo, hi;
  };
  std::vector<Tet> tets_;
};

template <class Fn>
void for_box(std::int64_t m, Fn&& fn) {
  for (std::int64_t x = 0; x <= m; ++x)
    for (std::int64_t y = 0; y <= m; ++y)
      for (std::int64_t z = 0; z <= m; ++z) fn(LatticePoint{x, y, z});
}

}  // namespace

Polytope::Polytope(std::span<const Point3> vertices) {
  BigInt d(1);
  for (const auto& v : vertices) d = lcm(d, denominator_lcm(v));
  scale_ = to_int64(d);
  Rat dr(d);
  for (const auto& v : vertices) {
    Point3 w = dr * v;
    v_.push_back({to_int64(w.x.get_num()), to_int64(w.y.get_num()), to_int64(w.z.get_num())});
  }
  std::sort(v_.begin(), v_.end());
  v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  min_sum_ = -1;
  for (const auto& v : v_) {
    std::int64_t s = v[0] + v[1] + v[2];
    if (min_sum_ < 0 || s < min_sum_) min_sum_ = s;
    max_sum_ = std::max(max_sum_, s);
  }
  int n = static_cast<int>(v_.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        V3 A = widen(v_[a], 1), B = widen(v_[b], 1), C = widen(v_[c], 1);
        if (dt(A, crs(B, C)) != 0) cones_.push_back({a, b, c});
        for (int e = c + 1; e < n; ++e) {
          V3 E = widen(v_[e], 1);
          if (dt(sub(B, A), crs(sub(C, A), sub(E, A))) != 0) tets_.push_back({a, b, c, e});
        }
      }
  if (tets_.empty()) throw Error(ErrorKind::DegenerateInput, "oracle: vertices do not span a 3-dimensional body");
}

bool Polytope::in_dilate(const LatticePoint& p, std::int64_t k) const {
  V3 y{i128(p.x) * scale_, i128(p.y) * scale_, i128(p.z) * scale_};
  if (k == 0) return p.is_zero();
  for (const auto& t : tets_) {
    V3 a = widen(v_[t[0]], k);
    if (in_simplex(y, a, sub(widen(v_[t[1]], k), a), sub(widen(v_[t[2]], k), a), sub(widen(v_[t[3]], k), a)))
      return true;
  }
  return false;
}

bool Polytope::in_cone(const LatticePoint& p) const {
  if (p.is_zero()) return true;
  V3 y{p.x, p.y, p.z};
  for (const auto& c : cones_) {
    V3 A = widen(v_[c[0]], 1), B = widen(v_[c[1]], 1), C = widen(v_[c[2]], 1);
    i128 det = dt(A, crs(B, C));
    i128 m0 = dt(y, crs(B, C)), m1 = dt(A, crs(y, C)), m2 = dt(A, crs(B, y));
    if (det < 0) {
      m0 = -m0;
      m1 = -m1;
      m2 = -m2;
    }
    if (m0 >= 0 && m1 >= 0 && m2 >= 0) return true;
  }
  // O in P: the cone is spanned by the nonzero vertices through O, covered above unless P is all of the cone.
  return false;
}

std::vector<std::array<i128, 3>> Polytope::level_points(std::int64_t k) const {
  std::vector<V3> pts;
  for (const auto& v : v_) {
    pts.push_back(widen(v, k));
    pts.push_back(widen(v, k + 1));
  }
  return pts;
}

bool Polytope::in_level_hull(const LatticePoint& p, std::int64_t k) const {
  V3 y{i128(p.x) * scale_, i128(p.y) * scale_, i128(p.z) * scale_};
  return in_hull_of(level_points(k), y);
}

std::int64_t Polytope::required_layers(std::int64_t max_coord) const {
  if (min_sum_ == 0) throw Error(ErrorKind::BoxTooSmall, "oracle: O is a vertex, layers are unbounded");
  // every point of the box has coordinate sum <= 3 max_coord, each layer adds at least min_sum / scale
  i128 num = i128(3) * max_coord * scale_;
  return static_cast<std::int64_t>((num + min_sum_ - 1) / min_sum_);
}

std::pair<std::int64_t, std::int64_t> Polytope::layer_range(const LatticePoint& p) const {
  if (p.is_zero()) return {0, 0};
  i128 s = i128(p.degree()) * scale_;
  std::int64_t lo = static_cast<std::int64_t>((s + max_sum_ - 1) / max_sum_);
  std::int64_t hi = min_sum_ == 0 ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(s / min_sum_);
  return {lo, hi};
}

std::int64_t Polytope::max_coordinate_ceil() const {
  std::int64_t m = 0;
  for (const auto& v : v_) m = std::max({m, v[0], v[1], v[2]});
  return (m + scale_ - 1) / scale_;
}

Box sized(const Polytope& p, Box box) {
  if (box.max_coord < 1) throw Error(ErrorKind::BadParameter, "oracle box must have max_coord >= 1");
  std::int64_t need = p.required_layers(box.max_coord);
  if (box.max_layer == 0)
    box.max_layer = need;
  else if (box.max_layer < need)
    throw Error(ErrorKind::BoxTooSmall, "oracle box needs " + std::to_string(need) + " layers, got " +
                                            std::to_string(box.max_layer));
  return box;
}

PointSet scan_semigroup(const Polytope& p, Box box) {
  box = sized(p, box);
  PointSet out;
  for_box(box.max_coord, [&](const LatticePoint& x) {
    auto [lo, hi] = p.layer_range(x);
    for (std::int64_t k = lo; k <= std::min(hi, box.max_layer); ++k)
      if (p.in_dilate(x, k)) {
        out.insert(x);
        break;
      }
  });
  return out;
}

PointSet scan_cone(const Polytope& p, Box box) {
  PointSet out;
  for_box(box.max_coord, [&](const LatticePoint& x) {
    if (p.in_cone(x)) out.insert(x);
  });
  return out;
}

PointSet scan_gaps(const Polytope& p, Box box) {
  PointSet s = scan_semigroup(p, box);
  PointSet out;
  for (const auto& x : scan_cone(p, box))
    if (!s.count(x)) out.insert(x);
  return out;
}

PointSet naive_msg(const Polytope& p, Box box) {
  PointSet s = scan_semigroup(p, box);
  PointSet out;
  for (const auto& x : s) {
    if (x.is_zero()) continue;
    bool sum = false;
    for (const auto& y : s) {
      if (y.is_zero() || y == x) continue;
      LatticePoint r = x - y;
      if (r.nonnegative() && !r.is_zero() && s.count(r)) {
        sum = true;
        break;
      }
    }
    if (!sum) out.insert(x);
  }
  return out;
}

PointSet naive_apery(const Polytope& p, Box box, std::span<const LatticePoint> gens) {
  PointSet s = scan_semigroup(p, box);
  PointSet out;
  for (const auto& x : s) {
    bool keep = true;
    for (const auto& g : gens)
      if (s.count(x - g)) {
        keep = false;
        break;
      }
    if (keep) out.insert(x);
  }
  return out;
}

std::vector<std::pair<LatticePoint, std::vector<int>>> naive_condition3(const Polytope& p, Box box,
                                                                        std::span<const LatticePoint> gens) {
  PointSet s = scan_semigroup(p, box);
  std::vector<std::pair<LatticePoint, std::vector<int>>> out;
  for (const auto& x : scan_cone(p, box)) {
    if (s.count(x)) continue;
    std::vector<int> idx;
    bool inside = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      LatticePoint y = x + gens[i];
      if (y.x > box.max_coord || y.y > box.max_coord || y.z > box.max_coord) inside = false;
      if (s.count(y)) idx.push_back(static_cast<int>(i));
    }
    if (inside && idx.size() >= 2) out.emplace_back(x, idx);
  }
  return out;
}

PointSet level_gaps(const Polytope& p, std::int64_t k) {
  PointSet out;
  std::int64_t m = (k + 1) * p.max_coordinate_ceil();
  TetraCover cover(p.level_points(k));
  const std::int64_t lo = k * p.min_sum(), hi = (k + 1) * p.max_sum(), sc = p.scale();
  for_box(m, [&](const LatticePoint& x) {
    i128 s = i128(x.degree()) * sc;
    if (s < lo || s > hi || !p.in_cone(x)) return;
    if (!cover.contains({i128(x.x) * sc, i128(x.y) * sc, i128(x.z) * sc})) return;
    if (!p.in_dilate(x, k) && !p.in_dilate(x, k + 1)) out.insert(x);
  });
  return out;
}

}  // namespace polysg::oracle
