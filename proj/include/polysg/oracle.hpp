#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "polysg/rational.hpp"

namespace polysg {

/// Brute-force ground truth working only from the vertex list of P.
namespace oracle {

struct Box {
  std::int64_t max_coord = 20;  // the cube [0, max_coord]^3
  std::int64_t max_layer = 0;   // dilation cap; 0 means auto-size
};

using PointSet = std::set<LatticePoint>;

/// Vertex data of P scaled to integers, with membership decided by Caratheodory
/// decomposition into vertex tetrahedra.
class Polytope {
 public:
  explicit Polytope(std::span<const Point3> vertices);

  /// p in kP for integer k >= 0.
  bool in_dilate(const LatticePoint& p, std::int64_t k) const;
  /// p in the cone spanned by the vertices.
  bool in_cone(const LatticePoint& p) const;
  /// p in the convex hull of kP and (k+1)P.
  bool in_level_hull(const LatticePoint& p, std::int64_t k) const;
  /// Smallest layer that can contain a nonzero point of the box.
  std::int64_t required_layers(std::int64_t max_coord) const;
  std::int64_t max_coordinate_ceil() const;
  /// Layers k whose coordinate sums admit p: k * min_sum <= sum(p) <= k * max_sum.
  std::pair<std::int64_t, std::int64_t> layer_range(const LatticePoint& p) const;

  /// Vertices of kP and (k+1)P scaled by scale().
  std::vector<std::array<__int128, 3>> level_points(std::int64_t k) const;
  std::int64_t scale() const { return scale_; }
  std::int64_t min_sum() const { return min_sum_; }
  std::int64_t max_sum() const { return max_sum_; }

 private:
  std::vector<std::array<std::int64_t, 3>> v_;  // D * vertices
  std::int64_t scale_ = 1;
  std::int64_t min_sum_ = 0;  // smallest coordinate sum of D * vertices
  std::int64_t max_sum_ = 0;
  std::vector<std::array<int, 4>> tets_;
  std::vector<std::array<int, 3>> cones_;
};

/// Throws BoxTooSmall when an explicit max_layer cannot reach every box point.
Box sized(const Polytope& p, Box box);

PointSet scan_semigroup(const Polytope& p, Box box);
PointSet scan_cone(const Polytope& p, Box box);
PointSet scan_gaps(const Polytope& p, Box box);
/// Present points of the box that are not a sum of two nonzero present points.
PointSet naive_msg(const Polytope& p, Box box);
/// Present points x with x - g not present for every g in `gens`.
PointSet naive_apery(const Polytope& p, Box box, std::span<const LatticePoint> gens);
/// Gaps p with at least two indices i such that p + gens[i] is present (only p with all
/// translates inside the box are examined).
std::vector<std::pair<LatticePoint, std::vector<int>>> naive_condition3(const Polytope& p, Box box,
                                                                        std::span<const LatticePoint> gens);
/// Integer points of H(kP u (k+1)P) outside kP and (k+1)P.
PointSet level_gaps(const Polytope& p, std::int64_t k);

}  // namespace oracle
}  // namespace polysg
