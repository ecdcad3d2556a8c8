#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polysg/rational.hpp"

namespace polysg {

/// The closed region {X : normal . X >= offset}. The normal is kept primitive integral.
struct HalfSpace {
  Point3 normal;
  Rat offset;

  Rat eval(const Point3& p) const { return dot(normal, p) - offset; }
  bool contains(const Point3& p) const { return sgn(eval(p)) >= 0; }
  bool on_boundary(const Point3& p) const { return sgn(eval(p)) == 0; }
};

bool operator==(const HalfSpace& a, const HalfSpace& b);
bool operator<(const HalfSpace& a, const HalfSpace& b);

/// Half-space through `point` with the given normal, rescaled to a primitive integral normal.
HalfSpace make_halfspace(const Point3& normal, const Point3& point);

/// Bounded full-dimensional convex polytope in both representations.
///
/// Vertices are sorted lexicographically, facets by (normal, offset). Coplanar
/// faces are always merged, so every facet plane is distinct. Each facet's
/// vertex list is ordered counter-clockwise when seen from outside.
struct Polyhedron {
  std::vector<Point3> vertices;
  std::vector<HalfSpace> facets;
  std::vector<std::vector<int>> facet_vertices;
  std::vector<std::pair<int, int>> edges;

  bool adjacent(int a, int b) const;
  std::vector<int> neighbours(int v) const;
  int vertex_index(const Point3& p) const;  // -1 when absent
};

bool same_polyhedron(const Polyhedron& a, const Polyhedron& b);

/// Convex hull of >= 4 affinely spanning points. Throws DegenerateInput for coplanar input.
Polyhedron convex_hull(std::span<const Point3> points);

enum class Containment { Closed, RelativeInterior };

/// Closed mode tests every facet non-strictly. RelativeInterior tests strictly on every
/// facet except those listed in `exempt` (facets lying inside a facet of the cone),
/// which are tested non-strictly.
bool contains(const Polyhedron& poly, const Point3& p, Containment mode = Containment::Closed,
              std::span<const int> exempt = {});

/// Indices of facets whose supporting plane passes through the origin.
std::vector<int> cone_supporting_facets(const Polyhedron& poly);

struct RayHit {
  enum class Kind { Empty, Point, Segment };
  Kind kind = Kind::Empty;
  Rat lambda_lo, lambda_hi;
};

/// Exact {lambda >= 0 : lambda * direction in poly}.
RayHit ray_intersect(const Polyhedron& poly, const Point3& direction);

/// k*poly. k = 0 is degenerate and reported through `dilate_point`.
Polyhedron dilate(const Polyhedron& poly, const Rat& k);
Polyhedron translate(const Polyhedron& poly, const Point3& v);
Polyhedron hull_union(const Polyhedron& a, const Polyhedron& b);

struct SegmentHit {
  enum class Kind { Empty, Point, WholeSegment };
  Kind kind = Kind::Empty;
  Point3 point;
};

/// Intersection of the closed segment [a, b] with the boundary plane of `facet`.
SegmentHit segment_plane_hit(const Point3& a, const Point3& b, const HalfSpace& facet);
/// Same, restricted to the facet polygon of `poly` (facet index `facet`).
SegmentHit segment_plane_hit(const Point3& a, const Point3& b, const Polyhedron& poly, int facet);

/// Parameter interval [t0, t1] of {t in [0,1] : a + t(b - a) in poly}, or nullopt.
std::optional<std::pair<Rat, Rat>> clip_segment(const Polyhedron& poly, const Point3& a, const Point3& b);

/// Convex hull of any finite point set (dimension 0..3), kept as equalities plus
/// inequalities. Used for slab pieces, which may be flat.
class ConvexBody {
 public:
  ConvexBody() = default;
  explicit ConvexBody(std::vector<Point3> points);

  int dimension() const { return dimension_; }
  bool empty() const { return points_.empty(); }
  const std::vector<Point3>& points() const { return points_; }
  const std::vector<HalfSpace>& inequalities() const { return inequalities_; }
  const std::vector<HalfSpace>& equalities() const { return equalities_; }
  const Point3& box_lo() const { return lo_; }
  const Point3& box_hi() const { return hi_; }

  bool contains(const Point3& p) const;
  bool contains(const LatticePoint& p) const;
  ConvexBody translated(const Point3& v) const;

  /// Integer points of the body, lexicographically sorted.
  std::vector<LatticePoint> lattice_points() const;

 private:
  std::vector<Point3> points_;
  std::vector<HalfSpace> inequalities_;
  std::vector<HalfSpace> equalities_;
  Point3 lo_, hi_;
  int dimension_ = -1;
};

/// Exact test for a common point of two closed convex bodies (Fourier-Motzkin).
bool intersects(const ConvexBody& a, const ConvexBody& b);

/// Feasibility of {x in R^3 : h.normal . x >= h.offset for all h}.
bool feasible(std::vector<HalfSpace> system);

}  // namespace polysg
