#pragma once

#include <cstdint>
#include <vector>

#include "polysg/geometry.hpp"
#include "polysg/semigroup.hpp"

namespace polysg {

enum class VertexClass { W, W1, W2, V1, V2 };

const char* class_name(VertexClass c);

/// Partition of the vertices of P by how the ray through each vertex meets P.
struct VertexClassification {
  std::vector<int> W, W1, W2, V1, V2;
  std::vector<VertexClass> of_vertex;
  /// Other endpoint of tau_P intersected with P (the vertex itself for W).
  std::vector<Point3> paired_point;
  /// Ray index for vertices on an extremal ray, -1 otherwise.
  std::vector<int> ray_of_vertex;
  /// Per ray: the vertex index of the near endpoint P_i.
  std::vector<int> near_vertex;

  bool ray_is_point(int ray) const;
};

VertexClassification classify(const SemigroupHandle& h);

/// Smallest k such that every non-W vertex Q satisfies its interiority condition for all k' >= k.
std::int64_t kappa0(const SemigroupHandle& h, const VertexClassification& cls);

/// The vertex set of the corner of the closed gap layer at ray i, level k (P_i in W).
std::vector<Point3> corner_vertex_set(const SemigroupHandle& h, const VertexClassification& cls, int i, std::int64_t k);

struct CornerSlab {
  int ray = -1;
  std::int64_t k = 0;
  Point3 apex_lo, apex_hi;  // kP_i, (k+1)P_i
  std::vector<Point3> fan;  // Q_1..Q_m
  std::vector<ConvexBody> tetrahedra;
};

struct BridgeSlab {
  int ray_a = -1, ray_b = -1;
  std::int64_t k = 0;
  std::vector<Point3> triangle_a, triangle_b;
  ConvexBody body;
};

struct SlabSet {
  std::vector<CornerSlab> corner;
  std::vector<BridgeSlab> bridge;
};

/// Closed pieces whose union is the closure of the level-k gap layer, k >= kappa0.
SlabSet slabs(const SemigroupHandle& h, const VertexClassification& cls, std::int64_t k);

/// Gap points of level k: lattice points of the slabs outside kP and (k+1)P.
std::vector<LatticePoint> slab_gap_points(const SemigroupHandle& h, const SlabSet& s, std::int64_t k);

/// Threshold level beyond which a corner slab translated by another ray generator never
/// meets the remaining slabs. `ray_gens` defaults to the handle's ray generators.
std::int64_t k3(const SemigroupHandle& h, const VertexClassification& cls, const std::vector<Point3>& ray_gens = {});

/// Which configuration of point rays the handle is in.
enum class GapCase { NoPointRay, OnePointRay, TwoPointRays, ThreePointRays, NotSimplicial };
GapCase gap_case(const SemigroupHandle& h, const VertexClassification& cls);

struct GapRegion {
  std::int64_t kappa0 = 0;
  std::int64_t k3 = 0;  // equals the hull level for cases without a k3 threshold
  /// Gaps below this level are enumerated from H({O} u hull_level*P).
  std::int64_t hull_level = 0;
  /// lcm of h_{P_i} over point rays (1 if none).
  std::int64_t period = 1;
  /// Per ray, h_{P_i} P_i for point rays (zero otherwise).
  std::vector<Point3> period_vectors;
};

GapRegion gap_region(const SemigroupHandle& h, const VertexClassification& cls, std::int64_t hull_level = -1,
                     std::int64_t k3_value = -1);

/// All gaps strictly below the hull level plus `extra_periods` periods of slab levels after it.
std::vector<LatticePoint> gap_points(const SemigroupHandle& h, const VertexClassification& cls, const GapRegion& region,
                                     std::int64_t extra_periods = 2);

/// Interval [s_min, s_max] of real s with x in sP; nullopt when x is outside the cone.
struct Gauge {
  Rat lo, hi;
  bool unbounded = false;
};
std::optional<Gauge> gauge(const SemigroupHandle& h, const Point3& x);

}  // namespace polysg
