#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "polysg/geometry.hpp"
#include "polysg/rational.hpp"

namespace polysg {

/// Facet of the body scaled to integers: X in kP  <=>  normal . X >= k * offset for every facet.
struct LatticeFacet {
  std::int64_t normal[3];
  std::int64_t offset;
};

enum class PointStatus { Member, Gap, OutsideCone };

/// A polytope P in R^3_>= together with the cone data of the semigroup
/// S = (union over j of jP) intersected with N^3.
struct SemigroupHandle {
  Polyhedron body;
  /// Primitive integer directions of the extremal rays, in cyclic order around the cone.
  std::vector<Point3> rays;
  bool simplicial = false;
  bool origin_inside = false;
  /// Per ray: lambda interval of {lambda : lambda * rays[i] in P}.
  std::vector<RayHit> ray_data;
  /// Per ray: the element of S on the ray with the smallest lambda.
  std::vector<Point3> ray_generators;
  /// Inward normals of the cone facets (planes through O).
  std::vector<Point3> cone_facets;
  std::vector<LatticeFacet> lattice_facets;
  /// Smallest and largest coordinate sum over the vertices of P.
  Rat min_degree, max_degree;

  PointStatus locate(const LatticePoint& p, std::int64_t* layer = nullptr) const;
  bool in_semigroup(const LatticePoint& p) const { return locate(p) == PointStatus::Member; }
  bool in_cone(const Point3& p) const;
  /// p in the cone and p in sP for some real s <= k, i.e. p in H({O} u kP).
  bool below_level(const LatticePoint& p, std::int64_t k) const;
  int ray_index(const Point3& p) const;  // -1 if p is not on an extremal ray
  /// Near endpoint of tau_i intersected with P.
  Point3 ray_point(int i) const { return ray_data[i].lambda_lo * rays[i]; }
  /// Least h with h * ray_point(i) integral.
  std::int64_t ray_point_denominator(int i) const;
};

SemigroupHandle build(std::span<const Point3> vertices);

struct Membership {
  bool in = false;
  std::optional<std::int64_t> witness_k;
};

/// Throws OutsideCone when p is not in the cone over P.
Membership member(const SemigroupHandle& h, const LatticePoint& p);

Point3 ray_generator(const SemigroupHandle& h, int i);

struct SearchOptions {
  std::int64_t budget_layers = 400;
  /// Return the partial, uncertified result instead of throwing BudgetExceeded.
  bool allow_partial = false;
};

struct GeneratorSet {
  std::vector<LatticePoint> generators;  // lexicographic
  std::vector<std::int64_t> layer_index;  // smallest j with g in jP; -1 for closure-only points
  bool certified = false;
  std::int64_t layers_scanned = 0;
};

using MonoidPredicate = std::function<bool(const LatticePoint&)>;

/// Layered sieve for the minimal generating set of a submonoid of the cone of `h`
/// whose membership is `in_monoid`. `period` is the periodicity length L and
/// `start` the level after which the gap structure repeats.
GeneratorSet sieve_generators(const SemigroupHandle& h, const MonoidPredicate& in_monoid, std::int64_t start,
                              std::int64_t period, const SearchOptions& opts);

GeneratorSet minimal_generators(const SemigroupHandle& h, const SearchOptions& opts = {});

/// lcm of h_{P_i} over rays meeting P in a single point (1 if none).
std::int64_t period_length(const SemigroupHandle& h);

struct AperyBasis {
  std::vector<LatticePoint> elements;  // lexicographic
  std::vector<LatticePoint> maximal_elements;
  bool certified = false;
  std::int64_t layers_scanned = 0;
};

/// Intersection of the Apery sets of the given ray generators in the monoid.
/// `slice`, when set, restricts the enumeration to points satisfying it.
AperyBasis apery_intersection(const SemigroupHandle& h, const MonoidPredicate& in_monoid,
                              std::span<const LatticePoint> ray_gens, const SearchOptions& opts = {},
                              const MonoidPredicate& slice = {});
AperyBasis apery_intersection(const SemigroupHandle& h, const SearchOptions& opts = {});

/// Elements of `elements` maximal for x <=_S y  <=>  y - x in S.
std::vector<LatticePoint> maximal_elements(std::span<const LatticePoint> elements, const MonoidPredicate& in_monoid);

/// The closure semigroup {a : a + g in S for every minimal generator g of S}.
class ClosureSemigroup {
 public:
  ClosureSemigroup(const SemigroupHandle& h, std::vector<LatticePoint> added);

  bool contains(const LatticePoint& p) const;
  const std::vector<LatticePoint>& added_points() const { return added_sorted_; }
  std::vector<LatticePoint> ray_generators() const;
  MonoidPredicate predicate() const;

 private:
  const SemigroupHandle* handle_;
  std::vector<LatticePoint> added_sorted_;
  std::unordered_set<LatticePoint, LatticePointHash> added_;
};

struct ClosureResult {
  std::vector<LatticePoint> added_points;
  GeneratorSet gens_of_closure;
};

/// Gaps a with a + g in S for all g in `generators`, searched in H({O} u kP) with k = kappa0 + L.
std::vector<LatticePoint> closure_added_points(const SemigroupHandle& h, std::span<const LatticePoint> generators);
ClosureResult closure(const SemigroupHandle& h, const GeneratorSet& generators, const SearchOptions& opts = {});

/// Integer points of the closed convex hull of {O} and k*P.
std::vector<LatticePoint> lattice_points_below(const SemigroupHandle& h, std::int64_t k);

}  // namespace polysg
