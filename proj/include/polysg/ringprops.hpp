#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polysg/gapdecomp.hpp"
#include "polysg/semigroup.hpp"

namespace polysg {

enum class Verdict { Yes, No, Unsupported, Inconclusive };
const char* verdict_name(Verdict v);

/// p is not in the monoid while p + g_i and p + g_j are.
struct Witness {
  LatticePoint p;
  int i = -1, j = -1;
  LatticePoint g_i, g_j;
};

struct PropertyVerdict {
  std::string property;
  Verdict verdict = Verdict::Unsupported;
  std::string case_used;
  std::optional<Witness> witness;
  /// For Gorenstein: maximal elements of the Apery intersection.
  std::vector<LatticePoint> maximal_elements;
  std::vector<std::string> diagnostics;
};

struct DecideOptions {
  SearchOptions search;
};

PropertyVerdict is_cohen_macaulay(const SemigroupHandle& h, const DecideOptions& opts = {});
PropertyVerdict is_gorenstein(const SemigroupHandle& h, const DecideOptions& opts = {});
PropertyVerdict is_buchsbaum(const SemigroupHandle& h, const DecideOptions& opts = {});

struct Condition3 {
  int count = 0;
  std::vector<int> indices;
};
/// Indices i with p + gens[i] in the monoid.
Condition3 check_condition3(const MonoidPredicate& in_monoid, std::span<const LatticePoint> gens, const LatticePoint& p);
/// Throws NotAGap unless p is a gap of the cone.
Condition3 check_condition3(const SemigroupHandle& h, const LatticePoint& p);

/// Replays a witness against a membership predicate.
bool witness_holds(const MonoidPredicate& in_monoid, const Witness& w);

/// Vertices of the tetrahedron {(4,0,0),(4+2k,0,0),(4+k,k,0),(4+k,0,1)}, k >= 2.
std::vector<Point3> gorenstein_family(std::int64_t k);

/// Rows y = 0..k-1 of Ap(g1) n Ap(g2) n {z = 0} for the family member k, then the row y >= k.
std::vector<std::vector<LatticePoint>> apery_table(std::int64_t k, const SearchOptions& opts = {});

}  // namespace polysg
