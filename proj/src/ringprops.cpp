#include "polysg/ringprops.hpp"

#include <algorithm>

#include "polysg/errors.hpp"

namespace polysg {

namespace {

const char* case_name(GapCase c) {
  switch (c) {
    case GapCase::NoPointRay: return "no point ray";
    case GapCase::OnePointRay: return "one point ray, two segment rays";
    case GapCase::TwoPointRays: return "two point rays, one segment ray";
    case GapCase::ThreePointRays: return "three point rays";
    case GapCase::NotSimplicial: return "not simplicial";
  }
  return "?";
}

std::vector<LatticePoint> lattice_gens(const SemigroupHandle& h) {
  std::vector<LatticePoint> out;
  for (const auto& g : h.ray_generators) out.push_back(to_lattice(g));
  return out;
}

std::vector<Point3> rational_gens(const std::vector<LatticePoint>& gens) {
  std::vector<Point3> out;
  for (const auto& g : gens) out.push_back(to_point(g));
  return out;
}

// Starting from a non-member p, walk along gens[b] then gens[c] until both translates are members.
Witness walk_witness(const MonoidPredicate& in, const std::vector<LatticePoint>& gens, LatticePoint p, int b, int c) {
  for (int step = 0; !in(p + gens[b]); ++step) {
    if (step > 1000000) throw Error(ErrorKind::AssumptionViolated, "witness walk did not terminate");
    p = p + gens[b];
  }
  for (int step = 0; !in(p + gens[c]); ++step) {
    if (step > 1000000) throw Error(ErrorKind::AssumptionViolated, "witness walk did not terminate");
    p = p + gens[c];
  }
  return Witness{p, b, c, gens[b], gens[c]};
}

std::vector<int> segment_rays(const VertexClassification& cls, int t) {
  std::vector<int> out;
  for (int i = 0; i < t; ++i)
    if (!cls.ray_is_point(i)) out.push_back(i);
  return out;
}

// Shared decision for a monoid M between S and the cone, M agreeing with S above `hull_level`.
// The gap set of M is finite-or-periodic and enumerated from the gap region of S.
PropertyVerdict decide_cm(const SemigroupHandle& h, const VertexClassification& cls, const MonoidPredicate& in,
                          const std::vector<LatticePoint>& gens, std::int64_t min_hull, const char* property) {
  PropertyVerdict v;
  v.property = property;
  GapCase gc = gap_case(h, cls);
  v.case_used = case_name(gc);
  std::int64_t k0 = kappa0(h, cls);
  v.diagnostics.push_back("kappa0 = " + std::to_string(k0));
  if (gc == GapCase::NoPointRay || gc == GapCase::OnePointRay) {
    GapRegion r = gap_region(h, cls, std::max(min_hull, k0), k0);
    std::vector<LatticePoint> gaps;
    for (const auto& p : gap_points(h, cls, r, 1))
      if (!in(p)) gaps.push_back(p);
    v.diagnostics.push_back("gaps scanned = " + std::to_string(gaps.size()));
    if (gaps.empty()) {
      v.verdict = Verdict::Yes;
      return v;
    }
    auto seg = segment_rays(cls, 3);
    v.verdict = Verdict::No;
    v.witness = walk_witness(in, gens, gaps.front(), seg[0], seg[1]);
    return v;
  }
  std::int64_t kk = k3(h, cls, rational_gens(gens));
  v.diagnostics.push_back("k3 = " + std::to_string(kk));
  GapRegion r = gap_region(h, cls, std::max(min_hull, kk), kk);
  auto gaps = gap_points(h, cls, r, 1);
  std::size_t scanned = 0;
  for (const auto& p : gaps) {
    if (in(p)) continue;
    ++scanned;
    Condition3 c = check_condition3(in, gens, p);
    if (c.count >= 2) {
      v.verdict = Verdict::No;
      v.witness = Witness{p, c.indices[0], c.indices[1], gens[c.indices[0]], gens[c.indices[1]]};
      v.diagnostics.push_back("gaps scanned = " + std::to_string(scanned));
      return v;
    }
  }
  v.diagnostics.push_back("gaps scanned = " + std::to_string(scanned));
  v.verdict = Verdict::Yes;
  return v;
}

PropertyVerdict guarded(const char* property, const std::function<PropertyVerdict()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    PropertyVerdict v;
    v.property = property;
    switch (e.kind()) {
      case ErrorKind::BudgetExceeded: v.verdict = Verdict::Inconclusive; break;
      case ErrorKind::AssumptionViolated:
      case ErrorKind::UnsupportedCase:
      case ErrorKind::NotSimplicial: v.verdict = Verdict::Unsupported; break;
      default: throw;
    }
    v.case_used = std::string(error_name(e.kind()));
    v.diagnostics.push_back(e.what());
    return v;
  }
}

std::optional<PropertyVerdict> trivial_cases(const SemigroupHandle& h, const char* property) {
  PropertyVerdict v;
  v.property = property;
  if (!h.simplicial) {
    v.verdict = Verdict::Unsupported;
    v.case_used = "not simplicial";
    v.diagnostics.push_back("the cone has " + std::to_string(h.rays.size()) + " extremal rays");
    return v;
  }
  return std::nullopt;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unsupported: return "unsupported";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Condition3 check_condition3(const MonoidPredicate& in_monoid, std::span<const LatticePoint> gens, const LatticePoint& p) {
  Condition3 c;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (in_monoid(p + gens[i])) {
      ++c.count;
      c.indices.push_back(static_cast<int>(i));
    }
  return c;
}

Condition3 check_condition3(const SemigroupHandle& h, const LatticePoint& p) {
  if (h.locate(p) != PointStatus::Gap) throw Error(ErrorKind::NotAGap, to_string(p) + " is not a gap");
  auto gens = lattice_gens(h);
  return check_condition3([&h](const LatticePoint& x) { return h.in_semigroup(x); }, gens, p);
}

bool witness_holds(const MonoidPredicate& in_monoid, const Witness& w) {
  return w.i != w.j && !in_monoid(w.p) && in_monoid(w.p + w.g_i) && in_monoid(w.p + w.g_j);
}

PropertyVerdict is_cohen_macaulay(const SemigroupHandle& h, const DecideOptions&) {
  const char* name = "cohen-macaulay";
  if (auto t = trivial_cases(h, name)) return *t;
  return guarded(name, [&] {
    auto cls = classify(h);
    MonoidPredicate in = [&h](const LatticePoint& x) { return h.in_semigroup(x); };
    return decide_cm(h, cls, in, lattice_gens(h), 0, name);
  });
}

PropertyVerdict is_gorenstein(const SemigroupHandle& h, const DecideOptions& opts) {
  const char* name = "gorenstein";
  PropertyVerdict cm = is_cohen_macaulay(h, opts);
  if (cm.verdict != Verdict::Yes) {
    cm.property = name;
    cm.diagnostics.push_back("not Cohen-Macaulay, hence not Gorenstein");
    return cm;
  }
  return guarded(name, [&] {
    PropertyVerdict v = cm;
    v.property = name;
    AperyBasis ap = apery_intersection(h, opts.search);
    v.maximal_elements = ap.maximal_elements;
    v.diagnostics.push_back("apery elements = " + std::to_string(ap.elements.size()));
    v.diagnostics.push_back("maximal elements = " + std::to_string(ap.maximal_elements.size()));
    if (!ap.certified) {
      v.verdict = Verdict::Inconclusive;
      return v;
    }
    v.verdict = ap.maximal_elements.size() == 1 ? Verdict::Yes : Verdict::No;
    return v;
  });
}

PropertyVerdict is_buchsbaum(const SemigroupHandle& h, const DecideOptions& opts) {
  const char* name = "buchsbaum";
  if (auto t = trivial_cases(h, name)) return *t;
  return guarded(name, [&] {
    auto cls = classify(h);
    GeneratorSet gens = minimal_generators(h, opts.search);
    ClosureSemigroup sbar(h, closure_added_points(h, gens.generators));
    auto bar_gens = sbar.ray_generators();
    std::int64_t hull = kappa0(h, cls) + period_length(h);
    PropertyVerdict v = decide_cm(h, cls, sbar.predicate(), bar_gens, hull, name);
    v.diagnostics.push_back("closure adds " + std::to_string(sbar.added_points().size()) + " points");
    v.diagnostics.push_back("closure ray generators recomputed");
    return v;
  });
}

std::vector<Point3> gorenstein_family(std::int64_t k) {
  if (k < 2) throw Error(ErrorKind::BadParameter, "family parameter k must be at least 2");
  Rat r(k);
  return {Point3{Rat(4), Rat(0), Rat(0)}, Point3{4 + 2 * r, Rat(0), Rat(0)}, Point3{4 + r, r, Rat(0)},
          Point3{4 + r, Rat(0), Rat(1)}};
}

std::vector<std::vector<LatticePoint>> apery_table(std::int64_t k, const SearchOptions& opts) {
  auto verts = gorenstein_family(k);
  SemigroupHandle h = build(verts);
  std::vector<LatticePoint> g12;
  for (const auto& v : {verts[0], verts[2]}) {
    int i = h.ray_index(v);
    g12.push_back(to_lattice(h.ray_generators[i]));
  }
  // Every element with z > 0 drops by g3, so the z = 0 slice with g1, g2 is the whole intersection.
  AperyBasis ap = apery_intersection(h, [&h](const LatticePoint& x) { return h.in_semigroup(x); }, g12, opts,
                                     [](const LatticePoint& x) { return x.z == 0; });
  std::vector<std::vector<LatticePoint>> rows(static_cast<std::size_t>(k) + 1);
  for (const auto& e : ap.elements) rows[std::min<std::int64_t>(e.y, k)].push_back(e);
  return rows;
}

}  // namespace polysg
