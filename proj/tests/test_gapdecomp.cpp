#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "polysg/errors.hpp"
#include "polysg/gapdecomp.hpp"
#include "polysg/oracle.hpp"

using namespace polysg;
using fx::pt;

namespace {

VertexClass class_of(const SemigroupHandle& h, const VertexClassification& c, const Point3& v) {
  int i = h.body.vertex_index(v);
  REQUIRE(i >= 0);
  return c.of_vertex[i];
}

std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) { return {v.begin(), v.end()}; }

std::set<LatticePoint> corner_points(const CornerSlab& c) {
  std::set<LatticePoint> out;
  for (const auto& t : c.tetrahedra)
    for (const auto& p : t.lattice_points()) out.insert(p);
  return out;
}

// Near-endpoint ratio lambda_hi / lambda_lo for the ray through v, straight from ray_intersect.
Rat ray_ratio(const Polyhedron& body, const Point3& v) {
  RayHit r = ray_intersect(body, primitive_direction(v));
  return r.lambda_hi / r.lambda_lo;
}

bool interiority_holds(const SemigroupHandle& h, const VertexClassification& c, std::int64_t k) {
  for (std::size_t v = 0; v < h.body.vertices.size(); ++v) {
    if (c.of_vertex[v] == VertexClass::W) continue;
    Rat rho = ray_ratio(h.body, h.body.vertices[v]);
    if (!(Rat(k + 1) < Rat(k) * rho)) return false;
  }
  return true;
}

struct Instance {
  std::vector<Point3> verts;
  SemigroupHandle h;
  VertexClassification cls;
  std::int64_t k0;
};

// Random polyhedra the slab construction accepts, cycling through 0..3 point rays.
std::vector<Instance> supported_random(std::uint64_t seed, int wanted) {
  fx::Rng rng(seed);
  std::vector<Instance> out;
  for (int attempt = 0; static_cast<int>(out.size()) < wanted && attempt < 200; ++attempt) {
    auto verts = attempt % 5 == 4 ? fx::random_simplicial_tetrahedron(rng)
                                  : fx::random_polyhedron(rng, attempt % 4);
    try {
      auto h = build(verts);
      auto cls = classify(h);
      auto k0 = kappa0(h, cls);
      slabs(h, cls, k0);
      out.push_back({verts, h, cls, k0});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AssumptionViolated && e.kind() != ErrorKind::DegenerateInput) throw;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("classification of the family tetrahedron") {
  auto h = build(fx::family3());
  auto c = classify(h);
  CHECK(class_of(h, c, pt(7, 3, 0)) == VertexClass::W);
  CHECK(class_of(h, c, pt(7, 0, 1)) == VertexClass::W);
  CHECK(class_of(h, c, pt(4, 0, 0)) == VertexClass::W1);
  CHECK(class_of(h, c, pt(10, 0, 0)) == VertexClass::W2);
  CHECK(c.V1.empty());
  CHECK(c.V2.empty());
}

TEST_CASE("classification of the five-vertex polyhedron") {
  auto h = build(fx::five_vertex());
  auto c = classify(h);
  CHECK(class_of(h, c, pt(1, 2, 3)) == VertexClass::W1);
  CHECK(class_of(h, c, pt("3/2", "3", "9/2")) == VertexClass::W2);
  CHECK(class_of(h, c, pt(2, 3, 1)) == VertexClass::W);
  CHECK(class_of(h, c, pt(3, 3, 2)) == VertexClass::W);
  CHECK(class_of(h, c, pt("33/16", "27/8", "63/16")) == VertexClass::V2);
  CHECK(c.W.size() == 2);
}

TEST_CASE("cube diagonal is not an extremal ray") {
  auto h = build(fx::cube());
  auto c = classify(h);
  CHECK(!h.simplicial);
  CHECK(class_of(h, c, pt(1, 1, 1)) == VertexClass::V1);
  CHECK(class_of(h, c, pt(2, 2, 2)) == VertexClass::V2);
  // The six extremal rays pass through the vertices with a single repeated coordinate.
  CHECK(c.W.size() == 6);
}

TEST_CASE("classes partition the vertices") {
  fx::Rng rng(8001);
  for (int trial = 0; trial < 30; ++trial) {
    auto verts = trial % 3 ? fx::random_polyhedron(rng, trial % 4) : fx::random_simplicial_tetrahedron(rng);
    auto h = build(verts);
    auto c = classify(h);
    std::set<int> all;
    for (const auto* part : {&c.W, &c.W1, &c.W2, &c.V1, &c.V2})
      for (int v : *part) CHECK(all.insert(v).second);
    CHECK(all.size() == h.body.vertices.size());
  }
}

TEST_CASE("kappa0 values") {
  auto fam = build(fx::family3());
  CHECK(kappa0(fam, classify(fam)) == 1);
  auto five = build(fx::five_vertex());
  CHECK(kappa0(five, classify(five)) == 3);
  // Ratio 3/2 on every ray: (k+1) < 3k/2 first holds at k = 3.
  auto sh = build(fx::shell());
  CHECK(kappa0(sh, classify(sh)) == 3);
  // Ratio exactly 2: the strict inequality fails at k = 1.
  std::vector<Point3> two{pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(2, 0, 0), pt(0, 2, 0), pt(0, 0, 2)};
  auto t = build(two);
  CHECK(kappa0(t, classify(t)) == 2);
}

TEST_CASE("kappa0 is minimal") {
  std::vector<std::vector<Point3>> all{fx::family3(), fx::five_vertex(), fx::six_vertex(), fx::shell(),
                                       fx::non_normal()};
  for (const auto& inst : supported_random(8002, 12)) all.push_back(inst.verts);
  for (const auto& verts : all) {
    auto h = build(verts);
    auto c = classify(h);
    auto k0 = kappa0(h, c);
    for (std::int64_t k = k0; k <= k0 + 3; ++k) CHECK(interiority_holds(h, c, k));
    if (k0 > 0) CHECK(!interiority_holds(h, c, k0 - 1));
  }
}

TEST_CASE("corner vertex sets translate with the level") {
  for (const auto& verts : {fx::family3(), fx::five_vertex(), fx::six_vertex()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto k0 = kappa0(h, c);
    for (int i = 0; i < 3; ++i) {
      if (!c.ray_is_point(i)) continue;
      const Point3& P = h.body.vertices[c.near_vertex[i]];
      auto base = corner_vertex_set(h, c, i, k0);
      std::sort(base.begin(), base.end());
      for (std::int64_t j = 1; j <= 5; ++j) {
        auto next = corner_vertex_set(h, c, i, k0 + j);
        std::vector<Point3> shifted;
        for (const auto& q : base) shifted.push_back(q + Rat(j) * P);
        std::sort(next.begin(), next.end());
        std::sort(shifted.begin(), shifted.end());
        CHECK(next == shifted);
      }
    }
  }
}

TEST_CASE("corner vertex sets are homogeneous") {
  auto verts = fx::family3();
  std::vector<Point3> doubled;
  for (const auto& v : verts) doubled.push_back(Rat(2) * v);
  auto h = build(verts);
  auto h2 = build(doubled);
  auto c = classify(h);
  auto c2 = classify(h2);
  for (int i = 0; i < 3; ++i) {
    if (!c.ray_is_point(i)) continue;
    int i2 = h2.ray_index(h.rays[i]);
    REQUIRE(i2 >= 0);
    for (std::int64_t k = 2; k <= 4; ++k) {
      auto a = corner_vertex_set(h, c, i, k);
      auto b = corner_vertex_set(h2, c2, i2, k);
      for (auto& q : a) q = Rat(2) * q;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("corner points lie on both dilates") {
  auto h = build(fx::family3());
  auto c = classify(h);
  int i = h.ray_index(pt(7, 0, 1));
  for (const auto& q : corner_vertex_set(h, c, i, 1)) {
    bool on1 = contains(dilate(h.body, 1), q) && !contains(dilate(h.body, 1), q, Containment::RelativeInterior);
    bool on2 = contains(dilate(h.body, 2), q) && !contains(dilate(h.body, 2), q, Containment::RelativeInterior);
    CHECK((on1 || on2));
  }
}

TEST_CASE("family tetrahedron gap layer is the bridge alone") {
  auto h = build(fx::family3());
  auto c = classify(h);
  for (std::int64_t k = 1; k <= 4; ++k) {
    auto s = slabs(h, c, k);
    CHECK(s.bridge.size() == 1);
    for (const auto& cs : s.corner) CHECK(cs.tetrahedra.empty());
  }
}

TEST_CASE("slab gap points match the oracle on the fixtures") {
  for (const auto& verts : {fx::family3(), fx::five_vertex(), fx::non_normal(), fx::six_vertex()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto k0 = kappa0(h, c);
    oracle::Polytope o(verts);
    for (std::int64_t k = k0; k <= k0 + 2; ++k)
      CHECK(as_set(slab_gap_points(h, slabs(h, c, k), k)) == oracle::level_gaps(o, k));
  }
}

TEST_CASE("slab gap points match the oracle on random polyhedra") {
  auto insts = supported_random(8003, 10);
  REQUIRE(insts.size() >= 10);
  std::set<GapCase> seen;
  for (const auto& in : insts) {
    seen.insert(gap_case(in.h, in.cls));
    oracle::Polytope o(in.verts);
    for (std::int64_t k = in.k0; k <= in.k0 + 3; ++k)
      CHECK(as_set(slab_gap_points(in.h, slabs(in.h, in.cls, k), k)) == oracle::level_gaps(o, k));
  }
  CHECK(seen.size() >= 3);
}

TEST_CASE("corner slabs are periodic") {
  for (const auto& verts : {fx::five_vertex(), fx::six_vertex(), fx::family3()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto K = k3(h, c);
    for (std::int64_t k = K; k <= K + 2; ++k) {
      auto a = slabs(h, c, k);
      for (const auto& cs : a.corner) {
        auto hp = h.ray_point_denominator(cs.ray);
        LatticePoint shift = to_lattice(Rat(hp) * h.ray_point(cs.ray));
        auto b = slabs(h, c, k + hp);
        const CornerSlab* match = nullptr;
        for (const auto& other : b.corner)
          if (other.ray == cs.ray) match = &other;
        REQUIRE(match);
        std::set<LatticePoint> moved;
        for (const auto& p : corner_points(cs)) moved.insert(p + shift);
        CHECK(moved == corner_points(*match));
      }
    }
  }
}

TEST_CASE("bridge slabs absorb the near points") {
  fx::Rng rng(8004);
  for (const auto& verts : {fx::family3(), fx::five_vertex(), fx::six_vertex()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto k0 = kappa0(h, c);
    auto now = slabs(h, c, k0 + 1);
    auto next = slabs(h, c, k0 + 2);
    REQUIRE(now.bridge.size() == next.bridge.size());
    for (std::size_t b = 0; b < now.bridge.size(); ++b) {
      const auto& br = now.bridge[b];
      const Point3& Pa = h.body.vertices[c.near_vertex[br.ray_a]];
      const Point3& Pb = h.body.vertices[c.near_vertex[br.ray_b]];
      const auto& corners = br.body.points();
      for (int s = 0; s < 100; ++s) {
        std::vector<Rat> w;
        Rat total(0);
        for (std::size_t q = 0; q < corners.size(); ++q) {
          w.emplace_back(rng.uniform(0, 5));
          total += w.back();
        }
        if (sgn(total) == 0) continue;
        Point3 p{Rat(0), Rat(0), Rat(0)};
        for (std::size_t q = 0; q < corners.size(); ++q) p = p + Rat(w[q] / total) * corners[q];
        REQUIRE(br.body.contains(p));
        CHECK(next.bridge[b].body.contains(p + Pa));
        CHECK(next.bridge[b].body.contains(p + Pb));
      }
    }
  }
}

TEST_CASE("k3 needs point rays") {
  auto h = build(fx::shell());
  try {
    k3(h, classify(h));
    FAIL("expected UnsupportedCase");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedCase);
  }
}

TEST_CASE("k3 regression values") {
  auto five = build(fx::five_vertex());
  CHECK(k3(five, classify(five)) == 3);
  auto six = build(fx::six_vertex());
  CHECK(k3(six, classify(six)) == 3);
  auto fam = build(fx::family3());
  CHECK(k3(fam, classify(fam)) == 1);
}

TEST_CASE("corner translates stay clear of the other slabs above k3") {
  for (const auto& verts : {fx::five_vertex(), fx::six_vertex()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto K = k3(h, c);
    auto L = period_length(h);
    // Per level: lattice points of every corner slab, and of every bridge, tagged with their rays.
    struct Level {
      std::vector<std::pair<int, std::set<LatticePoint>>> corner;
      std::vector<std::pair<std::pair<int, int>, std::set<LatticePoint>>> bridge;
    };
    std::map<std::int64_t, Level> cache;
    auto level = [&](std::int64_t k) -> const Level& {
      auto it = cache.find(k);
      if (it != cache.end()) return it->second;
      Level lv;
      auto s = slabs(h, c, k);
      for (const auto& cs : s.corner) lv.corner.emplace_back(cs.ray, corner_points(cs));
      for (const auto& br : s.bridge) {
        auto pts = br.body.lattice_points();
        lv.bridge.emplace_back(std::make_pair(br.ray_a, br.ray_b), std::set<LatticePoint>(pts.begin(), pts.end()));
      }
      return cache.emplace(k, std::move(lv)).first->second;
    };
    for (std::int64_t k = K; k <= K + 5; ++k) {
      for (const auto& [ray, pts] : level(k).corner) {
        for (const auto& p : pts) {
          if (h.in_semigroup(p)) continue;
          for (int j = 0; j < 3; ++j) {
            if (j == ray) continue;
            LatticePoint q = p + to_lattice(h.ray_generators[j]);
            for (std::int64_t m = std::max(K, k - 2); m <= k + 2 * L + 8; ++m) {
              for (const auto& [r, other] : level(m).corner)
                if (r != ray) CHECK(!other.count(q));
              for (const auto& [rays, other] : level(m).bridge)
                if (rays.first != ray && rays.second != ray) CHECK(!other.count(q));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("gap points are gaps") {
  for (const auto& verts : {fx::five_vertex(), fx::six_vertex(), fx::non_normal(), fx::shell()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto region = gap_region(h, c);
    for (const auto& p : gap_points(h, c, region)) CHECK(h.locate(p) == PointStatus::Gap);
  }
}

TEST_CASE("non-normal gaps include (1,1,1)") {
  auto h = build(fx::non_normal());
  auto c = classify(h);
  auto g = gap_points(h, c, gap_region(h, c));
  CHECK(std::find(g.begin(), g.end(), LatticePoint{1, 1, 1}) != g.end());
}

TEST_CASE("finite gap set without point rays") {
  auto verts = fx::shell();
  auto h = build(verts);
  auto c = classify(h);
  CHECK(gap_case(h, c) == GapCase::NoPointRay);
  auto g = as_set(gap_points(h, c, gap_region(h, c)));
  oracle::Polytope o(verts);
  auto small = oracle::scan_gaps(o, {12, 0});
  auto large = oracle::scan_gaps(o, {20, 0});
  CHECK(small == large);
  CHECK(g == small);
  CHECK(g == std::set<LatticePoint>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("gap points cover the oracle gaps in a box") {
  for (const auto& verts : {fx::five_vertex(), fx::non_normal()}) {
    auto h = build(verts);
    auto c = classify(h);
    auto region = gap_region(h, c);
    auto mine = as_set(gap_points(h, c, region, 6));
    oracle::Polytope o(verts);
    for (const auto& p : oracle::scan_gaps(o, {8, 0}))
      if (h.below_level(p, region.hull_level + 6 * region.period)) CHECK(mine.count(p));
  }
}

TEST_CASE("reducing a corner gap along its own ray generator") {
  auto h = build(fx::six_vertex());
  auto c = classify(h);
  auto K = k3(h, c);
  for (std::int64_t k = K + 15; k <= K + 17; ++k) {
    for (const auto& cs : slabs(h, c, k).corner) {
      auto hp = h.ray_point_denominator(cs.ray);
      std::int64_t t = (k - K) / hp;
      LatticePoint gi = to_lattice(h.ray_generators[cs.ray]);
      for (const auto& p : corner_points(cs)) {
        if (h.in_semigroup(p)) continue;
        for (int j = 0; j < 3; ++j) {
          if (j == cs.ray) continue;
          LatticePoint gj = to_lattice(h.ray_generators[j]);
          if (h.in_semigroup(p + gj)) CHECK(h.in_semigroup(p - t * gi + gj));
        }
      }
    }
  }
}
