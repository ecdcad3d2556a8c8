#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "polysg/errors.hpp"
#include "polysg/oracle.hpp"
#include "polysg/semigroup.hpp"

using namespace polysg;
using fx::pt;

namespace {

std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) { return {v.begin(), v.end()}; }

// Points of the box that are sums of generators, by dynamic programming in degree order.
std::set<LatticePoint> generated_in_box(const std::vector<LatticePoint>& gens, std::int64_t n) {
  std::set<LatticePoint> reach{{0, 0, 0}};
  std::vector<LatticePoint> all;
  for (std::int64_t x = 0; x <= n; ++x)
    for (std::int64_t y = 0; y <= n; ++y)
      for (std::int64_t z = 0; z <= n; ++z) all.push_back({x, y, z});
  std::sort(all.begin(), all.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
  });
  for (const auto& p : all) {
    if (p.is_zero()) continue;
    for (const auto& g : gens) {
      LatticePoint q = p - g;
      if (q.nonnegative() && reach.count(q)) {
        reach.insert(p);
        break;
      }
    }
  }
  return reach;
}

}  // namespace

TEST_CASE("build on the family tetrahedron") {
  auto h = build(fx::family3());
  CHECK(h.simplicial);
  REQUIRE(h.rays.size() == 3);
  std::set<LatticePoint> gens;
  for (const auto& g : h.ray_generators) gens.insert(to_lattice(g));
  CHECK(gens == std::set<LatticePoint>{{4, 0, 0}, {7, 3, 0}, {7, 0, 1}});
}

TEST_CASE("build rejects flat input") {
  std::vector<Point3> tri{pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)};
  try {
    build(tri);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("five-vertex polyhedron is simplicial") {
  auto h = build(fx::five_vertex());
  CHECK(h.simplicial);
  CHECK(h.rays.size() == 3);
}

TEST_CASE("non-normal membership") {
  auto h = build(fx::non_normal());
  CHECK(member(h, {2, 2, 2}).in);
  CHECK(!member(h, {1, 1, 1}).in);
  auto o = member(h, {0, 0, 0});
  CHECK(o.in);
  REQUIRE(o.witness_k);
  CHECK(*o.witness_k == 0);
}

TEST_CASE("outside the cone is an error, not a gap") {
  auto h = build(fx::family3());
  try {
    member(h, {0, 1, 0});
    FAIL("expected OutsideCone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideCone);
  }
}

TEST_CASE("membership witness is the least layer") {
  auto h = build(fx::five_vertex());
  oracle::Polytope o(fx::five_vertex());
  for (LatticePoint p : {LatticePoint{1, 2, 3}, LatticePoint{4, 6, 7}, LatticePoint{6, 9, 8}}) {
    auto m = member(h, p);
    REQUIRE(m.in);
    REQUIRE(m.witness_k);
    CHECK(o.in_dilate(p, *m.witness_k));
    for (std::int64_t k = 0; k < *m.witness_k; ++k) CHECK(!o.in_dilate(p, k));
  }
}

TEST_CASE("membership agrees with the oracle on random polyhedra") {
  fx::Rng rng(7001);
  const std::int64_t n = 30;
  for (int trial = 0; trial < 10; ++trial) {
    auto verts = trial % 2 ? fx::random_polyhedron(rng, trial % 4) : fx::random_simplicial_tetrahedron(rng);
    auto h = build(verts);
    oracle::Polytope o(verts);
    auto in_s = oracle::scan_semigroup(o, {n, 0});
    auto in_c = oracle::scan_cone(o, {n, 0});
    int mismatches = 0;
    for (std::int64_t x = 0; x <= n; ++x)
      for (std::int64_t y = 0; y <= n; ++y)
        for (std::int64_t z = 0; z <= n; ++z) {
          LatticePoint p{x, y, z};
          PointStatus s = h.locate(p);
          bool cone = s != PointStatus::OutsideCone;
          if (cone != (in_c.count(p) > 0)) ++mismatches;
          if ((s == PointStatus::Member) != (in_s.count(p) > 0)) ++mismatches;
        }
    CHECK_MESSAGE(mismatches == 0, "trial ", trial);
  }
}

TEST_CASE("published generator lists") {
  SUBCASE("five vertices") {
    auto g = minimal_generators(build(fx::five_vertex()));
    CHECK(g.certified);
    CHECK(g.generators == std::vector<LatticePoint>{{1, 2, 3}, {2, 3, 1}, {2, 3, 2}, {2, 3, 3}, {3, 3, 2}, {4, 6, 7}});
  }
  SUBCASE("family tetrahedron") {
    auto g = minimal_generators(build(fx::family3()));
    CHECK(g.certified);
    CHECK(as_set(g.generators) == std::set<LatticePoint>{{4, 0, 0}, {7, 3, 0}, {7, 0, 1}, {6, 0, 0}, {7, 0, 0},
                                                         {5, 0, 0}, {6, 1, 0}, {8, 1, 0}, {7, 1, 0}, {5, 1, 0},
                                                         {6, 2, 0}, {8, 2, 0}, {7, 2, 0}});
  }
}

TEST_CASE("generators match the naive sieve and generate the box") {
  for (const auto& verts : {fx::five_vertex(), fx::family3(), fx::non_normal()}) {
    oracle::Polytope o(verts);
    auto g = minimal_generators(build(verts));
    std::int64_t n = 15;
    auto naive = oracle::naive_msg(o, {n, 0});
    std::set<LatticePoint> in_box;
    for (const auto& p : g.generators)
      if (p.x <= n && p.y <= n && p.z <= n) in_box.insert(p);
    CHECK(naive == in_box);
    auto s = oracle::scan_semigroup(o, {n, 0});
    s.insert({0, 0, 0});
    CHECK(generated_in_box(g.generators, n) == s);
  }
}

TEST_CASE("generators of random tetrahedra generate the box") {
  fx::Rng rng(7002);
  for (int trial = 0; trial < 6; ++trial) {
    auto verts = fx::random_simplicial_tetrahedron(rng);
    oracle::Polytope o(verts);
    auto h = build(verts);
    auto g = minimal_generators(h);
    CHECK(g.certified);
    for (const auto& p : g.generators) CHECK(h.in_semigroup(p));
    const std::int64_t n = 14;
    auto s = oracle::scan_semigroup(o, {n, 0});
    s.insert({0, 0, 0});
    CHECK_MESSAGE(generated_in_box(g.generators, n) == s, "trial ", trial);
  }
}

TEST_CASE("ray generators") {
  auto h = build(fx::family3());
  CHECK(ray_generator(h, h.ray_index(pt(4, 0, 0))) == pt(4, 0, 0));
  auto c = build(fx::closure_tetra());
  CHECK(ray_generator(c, c.ray_index(pt(2, 1, 1))) == pt(24, 12, 12));
  auto f = build(fx::five_vertex());
  CHECK(ray_generator(f, f.ray_index(pt(3, 3, 2))) == pt(3, 3, 2));
}

TEST_CASE("ray generator is the lambda-smallest member on its ray") {
  fx::Rng rng(7003);
  for (int trial = 0; trial < 12; ++trial) {
    auto verts = fx::random_polyhedron(rng, trial % 4);
    auto h = build(verts);
    oracle::Polytope o(verts);
    for (int i = 0; i < static_cast<int>(h.rays.size()); ++i) {
      LatticePoint r = to_lattice(h.rays[i]);
      LatticePoint g = to_lattice(ray_generator(h, i));
      bool found = false;
      for (std::int64_t m = 1; m <= 200 && !found; ++m) {
        LatticePoint q = m * r;
        auto [lo, hi] = o.layer_range(q);
        bool present = false;
        for (std::int64_t k = std::max<std::int64_t>(lo, 1); k <= hi && !present; ++k) present = o.in_dilate(q, k);
        if (present) {
          CHECK(q == g);
          found = true;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("period length") {
  CHECK(period_length(build(fx::five_vertex())) == 1);
  CHECK(period_length(build(fx::six_vertex())) == 15);
  CHECK(period_length(build(fx::shell())) == 1);
}

TEST_CASE("Apery intersection") {
  for (const auto& verts : {fx::five_vertex(), fx::family3()}) {
    auto h = build(verts);
    auto a = apery_intersection(h);
    CHECK(a.certified);
    CHECK(std::find(a.elements.begin(), a.elements.end(), LatticePoint{0, 0, 0}) != a.elements.end());
    for (const auto& e : a.elements) {
      CHECK(h.in_semigroup(e));
      for (const auto& g : h.ray_generators) {
        LatticePoint d = e - to_lattice(g);
        if (d.nonnegative() && h.locate(d) != PointStatus::OutsideCone) CHECK(!h.in_semigroup(d));
      }
    }
    // Maximal elements are pairwise incomparable and dominate every element.
    for (const auto& m : a.maximal_elements)
      for (const auto& e : a.elements) {
        if (e == m) continue;
        LatticePoint d = e - m;
        CHECK(!(d.nonnegative() && h.locate(d) == PointStatus::Member));
      }
  }
}

TEST_CASE("Apery intersection agrees with the naive scan") {
  auto verts = fx::family3();
  auto h = build(verts);
  auto a = apery_intersection(h);
  std::vector<LatticePoint> gens;
  for (const auto& g : h.ray_generators) gens.push_back(to_lattice(g));
  oracle::Polytope o(verts);
  auto naive = oracle::naive_apery(o, {30, 0}, gens);
  CHECK(naive == as_set(a.elements));
}

TEST_CASE("closure of a tetrahedron adds nothing") {
  auto h = build(fx::closure_tetra());
  auto c = closure(h, minimal_generators(h));
  CHECK(c.added_points.empty());
}

TEST_CASE("closure properties") {
  for (const auto& verts : {fx::six_vertex(), fx::shell(), fx::five_vertex()}) {
    auto h = build(verts);
    auto g = minimal_generators(h);
    auto c = closure(h, g);
    for (const auto& a : c.added_points) {
      CHECK(h.locate(a) == PointStatus::Gap);
      for (const auto& s : g.generators) CHECK(h.in_semigroup(a + s));
    }
    ClosureSemigroup cs(h, c.added_points);
    for (std::int64_t x = 0; x <= 12; ++x)
      for (std::int64_t y = 0; y <= 12; ++y)
        for (std::int64_t z = 0; z <= 12; ++z) {
          LatticePoint p{x, y, z};
          if (h.in_semigroup(p)) CHECK(cs.contains(p));
          if (cs.contains(p)) CHECK(h.locate(p) != PointStatus::OutsideCone);
        }
  }
}

TEST_CASE("shell closure fills the three unit gaps") {
  auto h = build(fx::shell());
  auto c = closure(h, minimal_generators(h));
  CHECK(as_set(c.added_points) == std::set<LatticePoint>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("budget exhaustion") {
  SearchOptions tiny;
  tiny.budget_layers = 2;
  auto h = build(fx::six_vertex());
  try {
    minimal_generators(h, tiny);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  tiny.allow_partial = true;
  CHECK(!minimal_generators(h, tiny).certified);
}

TEST_CASE("lattice points below a level") {
  auto verts = fx::five_vertex();
  auto h = build(verts);
  auto pts = lattice_points_below(h, 3);
  for (const auto& p : pts) CHECK(h.below_level(p, 3));
  CHECK(std::find(pts.begin(), pts.end(), LatticePoint{0, 0, 0}) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), LatticePoint{3, 6, 9}) != pts.end());
}
