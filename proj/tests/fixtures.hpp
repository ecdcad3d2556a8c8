#pragma once

#include <random>
#include <string>
#include <vector>

#include "polysg/errors.hpp"
#include "polysg/gapdecomp.hpp"
#include "polysg/rational.hpp"
#include "polysg/semigroup.hpp"

namespace fx {

using polysg::Point3;
using polysg::Rat;

inline Point3 pt(const char* x, const char* y, const char* z) {
  return {polysg::parse_rat(x), polysg::parse_rat(y), polysg::parse_rat(z)};
}
inline Point3 pt(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

inline std::vector<Point3> five_vertex() {
  return {pt(3, 3, 2), pt(2, 3, 1), pt(1, 2, 3), pt("3/2", "3", "9/2"), pt("33/16", "27/8", "63/16")};
}
inline std::vector<Point3> family3() { return {pt(4, 0, 0), pt(7, 3, 0), pt(10, 0, 0), pt(7, 0, 1)}; }
inline std::vector<Point3> six_vertex() {
  return {pt("24/5", "12/5", "12/5"),    pt("8/3", "16/3", "8/3"),     pt("8/3", "8/3", "16/3"),
          pt("152/33", "152/33", "16/3"), pt("152/33", "16/3", "152/33"), pt("856/165", "68/15", "68/15")};
}
inline std::vector<Point3> closure_tetra() {
  return {pt("24/5", "12/5", "12/5"), pt("8/3", "16/3", "8/3"), pt("8/3", "8/3", "16/3"), pt("16/3", "16/3", "16/3")};
}
inline std::vector<Point3> non_normal() { return {pt(6, 0, 0), pt(0, 6, 0), pt(0, 0, 6), pt("2.2", "2.2", "2.2")}; }
inline std::vector<Point3> cube() {
  std::vector<Point3> out;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c) out.push_back(pt(a, b, c));
  return out;
}
// x, y, z >= 0 and 2 <= x + y + z <= 3: no ray meets P in a single point.
inline std::vector<Point3> shell() {
  return {pt(2, 0, 0), pt(0, 2, 0), pt(0, 0, 2), pt(3, 0, 0), pt(0, 3, 0), pt(0, 0, 3)};
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  Rat rat(long lo, long hi, long max_den) {
    long d = uniform(1, max_den);
    Rat q(uniform(lo * d, hi * d), d);
    q.canonicalize();
    return q;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }
};

inline bool independent(const Point3& a, const Point3& b, const Point3& c) { return sgn(polysg::det3(a, b, c)) != 0; }

// Three linearly independent small integer directions in the closed orthant.
inline std::vector<Point3> random_directions(Rng& r) {
  while (true) {
    std::vector<Point3> d;
    for (int i = 0; i < 3; ++i) {
      Point3 p{Rat(r.uniform(0, 3)), Rat(r.uniform(0, 3)), Rat(r.uniform(0, 3))};
      if (p.is_zero()) p.x = 1;
      d.push_back(p);
    }
    if (independent(d[0], d[1], d[2])) return d;
  }
}

// Tetrahedron with vertices A, B, C on three rays and D inside their cone (or on a ray),
// so the semigroup is simplicial.
inline std::vector<Point3> random_simplicial_tetrahedron(Rng& r) {
  auto d = random_directions(r);
  std::vector<Point3> v;
  for (const auto& di : d) v.push_back(r.rat(1, 3, 3) * di);
  static const std::vector<Rat> sigmas{Rat(1, 3), Rat(1, 2), Rat(2), Rat(5, 2), Rat(3)};
  Rat sigma = r.pick(sigmas);
  if (r.uniform(0, 3) == 0) {
    v.push_back(sigma * v[static_cast<std::size_t>(r.uniform(0, 2))]);
  } else {
    Rat a(r.uniform(1, 3)), b(r.uniform(1, 3)), c(r.uniform(1, 3));
    Rat s = a + b + c;
    Rat f = sigma / s;
    v.push_back(Rat(f * a) * v[0] + Rat(f * b) * v[1] + Rat(f * c) * v[2]);
  }
  return v;
}

// Polyhedron on three rays; each ray meets P in a point or a segment, plus optional interior vertices.
// `point_rays` fixes how many rays meet P in a single point.
inline std::vector<Point3> random_polyhedron(Rng& r, int point_rays) {
  auto d = random_directions(r);
  std::vector<Point3> v, near;
  for (int i = 0; i < 3; ++i) {
    Rat lo = r.rat(1, 2, 2);
    near.push_back(lo * d[i]);
    v.push_back(near.back());
    if (i >= point_rays) v.push_back(Rat(lo * Rat(r.uniform(2, 3))) * d[i]);
  }
  static const std::vector<Rat> sigmas{Rat(1, 3), Rat(1, 2), Rat(2), Rat(3)};
  int extra = static_cast<int>(r.uniform(point_rays == 3 ? 1 : 0, 2));
  for (int e = 0; e < extra; ++e) {
    Rat a(r.uniform(1, 3)), b(r.uniform(1, 3)), c(r.uniform(1, 3));
    Rat f = r.pick(sigmas) / (a + b + c);
    v.push_back(Rat(f * a) * near[0] + Rat(f * b) * near[1] + Rat(f * c) * near[2]);
  }
  return v;
}

}  // namespace fx
