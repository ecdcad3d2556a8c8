#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace polysg {

/// Exact rational scalar. GMP keeps it canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using BigInt = mpz_class;

/// Parses "7", "-3/4", "33/16" or a decimal such as "2.2" (converted exactly to 11/5).
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
BigInt floor_rat(const Rat& r);
BigInt ceil_rat(const Rat& r);
BigInt lcm(const BigInt& a, const BigInt& b);
std::int64_t to_int64(const BigInt& v);

struct Point3 {
  Rat x, y, z;

  Point3() = default;
  Point3(Rat x_, Rat y_, Rat z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  const Rat& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  Rat& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
  bool is_integral() const;
};

Point3 operator+(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a);
Point3 operator*(const Rat& s, const Point3& p);
bool operator==(const Point3& a, const Point3& b);
/// Lexicographic on (x, y, z).
bool operator<(const Point3& a, const Point3& b);

Rat dot(const Point3& a, const Point3& b);
Point3 cross(const Point3& a, const Point3& b);
Rat det3(const Point3& a, const Point3& b, const Point3& c);
Rat squared_norm(const Point3& p);

/// Least positive h with h*p integral.
BigInt denominator_lcm(const Point3& p);
/// Primitive integer vector on the ray through p (p != 0).
Point3 primitive_direction(const Point3& p);
/// True when a = t*b for some t > 0.
bool same_ray(const Point3& a, const Point3& b);

std::string to_string(const Point3& p);
std::ostream& operator<<(std::ostream& os, const Point3& p);

/// A point of the integer lattice Z^3.
struct LatticePoint {
  std::int64_t x = 0, y = 0, z = 0;

  std::int64_t operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  std::int64_t& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  std::int64_t degree() const { return x + y + z; }
  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  bool nonnegative() const { return x >= 0 && y >= 0 && z >= 0; }

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator+(LatticePoint a, const LatticePoint& b) {
  a.x += b.x;
  a.y += b.y;
  a.z += b.z;
  return a;
}
inline LatticePoint operator-(LatticePoint a, const LatticePoint& b) {
  a.x -= b.x;
  a.y -= b.y;
  a.z -= b.z;
  return a;
}
inline LatticePoint operator*(std::int64_t s, LatticePoint p) {
  p.x *= s;
  p.y *= s;
  p.z *= s;
  return p;
}

Point3 to_point(const LatticePoint& p);
/// Throws BadParameter if p is not integral or does not fit in 64 bits.
LatticePoint to_lattice(const Point3& p);
std::string to_string(const LatticePoint& p);
std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(p.z) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace polysg
