#include "polysg/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "polysg/errors.hpp"

namespace polysg {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotAGap: return "NotAGap";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) throw Error(ErrorKind::ParseError, "not a number: '" + std::string(whole) + "'");
  return BigInt(std::string(s));
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");
    value = Rat(num, den);
    value.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw Error(ErrorKind::ParseError, "not a number: '" + std::string(text) + "'");
    BigInt ip = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt fp = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    value = Rat(ip * scale + fp, scale);
    value.canonicalize();
  } else {
    value = Rat(parse_integer(s, text));
  }
  return negative ? Rat(-value) : value;
}

std::string to_string(const Rat& r) { return r.get_str(); }

BigInt floor_rat(const Rat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_rat(const Rat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t()))
    throw Error(ErrorKind::BadParameter, "integer does not fit in 64 bits: " + v.get_str());
  return static_cast<std::int64_t>(v.get_si());
}

bool Point3::is_integral() const { return x.get_den() == 1 && y.get_den() == 1 && z.get_den() == 1; }

Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 operator-(const Point3& a) { return {-a.x, -a.y, -a.z}; }
Point3 operator*(const Rat& s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
bool operator==(const Point3& a, const Point3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
bool operator<(const Point3& a, const Point3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

Rat dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Rat det3(const Point3& a, const Point3& b, const Point3& c) { return dot(a, cross(b, c)); }

Rat squared_norm(const Point3& p) { return dot(p, p); }

BigInt denominator_lcm(const Point3& p) {
  return lcm(lcm(BigInt(p.x.get_den()), BigInt(p.y.get_den())), BigInt(p.z.get_den()));
}

Point3 primitive_direction(const Point3& p) {
  if (p.is_zero()) throw Error(ErrorKind::BadParameter, "zero vector has no direction");
  Point3 q = Rat(denominator_lcm(p)) * p;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), q.x.get_num_mpz_t(), q.y.get_num_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.z.get_num_mpz_t());
  Rat inv(BigInt(1), g);
  return inv * q;
}

bool same_ray(const Point3& a, const Point3& b) {
  if (!cross(a, b).is_zero()) return false;
  return sgn(dot(a, b)) > 0;
}

std::string to_string(const Point3& p) {
  return "(" + to_string(p.x) + "," + to_string(p.y) + "," + to_string(p.z) + ")";
}

std::ostream& operator<<(std::ostream& os, const Point3& p) { return os << to_string(p); }

Point3 to_point(const LatticePoint& p) { return {Rat(p.x), Rat(p.y), Rat(p.z)}; }

LatticePoint to_lattice(const Point3& p) {
  if (!p.is_integral()) throw Error(ErrorKind::BadParameter, "point is not integral: " + to_string(p));
  return {to_int64(p.x.get_num()), to_int64(p.y.get_num()), to_int64(p.z.get_num())};
}

std::string to_string(const LatticePoint& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")";
}

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) { return os << to_string(p); }

}  // namespace polysg
