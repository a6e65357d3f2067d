#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>

#include "errors.hpp"

namespace plinf {

// Exponent pair (m, n) of a monomial x^m y^n.
struct LatticePoint {
  std::int64_t m = 0;
  std::int64_t n = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// Integer vector: inward normals, fan rays, weights, directions.
struct IVec {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const IVec&, const IVec&) = default;
  IVec operator+(const IVec& o) const { return {x + o.x, y + o.y}; }
  IVec operator-(const IVec& o) const { return {x - o.x, y - o.y}; }
  IVec operator-() const { return {-x, -y}; }
  friend IVec operator*(std::int64_t k, const IVec& v) { return {k * v.x, k * v.y}; }
};

inline LatticePoint operator+(LatticePoint p, IVec d) { return {p.m + d.x, p.n + d.y}; }
inline IVec operator-(LatticePoint a, LatticePoint b) { return {a.m - b.m, a.n - b.n}; }

inline std::int64_t det(const IVec& a, const IVec& b) { return a.x * b.y - a.y * b.x; }
inline std::int64_t dot(const IVec& xi, const LatticePoint& p) { return xi.x * p.m + xi.y * p.n; }
inline std::int64_t dot(const IVec& a, const IVec& b) { return a.x * b.x + a.y * b.y; }

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline bool is_primitive(const IVec& v) { return gcd(v.x, v.y) == 1; }

inline IVec primitive(const IVec& v) {
  std::int64_t g = gcd(v.x, v.y);
  if (g == 0) throw DomainError("zero vector has no primitive direction");
  return {v.x / g, v.y / g};
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Returns (g, s, t) with a*s + b*t = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Strict order of nonzero vectors by angle measured counter-clockwise from (0,1).
// (0,1) is smallest, then (-1,0), (0,-1), (1,0), and the open first quadrant last.
inline bool angle_less(const IVec& a, const IVec& b) {
  auto rot = [](const IVec& v) { return IVec{v.y, -v.x}; };
  auto half = [](const IVec& w) { return (w.y < 0 || (w.y == 0 && w.x < 0)) ? 1 : 0; };
  IVec wa = rot(a), wb = rot(b);
  int ha = half(wa), hb = half(wb);
  if (ha != hb) return ha < hb;
  return det(wa, wb) > 0;
}

inline std::string to_string(const LatticePoint& p) {
  return "(" + std::to_string(p.m) + "," + std::to_string(p.n) + ")";
}
inline std::string to_string(const IVec& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}
inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const IVec& v) { return os << to_string(v); }

}  // namespace plinf
