#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "field.hpp"

namespace plinf {

enum class BoundaryTag { Lower, Upper, Axis };

inline const char* to_string(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::Lower: return "lower";
    case BoundaryTag::Upper: return "upper";
    case BoundaryTag::Axis: return "axis";
  }
  return "?";
}

// Boundary edge from -> to (counter-clockwise). normal is the primitive inward
// normal and level the constant value of <normal, p> along the edge.
struct Segment {
  LatticePoint from, to;
  IVec normal;
  std::int64_t level = 0;
  BoundaryTag tag = BoundaryTag::Lower;

  IVec direction() const { return to - from; }
  bool contains(LatticePoint p) const {
    if (dot(normal, p) != level) return false;
    auto lo_m = std::min(from.m, to.m), hi_m = std::max(from.m, to.m);
    auto lo_n = std::min(from.n, to.n), hi_n = std::max(from.n, to.n);
    return p.m >= lo_m && p.m <= hi_m && p.n >= lo_n && p.n <= hi_n;
  }
  bool negative_slope() const {
    IVec d = direction();
    return d.x != 0 && d.y != 0 && ((d.x > 0) != (d.y > 0));
  }
  friend bool operator==(const Segment&, const Segment&) = default;
};

inline BoundaryTag tag_for_normal(IVec n) {
  if (n.x > 0 && n.y > 0) return BoundaryTag::Lower;
  if ((n.x == 0 && n.y > 0) || (n.y == 0 && n.x > 0)) return BoundaryTag::Axis;
  return BoundaryTag::Upper;
}

struct Polytope {
  std::vector<LatticePoint> support;  // sorted lexicographically
  std::vector<LatticePoint> hull;     // counter-clockwise vertices starting at p0
  std::vector<Segment> segments;      // segments[l] joins hull[l] and the next vertex

  bool is_point() const { return hull.size() == 1; }
  bool is_segment() const { return hull.size() == 2; }
  friend bool operator==(const Polytope&, const Polytope&) = default;
};

namespace detail {

inline std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return det(a - o, b - o);
}

inline Segment make_segment(LatticePoint from, LatticePoint to) {
  IVec d = to - from;
  IVec n = primitive(IVec{-d.y, d.x});
  return Segment{from, to, n, dot(n, from), tag_for_normal(n)};
}

}  // namespace detail

inline Polytope build_polytope(std::vector<LatticePoint> pts) {
  if (pts.empty()) throw DomainError("empty support");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Polytope P;
  P.support = pts;

  // Andrew's monotone chain, collinear points dropped.
  std::vector<LatticePoint> h;
  if (pts.size() == 1) {
    h = pts;
  } else {
    std::vector<LatticePoint> lower, upper;
    for (const auto& p : pts) {
      while (lower.size() >= 2 && detail::cross(lower[lower.size() - 2], lower.back(), p) <= 0) lower.pop_back();
      lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (upper.size() >= 2 && detail::cross(upper[upper.size() - 2], upper.back(), *it) <= 0) upper.pop_back();
      upper.push_back(*it);
    }
    h.assign(lower.begin(), lower.end() - 1);
    h.insert(h.end(), upper.begin(), upper.end() - 1);
  }
  P.hull = h;

  if (h.size() == 2) {
    Segment s0 = detail::make_segment(h[0], h[1]);
    Segment s1 = detail::make_segment(h[1], h[0]);
    // The two orientations of a segment polytope: the one facing the positive
    // quadrant more is the lower one.
    auto key = [](const Segment& s) { return std::make_pair(s.normal.x + s.normal.y, s.normal.x); };
    bool first_lower = key(s0) > key(s1);
    s0.tag = first_lower ? BoundaryTag::Lower : BoundaryTag::Upper;
    s1.tag = first_lower ? BoundaryTag::Upper : BoundaryTag::Lower;
    P.segments = {s0, s1};
  } else if (h.size() >= 3) {
    for (std::size_t l = 0; l < h.size(); ++l) P.segments.push_back(detail::make_segment(h[l], h[(l + 1) % h.size()]));
  }
  return P;
}

inline Polytope build_polytope(const PlanarField& f) {
  if (f.empty()) throw DomainError("empty support");
  return build_polytope(f.support());
}

struct BoundarySplit {
  std::vector<Segment> lower, upper;  // both ordered by normal angle from (0,1)
  bool degenerate_point = false;
};

inline BoundarySplit split_boundary(const Polytope& p) {
  BoundarySplit out;
  if (p.support.empty()) throw DomainError("empty support");
  out.degenerate_point = p.is_point();
  for (const auto& s : p.segments) {
    if (s.tag == BoundaryTag::Lower) out.lower.push_back(s);
    if (s.tag == BoundaryTag::Upper) out.upper.push_back(s);
  }
  auto by_angle = [](const Segment& a, const Segment& b) { return angle_less(a.normal, b.normal); };
  std::sort(out.lower.begin(), out.lower.end(), by_angle);
  std::sort(out.upper.begin(), out.upper.end(), by_angle);
  return out;
}

struct MainFeatures {
  LatticePoint p0, ph;
  std::optional<Segment> gamma1, gammah;
};

inline MainFeatures main_features(const Polytope& p) {
  if (p.support.empty()) throw DomainError("empty support");
  MainFeatures mf;
  mf.p0 = p.support.front();
  mf.ph = p.support.front();
  for (const auto& q : p.support)
    if (q.n > mf.ph.n || (q.n == mf.ph.n && q.m > mf.ph.m)) mf.ph = q;
  if (p.is_point()) return mf;
  mf.gamma1 = p.segments.front();
  for (const auto& s : p.segments)
    if (s.to == mf.ph) mf.gammah = s;
  return mf;
}

inline bool is_favorable(const Polytope& p) {
  for (const auto& s : p.segments)
    if (s.tag == BoundaryTag::Upper && s.negative_slope()) return true;
  return false;
}

struct PlcWeight {
  WeightVector weight;
  std::int64_t delta = 0;
};

inline PlcWeight plc_weight(const Polytope& p) {
  auto mf = main_features(p);
  if (!mf.gammah || !mf.gammah->negative_slope() || mf.gammah->tag != BoundaryTag::Upper)
    throw DomainError(
        "polytope is not favorable: shear it first (make_favorable) or pass an explicit weight such as (1,1)");
  IVec n = mf.gammah->normal;
  return {WeightVector(-n.x, -n.y), -mf.gammah->level};
}

struct UpperPrincipalPart {
  PlanarField field;
  std::vector<std::pair<Segment, PlanarField>> per_segment;
};

inline UpperPrincipalPart upper_principal_part(const PlanarField& f) {
  Polytope p = build_polytope(f);
  UpperPrincipalPart u;
  if (p.is_point()) {
    u.field = f;
    return u;
  }
  auto split = split_boundary(p);
  if (split.upper.empty()) {
    // The upper boundary is one vertex, the maximizer of every positive weight.
    LatticePoint top = p.hull.front();
    for (auto q : p.hull)
      if (q.m + q.n > top.m + top.n || (q.m + q.n == top.m + top.n && q.m > top.m)) top = q;
    u.field = f.restrict_to([&](LatticePoint q) { return q == top; });
    return u;
  }
  for (const auto& s : split.upper)
    u.per_segment.emplace_back(s, f.restrict_to([&](LatticePoint q) { return s.contains(q); }));
  u.field = f.restrict_to([&](LatticePoint q) {
    return std::any_of(split.upper.begin(), split.upper.end(), [&](const Segment& s) { return s.contains(q); });
  });
  return u;
}

enum class Direction { Xpos, Xneg, Ypos, Yneg };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::Xpos: return "x+";
    case Direction::Xneg: return "x-";
    case Direction::Ypos: return "y+";
    case Direction::Yneg: return "y-";
  }
  return "?";
}

// Exponent map of the directional weighted chart: the chart-field term produced
// by the monomial at p. delta is the top level of the decomposition.
inline LatticePoint plc_image(LatticePoint p, WeightVector w, std::int64_t delta, Direction dir) {
  std::int64_t d = w.level(p);
  bool x_dir = dir == Direction::Xpos || dir == Direction::Xneg;
  return x_dir ? LatticePoint{p.n, delta - d} : LatticePoint{p.m, delta - d};
}

inline Polytope polytope_after_plc(const Polytope& p, WeightVector w, Direction dir) {
  std::int64_t delta = w.level(p.support.front());
  for (const auto& q : p.support) delta = std::max(delta, w.level(q));
  std::vector<LatticePoint> img;
  for (const auto& q : p.support) img.push_back(plc_image(q, w, delta, dir));
  return build_polytope(std::move(img));
}

inline bool has_good_main_vertex(const Polytope& p) {
  auto mf = main_features(p);
  return is_favorable(p) && mf.gammah && mf.gammah->tag == BoundaryTag::Upper && mf.gammah->negative_slope() &&
         (mf.ph.m == -1 || mf.ph.m == 0) && mf.ph.n >= 0;
}

struct FavorableResult {
  PlanarField field;
  Rational lambda;
};

// Shears by lambda = 1, -1, 2, -2, ... until the polytope is favorable with its
// upper main vertex on m = -1 or m = 0.
inline FavorableResult make_favorable(const PlanarField& f, int max_abs_lambda = 64) {
  if (f.empty()) throw DomainError("empty support");
  if (has_good_main_vertex(build_polytope(f))) return {f, 0};
  if (shear(f, 1) == f) throw DomainError("the field is invariant under every shear and its polytope is not favorable");
  for (int k = 1; k <= max_abs_lambda; ++k)
    for (int s : {1, -1}) {
      Rational lambda = k * s;
      PlanarField g = shear(f, lambda);
      if (!g.empty() && has_good_main_vertex(build_polytope(g))) return {g, lambda};
    }
  throw DomainError("no shear with |lambda| <= " + std::to_string(max_abs_lambda) + " makes the polytope favorable");
}

}  // namespace plinf
