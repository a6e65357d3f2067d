#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polytope.hpp"

namespace plinf {

struct Skeleton {
  std::vector<IVec> vectors;            // ordered by angle from (0,1)
  std::vector<bool> adjacent;           // adjacent[i]: vectors i, i+1 are normals of consecutive segments
  std::vector<std::size_t> segment_of;  // index into split_boundary(p).upper
};

inline Skeleton skeleton(const Polytope& p) {
  Skeleton sk;
  if (p.is_point()) return sk;
  auto upper = split_boundary(p).upper;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    sk.vectors.push_back(upper[i].normal);
    sk.segment_of.push_back(i);
  }
  for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
    const auto& a = upper[i];
    const auto& b = upper[i + 1];
    sk.adjacent.push_back(a.to == b.from || a.from == b.to);
  }
  return sk;
}

enum class Divisor { None, V, U, UV };

inline const char* to_string(Divisor d) {
  switch (d) {
    case Divisor::None: return "none";
    case Divisor::V: return "v=0";
    case Divisor::U: return "u=0";
    case Divisor::UV: return "uv=0";
  }
  return "?";
}

struct SimpleFan {
  std::vector<IVec> vectors;                       // xi_0 = (0,1), ..., xi_s = (1,0)
  std::vector<bool> skeleton_flags;                // per vector
  std::vector<std::optional<std::size_t>> segment_of;  // per vector, for skeleton members

  std::size_t s() const { return vectors.size() - 1; }
  friend bool operator==(const SimpleFan&, const SimpleFan&) = default;
};

namespace detail {

// Minimal unimodular chain strictly between v and w, assuming det(v,w) > 0.
// Consecutive vectors follow u_{i+1} = b_i u_i - u_{i-1}.
inline std::vector<IVec> hirzebruch_jung(IVec v, IVec w) {
  std::int64_t k = det(v, w);
  if (k <= 0) throw InternalError("hirzebruch_jung needs a convex cone");
  std::vector<IVec> chain;
  if (k == 1) return chain;
  auto [g, s, t] = ext_gcd(v.x, v.y);
  if (g != 1) throw DomainError("fan vector " + to_string(v) + " is not primitive");
  // det(v, u) = v.x u.y - v.y u.x = 1 for u = (-t, s).
  IVec u{-t, s};
  std::int64_t shift = ceil_div(-det(u, w), k);
  u = u + shift * v;
  IVec prev = v, cur = u;
  chain.push_back(cur);
  while (true) {
    std::int64_t dc = det(cur, w);
    if (dc == 0) break;
    std::int64_t b = ceil_div(det(prev, w), dc);
    IVec next = b * cur - prev;
    prev = cur;
    cur = next;
    chain.push_back(cur);
    if (chain.size() > 100000) throw InternalError("fan completion diverged");
  }
  if (chain.back() != w) throw InternalError("fan completion missed its target");
  chain.pop_back();
  return chain;
}

// Completion of a gap v -> w of angle >= pi: split at the lattice vector giving the
// shortest total chain (ties: smaller norm, then smaller angle).
inline std::vector<IVec> reflex_completion(IVec v, IVec w) {
  std::int64_t box = 2 * std::max({std::abs(v.x), std::abs(v.y), std::abs(w.x), std::abs(w.y)}) + 2;
  std::optional<std::vector<IVec>> best;
  IVec best_u{};
  for (std::int64_t x = -box; x <= box; ++x)
    for (std::int64_t y = -box; y <= box; ++y) {
      IVec u{x, y};
      if (gcd(x, y) != 1 || det(v, u) <= 0 || det(u, w) <= 0) continue;
      auto left = hirzebruch_jung(v, u);
      auto right = hirzebruch_jung(u, w);
      std::vector<IVec> chain = left;
      chain.push_back(u);
      chain.insert(chain.end(), right.begin(), right.end());
      bool better = !best || chain.size() < best->size() ||
                    (chain.size() == best->size() &&
                     (dot(u, u) < dot(best_u, best_u) || (dot(u, u) == dot(best_u, best_u) && angle_less(u, best_u))));
      if (better) {
        best = chain;
        best_u = u;
      }
    }
  if (!best) throw InternalError("no split vector for a reflex gap");
  return *best;
}

inline std::vector<IVec> gap_completion(IVec v, IVec w) {
  return det(v, w) > 0 ? hirzebruch_jung(v, w) : reflex_completion(v, w);
}

}  // namespace detail

// Completes an angle-ordered skeleton to a simple fan from (0,1) to (1,0).
// adjacency[i] says skeleton vectors i and i+1 are normals of consecutive upper segments.
inline SimpleFan complete_fan(const std::vector<IVec>& skel, const std::vector<bool>& adjacency,
                              const std::vector<std::size_t>& segment_of = {}) {
  const IVec first{0, 1}, last{1, 0};
  for (std::size_t i = 0; i < skel.size(); ++i) {
    const IVec& v = skel[i];
    if (!is_primitive(v)) throw DomainError("skeleton vector " + to_string(v) + " is not primitive");
    if (v.x >= 0 && v.y >= 0)
      throw DomainError("skeleton vector " + to_string(v) + " lies in the closed first quadrant");
    if (i > 0 && !angle_less(skel[i - 1], v)) throw DomainError("skeleton is not strictly ordered by angle");
  }
  if (!adjacency.empty() && adjacency.size() + 1 != skel.size())
    throw DomainError("adjacency list must have one entry per consecutive skeleton pair");

  struct Node {
    IVec v;
    std::optional<std::size_t> skel_index;
  };
  std::vector<Node> anchors{{first, std::nullopt}};
  for (std::size_t i = 0; i < skel.size(); ++i) anchors.push_back({skel[i], i});
  anchors.push_back({last, std::nullopt});

  std::vector<Node> chain{anchors.front()};
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    for (const auto& u : detail::gap_completion(anchors[i].v, anchors[i + 1].v)) chain.push_back({u, std::nullopt});
    chain.push_back(anchors[i + 1]);
  }

  // Consecutive normals of consecutive segments get separated by their sum.
  std::vector<Node> fan{chain.front()};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Node& a = fan.back();
    const Node& b = chain[i];
    if (a.skel_index && b.skel_index && *b.skel_index == *a.skel_index + 1 &&
        (adjacency.empty() || adjacency[*a.skel_index]))
      fan.push_back({a.v + b.v, std::nullopt});
    fan.push_back(b);
  }

  SimpleFan out;
  for (const auto& n : fan) {
    out.vectors.push_back(n.v);
    out.skeleton_flags.push_back(n.skel_index.has_value());
    if (n.skel_index && *n.skel_index < segment_of.size())
      out.segment_of.push_back(segment_of[*n.skel_index]);
    else
      out.segment_of.push_back(std::nullopt);
  }
  for (std::size_t j = 1; j < out.vectors.size(); ++j)
    if (det(out.vectors[j - 1], out.vectors[j]) != 1) throw InternalError("fan is not unimodular");
  return out;
}

inline SimpleFan fan_for_polytope(const Polytope& p) {
  Skeleton sk = skeleton(p);
  return complete_fan(sk.vectors, sk.adjacent, sk.segment_of);
}

// Monomial map (u,v) -> (sx u^e[0][0] v^e[0][1], sy u^e[1][0] v^e[1][1]).
struct MonomialMap {
  std::int64_t e[2][2] = {{1, 0}, {0, 1}};
  int sx = 1, sy = 1;

  std::pair<Rational, Rational> operator()(const Rational& u, const Rational& v) const {
    return {Rational(sx) * pow(u, e[0][0]) * pow(v, e[0][1]), Rational(sy) * pow(u, e[1][0]) * pow(v, e[1][1])};
  }
  std::pair<double, double> operator()(double u, double v) const {
    return {sx * std::pow(u, double(e[0][0])) * std::pow(v, double(e[0][1])),
            sy * std::pow(u, double(e[1][0])) * std::pow(v, double(e[1][1]))};
  }
  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;
};

struct ChartMap {
  std::size_t j = 0;
  IVec first, second;   // B_j = (xi_{j-1}, xi_j)
  MonomialMap forward;  // (u,v) -> (x,y)
  MonomialMap inverse;  // (x,y) -> (u,v)
  Divisor divisor = Divisor::None;
};

// Chart j >= 1 of the fan: x = u^a_{j-1} v^a_j, y = u^b_{j-1} v^b_j,
// inverse u = x^b_j y^-a_j, v = x^-b_{j-1} y^a_{j-1}. Chart 0 is the finite plane.
inline ChartMap chart_map(const SimpleFan& fan, std::size_t j) {
  ChartMap c;
  c.j = j;
  if (j == 0) {
    c.first = {1, 0};
    c.second = {0, 1};
    return c;
  }
  if (j > fan.s()) throw DomainError("chart index out of range");
  IVec a = fan.vectors[j - 1], b = fan.vectors[j];
  c.first = a;
  c.second = b;
  c.forward.e[0][0] = a.x;
  c.forward.e[0][1] = b.x;
  c.forward.e[1][0] = a.y;
  c.forward.e[1][1] = b.y;
  c.inverse.e[0][0] = b.y;
  c.inverse.e[0][1] = -b.x;
  c.inverse.e[1][0] = -a.y;
  c.inverse.e[1][1] = a.x;
  if (j == 1)
    c.divisor = Divisor::V;
  else if (j == fan.s())
    c.divisor = Divisor::U;
  else
    c.divisor = Divisor::UV;
  return c;
}

inline std::vector<ChartMap> chart_maps(const SimpleFan& fan) {
  std::vector<ChartMap> out;
  for (std::size_t j = 0; j <= fan.s(); ++j) out.push_back(chart_map(fan, j));
  return out;
}

}  // namespace plinf
