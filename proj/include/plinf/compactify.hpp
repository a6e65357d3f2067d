#pragma once

#include <map>
#include <string>
#include <vector>

#include "fan.hpp"

namespace plinf {

enum class ChartKind { Directional, Fan };

// A compactified field in one chart, stored in the logarithmic basis of (u,v):
//   sum u^i v^j (A u d/du + B v d/dv).
// It equals u^norm_u v^norm_v times the push-forward of the original field by
// the inverse of `forward`.
struct ChartField {
  ChartKind kind = ChartKind::Fan;
  Direction direction = Direction::Xpos;  // directional charts
  WeightVector weight;                    // directional charts
  std::size_t j = 0;                      // fan charts
  IVec first, second;                     // fan charts: B_j
  MonomialMap forward;
  Divisor divisor = Divisor::V;
  std::int64_t norm_u = 0, norm_v = 0;
  PlanarField field;

  Poly2 u_component() const { return field.x_component(); }
  Poly2 v_component() const { return field.y_component(); }

  std::string label() const {
    if (kind == ChartKind::Directional) return to_string(direction);
    return "B" + std::to_string(j);
  }
};

inline std::string pretty(const ChartField& cf) {
  return "(" + cf.u_component().str("u", "v") + ") d/du + (" + cf.v_component().str("u", "v") + ") d/dv";
}

namespace detail {

inline PlanarField chart_terms(const std::map<LatticePoint, CoeffPair>& t, const std::string& where) {
  try {
    return PlanarField(PlanarField::TermMap(t.begin(), t.end()));
  } catch (const DomainError& e) {
    throw InternalError(where + ": " + e.what());
  }
}

inline void accumulate(std::map<LatticePoint, CoeffPair>& t, LatticePoint e, const Rational& A, const Rational& B) {
  auto& c = t[e];
  c.a += A;
  c.b += B;
}

}  // namespace detail

// Weighted directional chart, normalized by v^(max level).
//   x+: x =  v^-a, y = u v^-b     x-: x = -v^-a, y = u v^-b
//   y+: x = u v^-a, y =  v^-b     y-: x = u v^-a, y = -v^-b
inline ChartField directional_plc(const PlanarField& f, WeightVector w, Direction dir) {
  if (f.empty()) throw DomainError("empty support");
  const std::int64_t top = max_level(f, w);
  const Rational al(w.alpha), be(w.beta);
  const bool x_dir = dir == Direction::Xpos || dir == Direction::Xneg;
  std::map<LatticePoint, CoeffPair> t;
  for (const auto& [p, c] : f.terms()) {
    Rational a = c.a, b = c.b;
    std::int64_t parity = x_dir ? p.m : p.n;
    bool flip = (dir == Direction::Xneg || dir == Direction::Yneg) && (parity % 2 != 0);
    if (flip) {
      a = -a;
      b = -b;
    }
    LatticePoint e = plc_image(p, w, top, dir);
    if (x_dir)
      detail::accumulate(t, e, b - be / al * a, -a / al);
    else
      detail::accumulate(t, e, a - al / be * b, -b / be);
  }
  ChartField cf;
  cf.kind = ChartKind::Directional;
  cf.direction = dir;
  cf.weight = w;
  cf.divisor = Divisor::V;
  cf.norm_v = top;
  if (x_dir) {
    cf.forward.e[0][0] = 0;
    cf.forward.e[0][1] = -w.alpha;
    cf.forward.e[1][0] = 1;
    cf.forward.e[1][1] = -w.beta;
    cf.forward.sx = dir == Direction::Xneg ? -1 : 1;
  } else {
    cf.forward.e[0][0] = 1;
    cf.forward.e[0][1] = -w.alpha;
    cf.forward.e[1][0] = 0;
    cf.forward.e[1][1] = -w.beta;
    cf.forward.sy = dir == Direction::Yneg ? -1 : 1;
  }
  cf.field = detail::chart_terms(t, "directional chart");
  return cf;
}

struct LevelData {
  std::vector<std::int64_t> M;                  // per fan vector; M_0 = M_s = 0
  std::vector<std::vector<LatticePoint>> gamma;  // argmin sets (empty for the two ends)
  friend bool operator==(const LevelData&, const LevelData&) = default;
};

inline LevelData level_data(const Polytope& p, const SimpleFan& fan) {
  LevelData L;
  for (std::size_t j = 0; j < fan.vectors.size(); ++j) {
    if (j == 0 || j == fan.s()) {
      L.M.push_back(0);
      L.gamma.emplace_back();
      continue;
    }
    const IVec& xi = fan.vectors[j];
    std::int64_t m = dot(xi, p.support.front());
    for (const auto& q : p.support) m = std::min(m, dot(xi, q));
    std::vector<LatticePoint> g;
    for (const auto& q : p.support)
      if (dot(xi, q) == m) g.push_back(q);
    L.M.push_back(m);
    L.gamma.push_back(std::move(g));
  }
  return L;
}

inline ChartField fan_chart_field(const PlanarField& f, const SimpleFan& fan, const LevelData& L, std::size_t j) {
  if (j < 1 || j > fan.s()) throw DomainError("fan chart index must be in 1..s");
  const IVec a = fan.vectors[j - 1], b = fan.vectors[j];
  std::map<LatticePoint, CoeffPair> t;
  for (const auto& [p, c] : f.terms()) {
    LatticePoint e{dot(a, p) - L.M[j - 1], dot(b, p) - L.M[j]};
    detail::accumulate(t, e, Rational(b.y) * c.a - Rational(b.x) * c.b, Rational(-a.y) * c.a + Rational(a.x) * c.b);
  }
  ChartMap cm = chart_map(fan, j);
  ChartField cf;
  cf.kind = ChartKind::Fan;
  cf.j = j;
  cf.first = a;
  cf.second = b;
  cf.forward = cm.forward;
  cf.divisor = cm.divisor;
  cf.norm_u = -L.M[j - 1];
  cf.norm_v = -L.M[j];
  cf.field = detail::chart_terms(t, "fan chart " + std::to_string(j));
  if (cf.u_component().has_negative_exponent() || cf.v_component().has_negative_exponent())
    throw InternalError("fan chart " + std::to_string(j) + " has a negative exponent after normalization");
  return cf;
}

inline ChartField fan_chart_field(const PlanarField& f, const SimpleFan& fan, std::size_t j) {
  return fan_chart_field(f, fan, level_data(build_polytope(f), fan), j);
}

// Exponents of r, Cs(theta), Sn(theta).
struct TrigMonomial {
  std::int64_t r = 0, cs = 0, sn = 0;
  friend auto operator<=>(const TrigMonomial&, const TrigMonomial&) = default;
};

using TrigPoly = std::map<TrigMonomial, Rational>;

inline double eval_trig_poly(const TrigPoly& p, double cs, double sn, double r) {
  double acc = 0;
  for (const auto& [e, c] : p)
    acc += to_double(c) * std::pow(r, double(e.r)) * std::pow(cs, double(e.cs)) * std::pow(sn, double(e.sn));
  return acc;
}

// Part of p with the given power of r, as a function of (Cs, Sn).
inline TrigPoly r_slice(const TrigPoly& p, std::int64_t k) {
  TrigPoly out;
  for (const auto& [e, c] : p)
    if (e.r == k) out[{0, e.cs, e.sn}] += c;
  return out;
}

// Global weighted polar blow-up x = Cs(theta)/r^alpha, y = Sn(theta)/r^beta,
// multiplied by r^(max level).
struct PolarField {
  WeightVector weight;
  std::int64_t delta = 0;  // max level + 1
  TrigPoly theta_dot, r_dot;

  double eval_theta_dot(double cs, double sn, double r) const { return eval_trig_poly(theta_dot, cs, sn, r); }
  double eval_r_dot(double cs, double sn, double r) const { return eval_trig_poly(r_dot, cs, sn, r); }
};

inline PolarField polar_field(const PlanarField& f, WeightVector w) {
  if (f.empty()) throw DomainError("empty support");
  PolarField pf;
  pf.weight = w;
  pf.delta = max_level(f, w) + 1;
  const Rational al(w.alpha), be(w.beta);
  auto add = [](TrigPoly& tp, TrigMonomial e, const Rational& c) {
    if (c == 0) return;
    auto& v = tp[e];
    v += c;
    if (v == 0) tp.erase(e);
  };
  for (const auto& [p, c] : f.terms()) {
    std::int64_t d = w.level(p);
    add(pf.theta_dot, {pf.delta - d - 1, p.m + 1, p.n + 1}, c.b - be / al * c.a);
    add(pf.r_dot, {pf.delta - d, p.m + 2 * w.beta, p.n}, -c.a / al);
    add(pf.r_dot, {pf.delta - d, p.m, p.n + 2 * w.alpha}, -c.b / al);
  }
  return pf;
}

}  // namespace plinf
