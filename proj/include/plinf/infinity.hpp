#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compactify.hpp"
#include "trig.hpp"

namespace plinf {

enum class SingularityClass { Hyperbolic, SemiHyperbolic, Degenerate, CurveOfSingularities };

inline const char* to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Hyperbolic: return "hyperbolic";
    case SingularityClass::SemiHyperbolic: return "semi-hyperbolic";
    case SingularityClass::Degenerate: return "degenerate";
    case SingularityClass::CurveOfSingularities: return "curve";
  }
  return "?";
}

// Which coordinate line of the chart a divisor point lies on.
enum class Axis {
  V,  // the line {v = 0}; the position is the u coordinate
  U,  // the line {u = 0}; the position is the v coordinate
};

inline const char* to_string(Axis a) { return a == Axis::V ? "v=0" : "u=0"; }

struct Eigenvalue {
  int sign = 0;
  double approx = 0;
  std::optional<Rational> exact;
};

struct SingularityRecord {
  std::string chart;
  Axis axis = Axis::V;
  bool curve = false;                // the whole axis is singular
  std::optional<RealRoot> position;  // absent for curves
  bool at_origin = false;
  bool corner = false;  // origin of a chart whose divisor is {uv = 0}
  // Diagonal of the Jacobian along the axis, as polynomials in the axis coordinate.
  Poly1 eig_u_poly, eig_v_poly;
  Eigenvalue eig_u, eig_v;
  SingularityClass cls = SingularityClass::Degenerate;
  bool classified = false;
  bool characteristic_orbit = false;

  double coordinate() const { return position ? position->approx() : 0.0; }
  const Eigenvalue& along() const { return axis == Axis::V ? eig_u : eig_v; }
  const Eigenvalue& transverse() const { return axis == Axis::V ? eig_v : eig_u; }
};

namespace detail {

inline Poly1 poly_from(const std::map<std::int64_t, Rational>& m) {
  std::vector<Rational> c;
  for (const auto& [k, v] : m) {
    if (k < 0) throw InternalError("negative power in a divisor restriction");
    if (c.size() <= static_cast<std::size_t>(k)) c.resize(k + 1);
    c[k] += v;
  }
  return Poly1(std::move(c));
}

// Restriction data of a chart field to one coordinate axis of (u,v).
struct AxisData {
  Poly1 restriction;  // along-component on the axis
  Poly1 eig_u, eig_v;
};

inline AxisData axis_data(const ChartField& cf, Axis axis) {
  std::map<std::int64_t, Rational> r, du, dv;
  for (const auto& [e, c] : cf.field.terms()) {
    if (axis == Axis::V) {
      if (c.b != 0 && e.n == -1) throw InternalError(cf.label() + ": divisor {v=0} is not invariant");
      if (e.n != 0) continue;
      r[e.m + 1] += c.a;
      du[e.m] += c.a * Rational(e.m + 1);
      dv[e.m] += c.b;
    } else {
      if (c.a != 0 && e.m == -1) throw InternalError(cf.label() + ": divisor {u=0} is not invariant");
      if (e.m != 0) continue;
      r[e.n + 1] += c.b;
      dv[e.n] += c.b * Rational(e.n + 1);
      du[e.n] += c.a;
    }
  }
  // Terms with exponent -1 only carry a zero coefficient into the derivative maps.
  auto clean = [](std::map<std::int64_t, Rational> m) {
    for (auto it = m.begin(); it != m.end();) it = (it->second == 0) ? m.erase(it) : std::next(it);
    return m;
  };
  return {poly_from(clean(r)), poly_from(clean(du)), poly_from(clean(dv))};
}

inline Eigenvalue eigenvalue_at(const Poly1& p, const std::optional<RealRoot>& where) {
  Eigenvalue ev;
  if (!where) {
    ev.exact = p(0);
    ev.sign = sign(*ev.exact);
    ev.approx = to_double(*ev.exact);
    return ev;
  }
  if (where->exact) {
    ev.exact = p(*where->exact);
    ev.sign = sign(*ev.exact);
    ev.approx = to_double(*ev.exact);
    return ev;
  }
  ev.sign = sign_at(p, *where);
  ev.approx = ev.sign == 0 ? 0.0 : approx_value(p, *where);
  if (ev.sign == 0) ev.exact = Rational(0);
  return ev;
}

}  // namespace detail

// Singular points of a directional or fan chart field on its divisor (unclassified).
inline std::vector<SingularityRecord> divisor_singularities(const ChartField& cf) {
  std::vector<SingularityRecord> out;
  const bool on_v = cf.divisor == Divisor::V || cf.divisor == Divisor::UV;
  const bool on_u = cf.divisor == Divisor::U || cf.divisor == Divisor::UV;
  if (cf.divisor == Divisor::None) throw DomainError("chart " + cf.label() + " has no divisor");
  auto scan = [&](Axis axis, bool skip_origin) {
    auto ad = detail::axis_data(cf, axis);
    SingularityRecord base;
    base.chart = cf.label();
    base.axis = axis;
    base.eig_u_poly = ad.eig_u;
    base.eig_v_poly = ad.eig_v;
    if (ad.restriction.is_zero()) {
      base.curve = true;
      out.push_back(base);
      return;
    }
    for (auto& root : real_roots(ad.restriction)) {
      bool zero = root.exact && *root.exact == 0;
      if (zero && skip_origin) continue;
      SingularityRecord rec = base;
      rec.position = root;
      rec.at_origin = zero;
      rec.corner = zero && cf.divisor == Divisor::UV;
      out.push_back(std::move(rec));
    }
  };
  if (on_v) scan(Axis::V, false);
  if (on_u) scan(Axis::U, on_v);
  return out;
}

inline SingularityRecord classify(const ChartField& cf, SingularityRecord rec) {
  (void)cf;
  if (rec.curve) {
    rec.cls = SingularityClass::CurveOfSingularities;
    const Poly1& tr = rec.axis == Axis::V ? rec.eig_v_poly : rec.eig_u_poly;
    rec.characteristic_orbit = !tr.is_zero();
    rec.classified = true;
    return rec;
  }
  rec.eig_u = detail::eigenvalue_at(rec.eig_u_poly, rec.position);
  rec.eig_v = detail::eigenvalue_at(rec.eig_v_poly, rec.position);
  int zeros = (rec.eig_u.sign == 0) + (rec.eig_v.sign == 0);
  rec.cls = zeros == 0 ? SingularityClass::Hyperbolic
                       : (zeros == 1 ? SingularityClass::SemiHyperbolic : SingularityClass::Degenerate);
  if (rec.corner) {
    // Both eigendirections lie in the divisor; only a node sends orbits into the open disk.
    rec.characteristic_orbit = zeros == 0 && rec.eig_u.sign == rec.eig_v.sign;
  } else {
    rec.characteristic_orbit = zeros == 0 || (zeros == 1 && rec.transverse().sign != 0);
  }
  rec.classified = true;
  return rec;
}

inline std::vector<SingularityRecord> analyse_chart(const ChartField& cf) {
  std::vector<SingularityRecord> out;
  for (auto& r : divisor_singularities(cf)) out.push_back(classify(cf, std::move(r)));
  return out;
}

struct NondegeneracyWitness {
  Segment segment;
  IVec direction;  // t = x^direction.x * y^direction.y
  RealRoot t;
  int sign_x = 1, sign_y = 1;
  double x = 0, y = 0;  // a point of (R*)^2 where the segment restriction vanishes
};

struct NondegeneracyResult {
  bool nondegenerate = true;
  std::vector<NondegeneracyWitness> witnesses;
};

// The restriction of X to a segment with primitive direction d is
//   x^m0 y^n0 sum_k t^k (a_k x d/dx + b_k y d/dy),  t = x^d.x y^d.y,
// which vanishes somewhere in (R*)^2 iff p(t) = sum a_k t^k and q(t) = sum b_k t^k
// share a nonzero real root (every nonzero t is attained because d is primitive).
inline NondegeneracyResult check_nondegenerate(const UpperPrincipalPart& upp) {
  NondegeneracyResult res;
  for (const auto& [seg, sub] : upp.per_segment) {
    if (sub.empty()) continue;
    IVec d = primitive(seg.direction());
    if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -d;
    std::int64_t kmin = 0;
    bool first = true;
    auto step = [&](LatticePoint p) { return dot(p - seg.from, d) / dot(d, d); };
    for (const auto& [p, c] : sub.terms()) {
      kmin = first ? step(p) : std::min(kmin, step(p));
      first = false;
    }
    std::map<std::int64_t, Rational> pa, qb;
    for (const auto& [p, c] : sub.terms()) {
      pa[step(p) - kmin] += c.a;
      qb[step(p) - kmin] += c.b;
    }
    Poly1 g = gcd(detail::poly_from(pa), detail::poly_from(qb));
    Poly1 nz = g.strip_zero_roots();
    for (auto& root : real_roots(nz)) {
      NondegeneracyWitness w;
      w.segment = seg;
      w.direction = d;
      w.t = root;
      double t = root.approx();
      // Pick (x, y) with x^d.x y^d.y = t.
      if (d.x == 0) {
        w.x = 1;
        w.y = t;
      } else if (t > 0) {
        w.x = std::pow(t, 1.0 / double(d.x));
        w.y = 1;
      } else if (d.x % 2 != 0) {
        w.x = -std::pow(-t, 1.0 / double(d.x));
        w.y = 1;
      } else {
        w.x = std::pow(-t, 1.0 / double(d.x));
        w.y = -1;
      }
      w.sign_x = w.x < 0 ? -1 : 1;
      w.sign_y = w.y < 0 ? -1 : 1;
      res.witnesses.push_back(std::move(w));
      res.nondegenerate = false;
    }
  }
  return res;
}

// True unless the components of X_Delta^U share a factor whose real zero set is a
// curve. Monomial factors x^i y^j are divided out first: the charts at infinity are
// blind to them.
inline bool check_no_singularity_curve(const UpperPrincipalPart& upp) {
  if (upp.field.empty()) return true;
  BiPoly G = gcd(BiPoly::from(upp.field.x_component()), BiPoly::from(upp.field.y_component()));
  Poly2 g;
  for (std::size_t i = 0; i < G.coeffs().size(); ++i)
    for (std::size_t k = 0; k < G.coeffs()[i].coeffs().size(); ++k)
      g.add({std::int64_t(i), std::int64_t(k)}, G.coeffs()[i].coeffs()[k]);
  std::int64_t mi = std::numeric_limits<std::int64_t>::max(), mk = mi;
  for (const auto& [e, c] : g.terms()) {
    mi = std::min(mi, e.m);
    mk = std::min(mk, e.n);
  }
  Poly2 h;
  for (const auto& [e, c] : g.terms()) h.add({e.m - mi, e.n - mk}, c);
  return !has_real_curve(BiPoly::from(h));
}

struct Hypotheses {
  bool non_degenerate_upper_part = false;
  bool no_curve_of_singularities = false;
  bool has_characteristic_orbit = false;
  bool all() const { return non_degenerate_upper_part && no_curve_of_singularities && has_characteristic_orbit; }
};

struct ChartInventory {
  std::string chart;
  std::vector<SingularityRecord> records;
};

struct MatchEntry {
  std::string chart;
  std::optional<std::size_t> index_x, index_principal;
  bool same_class = false;
};

enum class Verdict { Equivalent, HypothesesFail };

struct EquivalenceReport {
  PlanarField field;  // after the optional shear
  Rational lambda = 0;
  Polytope polytope;
  SimpleFan fan;
  LevelData levels;
  PlanarField principal;
  Hypotheses hypotheses;
  NondegeneracyResult nondegeneracy;
  std::vector<ChartInventory> inventory_x, inventory_principal;
  std::vector<MatchEntry> match_table;
  Verdict verdict = Verdict::HypothesesFail;
  std::vector<std::string> reasons;  // failed hypotheses, in checking order
};

inline bool same_point(const SingularityRecord& a, const SingularityRecord& b) {
  if (a.axis != b.axis || a.curve != b.curve) return false;
  if (a.curve) return true;
  return same_root(*a.position, *b.position);
}

inline bool same_classification(const SingularityRecord& a, const SingularityRecord& b) {
  return a.cls == b.cls && a.eig_u.sign == b.eig_u.sign && a.eig_v.sign == b.eig_v.sign &&
         a.characteristic_orbit == b.characteristic_orbit;
}

struct VerdictOptions {
  bool make_favorable = false;
};

inline EquivalenceReport equivalence_verdict(const PlanarField& input, const VerdictOptions& opt = {}) {
  if (input.empty()) throw DomainError("empty support");
  EquivalenceReport rep;
  rep.field = input;
  if (opt.make_favorable) {
    auto fav = make_favorable(input);
    rep.field = fav.field;
    rep.lambda = fav.lambda;
  }
  rep.polytope = build_polytope(rep.field);
  if (rep.polytope.is_point() || !is_favorable(rep.polytope)) {
    rep.principal = upper_principal_part(rep.field).field;
    rep.reasons.push_back(rep.polytope.is_point() ? "no upper boundary"
                                                  : "polytope not favorable; shear with make_favorable");
    return rep;
  }
  UpperPrincipalPart upp = upper_principal_part(rep.field);
  rep.principal = upp.field;
  rep.fan = fan_for_polytope(rep.polytope);
  rep.levels = level_data(rep.polytope, rep.fan);
  LevelData levels_u = level_data(build_polytope(upp.field), rep.fan);
  if (levels_u.M != rep.levels.M) throw InternalError("principal part changes the fan levels");

  for (std::size_t j = 1; j <= rep.fan.s(); ++j) {
    auto cx = fan_chart_field(rep.field, rep.fan, rep.levels, j);
    auto cu = fan_chart_field(upp.field, rep.fan, levels_u, j);
    rep.inventory_x.push_back({cx.label(), analyse_chart(cx)});
    rep.inventory_principal.push_back({cu.label(), analyse_chart(cu)});
  }

  rep.nondegeneracy = check_nondegenerate(upp);
  rep.hypotheses.non_degenerate_upper_part = rep.nondegeneracy.nondegenerate;
  rep.hypotheses.no_curve_of_singularities = check_no_singularity_curve(upp);
  for (const auto& inv : rep.inventory_x)
    for (const auto& r : inv.records)
      if (r.characteristic_orbit) rep.hypotheses.has_characteristic_orbit = true;

  bool mismatch = false;
  std::string first_mismatch;
  for (std::size_t c = 0; c < rep.inventory_x.size(); ++c) {
    const auto& ix = rep.inventory_x[c].records;
    const auto& iu = rep.inventory_principal[c].records;
    std::vector<bool> used(iu.size(), false);
    for (std::size_t a = 0; a < ix.size(); ++a) {
      MatchEntry m{rep.inventory_x[c].chart, a, std::nullopt, false};
      for (std::size_t b = 0; b < iu.size(); ++b)
        if (!used[b] && same_point(ix[a], iu[b])) {
          used[b] = true;
          m.index_principal = b;
          m.same_class = same_classification(ix[a], iu[b]);
          break;
        }
      if (!m.same_class && !mismatch) {
        mismatch = true;
        first_mismatch = m.chart + " record " + std::to_string(a);
      }
      rep.match_table.push_back(m);
    }
    for (std::size_t b = 0; b < iu.size(); ++b)
      if (!used[b]) {
        rep.match_table.push_back({rep.inventory_x[c].chart, std::nullopt, b, false});
        if (!mismatch) {
          mismatch = true;
          first_mismatch = rep.inventory_x[c].chart + " principal record " + std::to_string(b);
        }
      }
  }

  if (!rep.hypotheses.non_degenerate_upper_part) rep.reasons.push_back("non_degenerate_upper_part");
  if (!rep.hypotheses.no_curve_of_singularities) rep.reasons.push_back("no_curve_of_singularities");
  if (!rep.hypotheses.has_characteristic_orbit) rep.reasons.push_back("has_characteristic_orbit");
  if (rep.hypotheses.all()) {
    // A whole singular divisor is allowed: it comes from a vertex face whose along-coefficient
    // vanishes, and the principal part reproduces it.
    for (const auto& inv : rep.inventory_x)
      for (const auto& r : inv.records)
        if (r.cls == SingularityClass::Degenerate && !r.at_origin)
          throw InternalError("hypotheses hold but " + inv.chart + " has a degenerate point off the chart origin");
    if (mismatch) throw InternalError("hypotheses hold but inventories differ at " + first_mismatch);
    rep.verdict = Verdict::Equivalent;
  }
  return rep;
}

struct ReturnMapResult {
  WeightVector weight;
  double period = 0;
  double integral_full = 0, integral_principal = 0;
  int sign_full = 0, sign_principal = 0;
  bool agreement = false;
  std::string status;
};

// Linear-order return map around the divisor r = 0 of the weighted polar blow-up:
//   dr/dtheta = G(theta) r + O(r^2),  G = [r^1 part of r'] / [r^0 part of theta'].
inline ReturnMapResult return_map_test(const PlanarField& f, WeightVector w, double zero_tol = 1e-9) {
  if (f.empty()) throw DomainError("empty support");
  for (Direction dir : {Direction::Xpos, Direction::Xneg, Direction::Ypos, Direction::Yneg}) {
    auto cf = directional_plc(f, w, dir);
    auto recs = divisor_singularities(cf);
    if (!recs.empty()) {
      const auto& r = recs.front();
      std::string where = r.curve ? "the whole divisor" : "u = " + std::to_string(r.coordinate());
      throw HypothesisError("divisor singularity in chart " + cf.label() + " at " + where +
                            "; the return map needs a singularity-free divisor");
    }
  }
  auto trig = cached_trig(w);
  ReturnMapResult res;
  res.weight = w;
  res.period = trig->period();

  auto integral = [&](const PlanarField& g) {
    PolarField pf = polar_field(g, w);
    TrigPoly num = r_slice(pf.r_dot, 1), den = r_slice(pf.theta_dot, 0);
    auto G = [&](double theta) {
      auto [cs, sn] = trig->eval(theta);
      double d = eval_trig_poly(den, cs, sn, 0);
      if (d == 0) throw NumericError("angular speed vanished on the divisor");
      return eval_trig_poly(num, cs, sn, 0) / d;
    };
    return quad::integrate(G, 0.0, res.period, 1e-11, 1e-11).value;
  };
  res.integral_full = integral(f);
  res.integral_principal = integral(upper_principal_part(f).field);
  auto sgn = [&](double v) { return std::abs(v) <= zero_tol ? 0 : (v > 0 ? 1 : -1); };
  res.sign_full = sgn(res.integral_full);
  res.sign_principal = sgn(res.integral_principal);
  res.agreement = res.sign_full != 0 && res.sign_full == res.sign_principal;
  if (res.sign_full == 0 || res.sign_principal == 0)
    res.status = "inconclusive: zero integral";
  else if (res.agreement)
    res.status = "sign agreement at linear order";
  else
    res.status = "sign disagreement at linear order";
  return res;
}

}  // namespace plinf
