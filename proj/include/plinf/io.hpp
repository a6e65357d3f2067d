#pragma once

#include <string>

#include <json.hpp>

#include "infinity.hpp"

namespace plinf::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

inline json with_schema(json j, const char* kind) {
  j["schema_version"] = schema_version;
  j["kind"] = kind;
  return j;
}

inline void check_schema(const json& j, const char* kind) {
  if (!j.contains("schema_version") || j.at("schema_version") != schema_version)
    throw ParseError("unsupported or missing schema_version", 0);
  if (j.value("kind", "") != kind) throw ParseError(std::string("expected a '") + kind + "' document", 0);
}

inline json rational(const Rational& q) { return to_string(q); }
inline Rational read_rational(const json& j) { return parse_rational(j.get<std::string>()); }
inline json point(LatticePoint p) { return json::array({p.m, p.n}); }
inline json vec(IVec v) { return json::array({v.x, v.y}); }
inline LatticePoint read_point(const json& j) { return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()}; }
inline IVec read_vec(const json& j) { return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()}; }

inline json terms(const PlanarField& f) {
  json t = json::array();
  for (const auto& [p, c] : f.terms()) t.push_back({{"exp", point(p)}, {"a", rational(c.a)}, {"b", rational(c.b)}});
  return t;
}

inline PlanarField terms_from(const json& t) {
  PlanarField::TermMap m;
  for (const auto& e : t) m.emplace(read_point(e.at("exp")), CoeffPair{read_rational(e.at("a")), read_rational(e.at("b"))});
  return PlanarField(std::move(m));
}

inline json to_json(const PlanarField& f) {
  return with_schema({{"text", to_string(f)}, {"terms", terms(f)}}, "field");
}

inline PlanarField field_from_json(const json& j) {
  check_schema(j, "field");
  return terms_from(j.at("terms"));
}

inline json segment(const Segment& s) {
  return {{"from", point(s.from)},
          {"to", point(s.to)},
          {"normal", vec(s.normal)},
          {"level", s.level},
          {"tag", to_string(s.tag)}};
}

inline json to_json(const Polytope& p) {
  json support = json::array(), hull = json::array(), segs = json::array(), up = json::array(),
       low = json::array();
  for (auto q : p.support) support.push_back(point(q));
  for (auto q : p.hull) hull.push_back(point(q));
  for (const auto& s : p.segments) segs.push_back(segment(s));
  auto split = split_boundary(p);
  for (const auto& s : split.upper) up.push_back(segment(s));
  for (const auto& s : split.lower) low.push_back(segment(s));
  json j{{"support", support}, {"hull", hull}, {"segments", segs}, {"upper", up}, {"lower", low},
         {"favorable", is_favorable(p)}};
  if (is_favorable(p)) {
    auto w = plc_weight(p);
    j["plc_weight"] = {{"weight", json::array({w.weight.alpha, w.weight.beta})}, {"delta", w.delta}};
  }
  return with_schema(j, "polytope");
}

// The hull and boundary are recomputed from the support, so the support is authoritative.
inline Polytope polytope_from_json(const json& j) {
  check_schema(j, "polytope");
  std::vector<LatticePoint> pts;
  for (const auto& q : j.at("support")) pts.push_back(read_point(q));
  return build_polytope(pts);
}

inline json to_json(const SimpleFan& fan) {
  json v = json::array(), flags = json::array(), charts = json::array();
  for (auto x : fan.vectors) v.push_back(vec(x));
  for (bool b : fan.skeleton_flags) flags.push_back(b);
  for (std::size_t j = 1; j <= fan.s(); ++j) {
    auto c = chart_map(fan, j);
    charts.push_back({{"j", j},
                      {"first", vec(c.first)},
                      {"second", vec(c.second)},
                      {"forward", json::array({vec(IVec{c.forward.e[0][0], c.forward.e[0][1]}), vec(IVec{c.forward.e[1][0], c.forward.e[1][1]})})},
                      {"divisor", to_string(c.divisor)}});
  }
  return with_schema({{"vectors", v}, {"skeleton", flags}, {"charts", charts}}, "fan");
}

inline SimpleFan fan_from_json(const json& j) {
  check_schema(j, "fan");
  SimpleFan fan;
  for (const auto& x : j.at("vectors")) fan.vectors.push_back(read_vec(x));
  for (const auto& b : j.at("skeleton")) fan.skeleton_flags.push_back(b.get<bool>());
  if (fan.vectors.size() < 2 || fan.skeleton_flags.size() != fan.vectors.size())
    throw ParseError("malformed fan document", 0);
  fan.segment_of.assign(fan.vectors.size(), std::nullopt);
  return fan;
}

inline json to_json(const ChartField& cf) {
  json j{{"chart", cf.label()},
         {"divisor", to_string(cf.divisor)},
         {"norm", json::array({cf.norm_u, cf.norm_v})},
         {"u_component", cf.u_component().str("u", "v")},
         {"v_component", cf.v_component().str("u", "v")},
         {"pretty", pretty(cf)},
         {"terms", terms(cf.field)}};
  if (cf.kind == ChartKind::Directional)
    j["weight"] = json::array({cf.weight.alpha, cf.weight.beta});
  else
    j["cone"] = json::array({vec(cf.first), vec(cf.second)});
  return with_schema(j, "chart_field");
}

inline json eigen(const Eigenvalue& e) {
  json j{{"sign", e.sign}, {"approx", e.approx}};
  if (e.exact) j["exact"] = rational(*e.exact);
  return j;
}

inline json to_json(const SingularityRecord& r) {
  json j{{"chart", r.chart},
         {"axis", to_string(r.axis)},
         {"class", to_string(r.cls)},
         {"characteristic_orbit", r.characteristic_orbit},
         {"at_origin", r.at_origin},
         {"corner", r.corner}};
  if (r.position) {
    json pos{{"poly", r.position->poly.str("t")},
             {"interval", json::array({rational(r.position->lo), rational(r.position->hi)})},
             {"approx", r.position->approx()}};
    if (r.position->exact) pos["exact"] = rational(*r.position->exact);
    j["position"] = pos;
    j["eigenvalues"] = json::array({eigen(r.eig_u), eigen(r.eig_v)});
  } else {
    j["position"] = nullptr;
    j["transverse_poly"] = (r.axis == Axis::V ? r.eig_v_poly : r.eig_u_poly).str("t");
  }
  return j;
}

inline json inventory(const std::vector<ChartInventory>& inv) {
  json out = json::array();
  for (const auto& c : inv) {
    json recs = json::array();
    for (const auto& r : c.records) recs.push_back(to_json(r));
    out.push_back({{"chart", c.chart}, {"records", recs}});
  }
  return out;
}

inline json to_json(const EquivalenceReport& rep) {
  json witnesses = json::array();
  for (const auto& w : rep.nondegeneracy.witnesses)
    witnesses.push_back({{"segment", segment(w.segment)},
                         {"t_monomial", vec(w.direction)},
                         {"t", w.t.approx()},
                         {"quadrant", json::array({w.sign_x, w.sign_y})},
                         {"point", json::array({w.x, w.y})}});
  json table = json::array();
  for (const auto& m : rep.match_table)
    table.push_back({{"chart", m.chart},
                     {"x", m.index_x ? json(*m.index_x) : json(nullptr)},
                     {"principal", m.index_principal ? json(*m.index_principal) : json(nullptr)},
                     {"same_class", m.same_class}});
  json fan = json::array();
  for (auto v : rep.fan.vectors) fan.push_back(vec(v));
  return with_schema({{"verdict", rep.verdict == Verdict::Equivalent ? "Equivalent" : "HypothesesFail"},
                      {"reasons", rep.reasons},
                      {"lambda", rational(rep.lambda)},
                      {"field", to_string(rep.field)},
                      {"principal_part", to_string(rep.principal)},
                      {"fan", fan},
                      {"hypotheses",
                       {{"non_degenerate_upper_part", rep.hypotheses.non_degenerate_upper_part},
                        {"no_curve_of_singularities", rep.hypotheses.no_curve_of_singularities},
                        {"has_characteristic_orbit", rep.hypotheses.has_characteristic_orbit}}},
                      {"witnesses", witnesses},
                      {"inventory_x", inventory(rep.inventory_x)},
                      {"inventory_principal", inventory(rep.inventory_principal)},
                      {"match_table", table}},
                     "equivalence_report");
}

inline json to_json(const ReturnMapResult& r) {
  return with_schema({{"weight", json::array({r.weight.alpha, r.weight.beta})},
                      {"period", r.period},
                      {"integral_full", r.integral_full},
                      {"integral_principal", r.integral_principal},
                      {"sign_full", r.sign_full},
                      {"sign_principal", r.sign_principal},
                      {"agreement", r.agreement},
                      {"status", r.status}},
                     "return_map");
}

inline json error_json(const std::string& kind, const std::string& message) {
  return with_schema({{"error", kind}, {"message", message}}, "error");
}

}  // namespace plinf::io
