#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "infinity.hpp"
#include "trig.hpp"

namespace plinf {

struct Seed {
  double theta = 0, r = 1;
};

struct PortraitSpec {
  std::optional<WeightVector> weight;  // default: plc weight when favorable, else (1,1)
  std::optional<std::vector<Seed>> seeds;  // default: grid_theta x grid_r seeds
  int grid_theta = 12, grid_r = 4;
  double horizon = 20;  // time span in each direction
  double rtol = 1e-8;
  double r_max = 1e3;  // trajectories entering r > r_max are stopped (close to the origin)
  std::size_t max_points = 4000;  // per direction
  int size = 600;
};

struct BoundaryMarker {
  std::string chart;
  double u = 0;
  double theta = 0;
  SingularityClass cls = SingularityClass::Hyperbolic;
};

struct Trajectory {
  Seed seed;
  std::vector<std::pair<double, double>> points;  // (theta, r), backward part first
  bool truncated = false;
  std::string note;
};

struct Portrait {
  WeightVector weight;
  double period = 0;
  std::vector<BoundaryMarker> markers;
  std::vector<std::string> singular_charts;  // charts whose whole divisor is singular
  std::vector<Trajectory> trajectories;
  std::string svg;
};

// The angle theta* on r = 0 seen at divisor coordinate u of a directional chart.
//   x+: u = Sn/Cs^(b/a), Cs > 0     x-: u = Sn/|Cs|^(b/a), Cs < 0
//   y+: u = Cs/Sn^(a/b), Sn > 0     y-: u = Cs/|Sn|^(a/b), Sn < 0
inline double theta_of_divisor_point(const TrigTable& trig, Direction dir, double u) {
  const double T = trig.period();
  const double a = double(trig.weight().alpha), b = double(trig.weight().beta);
  double centre = 0;
  switch (dir) {
    case Direction::Xpos: centre = 0; break;
    case Direction::Ypos: centre = T / 4; break;
    case Direction::Xneg: centre = T / 2; break;
    case Direction::Yneg: centre = 3 * T / 4; break;
  }
  const bool x_dir = dir == Direction::Xpos || dir == Direction::Xneg;
  auto coord = [&](double theta) {
    auto [cs, sn] = trig.eval(theta);
    return x_dir ? sn / std::pow(std::abs(cs), b / a) : cs / std::pow(std::abs(sn), a / b);
  };
  double lo = centre - T / 4 * (1 - 1e-12), hi = centre + T / 4 * (1 - 1e-12);
  const double s_lo = coord(lo) - u;
  if ((s_lo < 0) == (coord(hi) - u < 0)) throw NumericError("divisor coordinate outside the chart's angular range");
  for (int k = 0; k < 200 && hi - lo > 1e-15 * T; ++k) {
    double mid = 0.5 * (lo + hi);
    ((coord(mid) - u < 0) == (s_lo < 0) ? lo : hi) = mid;
  }
  double t = std::fmod(0.5 * (lo + hi), T);
  if (t < 0) t += T;
  return T - t < 1e-12 * T ? 0.0 : t;
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

inline const char* marker_colour(SingularityClass c) {
  switch (c) {
    case SingularityClass::Hyperbolic: return "#1f77b4";
    case SingularityClass::SemiHyperbolic: return "#ff7f0e";
    case SingularityClass::Degenerate: return "#d62728";
    case SingularityClass::CurveOfSingularities: return "#9467bd";
  }
  return "#000000";
}

inline std::vector<std::pair<double, double>> half_trajectory(const PolarField& pf, const TrigTable& trig,
                                                              Seed seed, double t1, const PortraitSpec& spec,
                                                              bool& truncated, std::string& note) {
  std::vector<std::pair<double, double>> pts{{seed.theta, seed.r}};
  ode::State<2> y{seed.theta, seed.r};
  auto rhs = [&](double, const ode::State<2>& s) {
    auto [cs, sn] = trig.eval(s[0]);
    double r = std::max(s[1], 0.0);
    return ode::State<2>{pf.eval_theta_dot(cs, sn, r), pf.eval_r_dot(cs, sn, r)};
  };
  ode::Options opt;
  opt.rtol = spec.rtol;
  opt.atol = spec.rtol;
  opt.hmax = trig.period() / 32;
  try {
    ode::integrate<2>(rhs, 0.0, y, t1, opt, [&](double, const ode::State<2>& s, const ode::State<2>&) {
      pts.emplace_back(s[0], s[1]);
      if (s[1] > spec.r_max) return false;
      return pts.size() < spec.max_points;
    });
  } catch (const NumericError& e) {
    truncated = true;
    note = e.what();
  }
  return pts;
}

}  // namespace detail

inline Portrait render_portrait(const PlanarField& f, const PortraitSpec& spec = {}) {
  if (f.empty()) throw DomainError("empty support");
  Portrait out;
  if (spec.weight) {
    out.weight = *spec.weight;
  } else {
    Polytope p = build_polytope(f);
    out.weight = is_favorable(p) ? plc_weight(p).weight : WeightVector{1, 1};
  }
  auto trig = cached_trig(out.weight);
  const double T = out.period = trig->period();
  PolarField pf = polar_field(f, out.weight);

  for (Direction dir : {Direction::Xpos, Direction::Ypos, Direction::Xneg, Direction::Yneg}) {
    auto cf = directional_plc(f, out.weight, dir);
    for (const auto& rec : analyse_chart(cf)) {
      if (rec.curve) {
        out.singular_charts.push_back(cf.label());
        continue;
      }
      double th = theta_of_divisor_point(*trig, dir, rec.coordinate());
      bool dup = false;
      for (const auto& m : out.markers) {
        double d = std::abs(m.theta - th);
        if (std::min(d, T - d) < 1e-9 * T) dup = true;
      }
      if (!dup) out.markers.push_back({cf.label(), rec.coordinate(), th, rec.cls});
    }
  }

  std::vector<Seed> seeds;
  if (spec.seeds) {
    seeds = *spec.seeds;
  } else {
    for (int i = 0; i < spec.grid_theta; ++i)
      for (int k = 1; k <= spec.grid_r; ++k) seeds.push_back({(i + 0.5) * T / spec.grid_theta, double(k) / spec.grid_r});
  }
  for (const auto& s : seeds) {
    if (!(s.r > 0 && s.r <= 1) || !(s.theta >= 0 && s.theta < T))
      throw DomainError("seed (" + std::to_string(s.theta) + ", " + std::to_string(s.r) + ") outside (0,1] x [0,T)");
    Trajectory tr;
    tr.seed = s;
    std::string nb, nf;
    bool tb = false, tf = false;
    auto back = detail::half_trajectory(pf, *trig, s, -spec.horizon, spec, tb, nb);
    auto fwd = detail::half_trajectory(pf, *trig, s, spec.horizon, spec, tf, nf);
    tr.points.assign(back.rbegin(), back.rend());
    tr.points.insert(tr.points.end(), fwd.begin() + 1, fwd.end());
    tr.truncated = tb || tf;
    tr.note = tb ? "backward: " + nb : (tf ? "forward: " + nf : "");
    out.trajectories.push_back(std::move(tr));
  }

  // Disk picture: radius rho = 1/(1+r), angle phi = 2 pi theta / T.
  const double R = 0.45 * spec.size, c = 0.5 * spec.size;
  auto px = [&](double theta, double r) {
    double rho = 1 / (1 + std::max(r, 0.0)), phi = 2 * M_PI * theta / T;
    return std::pair{c + R * rho * std::cos(phi), c - R * rho * std::sin(phi)};
  };
  using detail::fmt3;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.size << "\" height=\""
      << spec.size << "\" viewBox=\"0 0 " << spec.size << " " << spec.size << "\">\n"
      << "<metadata>weight=" << to_string(out.weight) << "; period=" << fmt3(T)
      << "; disk radius rho=1/(1+r), r=0 is the circle at infinity; angle 2*pi*theta/T</metadata>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<circle cx=\"" << fmt3(c) << "\" cy=\"" << fmt3(c) << "\" r=\"" << fmt3(R) << "\" fill=\"none\" stroke=\""
      << (out.singular_charts.empty() ? "black" : detail::marker_colour(SingularityClass::CurveOfSingularities))
      << "\" stroke-width=\"1.5\"" << (out.singular_charts.empty() ? "" : " stroke-dasharray=\"6,3\"") << "/>\n";
  for (std::size_t i = 0; i < out.trajectories.size(); ++i) {
    const auto& tr = out.trajectories[i];
    if (tr.truncated) svg << "<!-- trajectory " << i << " truncated: " << tr.note << " -->\n";
    svg << "<polyline fill=\"none\" stroke=\"#444444\" stroke-width=\"0.7\" points=\"";
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      auto [x, y] = px(tr.points[k].first, tr.points[k].second);
      svg << (k ? " " : "") << fmt3(x) << "," << fmt3(y);
    }
    svg << "\"/>\n";
  }
  for (const auto& m : out.markers) {
    auto [x, y] = px(m.theta, 0);
    svg << "<circle class=\"" << to_string(m.cls) << "\" cx=\"" << fmt3(x) << "\" cy=\"" << fmt3(y)
        << "\" r=\"5\" fill=\"" << detail::marker_colour(m.cls) << "\"><title>" << m.chart << " u=" << fmt3(m.u) << " "
        << to_string(m.cls) << "</title></circle>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace plinf
