#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "field.hpp"
#include "ode.hpp"
#include "quadrature.hpp"

namespace plinf {

// Period of (Cs, Sn) for weight (alpha, beta):
//   T = 2 a^((1-2a)/(2a)) b^(-1/(2a)) * int_0^1 (1-t)^((1-2a)/(2a)) t^((1-2b)/(2b)) dt.
// The endpoint singularities are removed by t = s^(2b) on [0,1/2] and 1-t = s^(2a) on [1/2,1].
inline double lyapunov_period(WeightVector w, double tol = 1e-13) {
  const double a = double(w.alpha), b = double(w.beta);
  const double p = 1.0 / (2 * a) - 1, q = 1.0 / (2 * b) - 1;  // exponents of (1-t) and t
  auto left = [&](double s) { return 2 * b * std::pow(1 - std::pow(s, 2 * b), p); };
  auto right = [&](double s) { return 2 * a * std::pow(1 - std::pow(s, 2 * a), q); };
  auto I1 = quad::integrate(left, 0.0, std::pow(0.5, 1 / (2 * b)), tol, tol);
  auto I2 = quad::integrate(right, 0.0, std::pow(0.5, 1 / (2 * a)), tol, tol);
  double pref = 2 * std::pow(a, (1 - 2 * a) / (2 * a)) / std::pow(b, 1 / (2 * a));
  return pref * (I1.value + I2.value);
}

class TrigTable {
 public:
  struct Node {
    double theta;
    double y[2], d1[2], d2[2];  // (Cs, Sn) and two derivatives
  };

  WeightVector weight() const { return w_; }
  double period() const { return period_; }
  double return_time() const { return return_time_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Right-hand side of the Cauchy problem.
  std::pair<double, double> rhs(double cs, double sn) const {
    return {-ipow(sn, 2 * w_.alpha - 1), ipow(cs, 2 * w_.beta - 1)};
  }

  std::pair<double, double> eval(double theta) const {
    double t = std::fmod(theta, period_);
    if (t < 0) t += period_;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t, [](double v, const Node& n) { return v < n.theta; });
    if (it == nodes_.begin()) ++it;
    if (it == nodes_.end()) --it;
    const Node& n1 = *it;
    const Node& n0 = *(it - 1);
    double h = n1.theta - n0.theta, s = (t - n0.theta) / h;
    double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    double H2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    double H3 = 10 * s3 - 15 * s4 + 6 * s5;
    double H4 = -4 * s3 + 7 * s4 - 3 * s5;
    double H5 = 0.5 * (s3 - 2 * s4 + s5);
    double out[2];
    for (int i = 0; i < 2; ++i)
      out[i] = H0 * n0.y[i] + h * H1 * n0.d1[i] + h * h * H2 * n0.d2[i] + H3 * n1.y[i] + h * H4 * n1.d1[i] +
               h * h * H5 * n1.d2[i];
    return {out[0], out[1]};
  }

  static double ipow(double x, std::int64_t k) {
    double r = 1;
    while (k-- > 0) r *= x;
    return r;
  }

  friend TrigTable build_trig(WeightVector w, double tol);

 private:
  Node make_node(double theta, double cs, double sn) const {
    const auto a = w_.alpha, b = w_.beta;
    Node n{theta, {cs, sn}, {}, {}};
    auto [dc, ds] = rhs(cs, sn);
    n.d1[0] = dc;
    n.d1[1] = ds;
    n.d2[0] = -double(2 * a - 1) * ipow(sn, 2 * a - 2) * ds;
    n.d2[1] = double(2 * b - 1) * ipow(cs, 2 * b - 2) * dc;
    return n;
  }

  WeightVector w_;
  double period_ = 0, return_time_ = 0;
  std::vector<Node> nodes_;
};

inline TrigTable build_trig(WeightVector w, double tol = 1e-12) {
  if (!(tol > 0 && tol <= 1e-6)) throw DomainError("trig tolerance must lie in (0, 1e-6]");
  TrigTable tt;
  tt.w_ = w;
  tt.period_ = lyapunov_period(w, std::min(tol, 1e-13));
  const double T = tt.period_;

  ode::State<2> y{1.0, 0.0};
  auto f = [&](double, const ode::State<2>& s) {
    auto [a, b] = tt.rhs(s[0], s[1]);
    return ode::State<2>{a, b};
  };
  ode::Options opt;
  opt.rtol = tol;
  opt.atol = tol;
  opt.hmax = T / 64;
  tt.nodes_.push_back(tt.make_node(0, 1, 0));
  ode::integrate<2>(f, 0.0, y, 1.05 * T, opt, [&](double t, const ode::State<2>& s, const ode::State<2>&) {
    tt.nodes_.push_back(tt.make_node(t, s[0], s[1]));
    return true;
  });

  // Independent check on T: the first upward zero of Sn after half a period.
  tt.return_time_ = -1;
  for (std::size_t i = 1; i < tt.nodes_.size(); ++i) {
    const auto& a = tt.nodes_[i - 1];
    const auto& b = tt.nodes_[i];
    if (a.theta > 0.5 * T && a.y[1] < 0 && b.y[1] >= 0) {
      double lo = a.theta, hi = b.theta;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * T; ++k) {
        double mid = 0.5 * (lo + hi);
        // Interpolate inside the step directly (eval() wraps modulo T).
        double s = (mid - a.theta) / (b.theta - a.theta), h = b.theta - a.theta;
        double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        double sn = (1 - 10 * s3 + 15 * s4 - 6 * s5) * a.y[1] + h * (s - 6 * s3 + 8 * s4 - 3 * s5) * a.d1[1] +
                    h * h * 0.5 * (s2 - 3 * s3 + 3 * s4 - s5) * a.d2[1] + (10 * s3 - 15 * s4 + 6 * s5) * b.y[1] +
                    h * (-4 * s3 + 7 * s4 - 3 * s5) * b.d1[1] + h * h * 0.5 * (s3 - 2 * s4 + s5) * b.d2[1];
        (sn < 0 ? lo : hi) = mid;
      }
      tt.return_time_ = 0.5 * (lo + hi);
      break;
    }
  }
  if (tt.return_time_ < 0) throw NumericError("generalized sine did not return to zero within 1.05 T");
  if (std::abs(tt.return_time_ - T) > 1e-7)
    throw NumericError("period quadrature (" + std::to_string(T) + ") and orbit return time (" +
                       std::to_string(tt.return_time_) + ") disagree");
  return tt;
}

inline std::pair<double, double> eval_trig(const TrigTable& t, double theta) { return t.eval(theta); }

// Tables are immutable, so one per weight is shared process-wide.
inline std::shared_ptr<const TrigTable> cached_trig(WeightVector w) {
  static std::mutex mu;
  static std::map<WeightVector, std::shared_ptr<const TrigTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const TrigTable>(build_trig(w, 1e-12));
  cache.emplace(w, t);
  return t;
}

}  // namespace plinf
