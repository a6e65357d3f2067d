#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "errors.hpp"

namespace plinf::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h0 = 0;  // 0: pick automatically
  double hmax = 0;  // 0: unbounded
  std::size_t max_steps = 2000000;
};

struct Stats {
  std::size_t accepted = 0, rejected = 0;
};

// Dormand-Prince 5(4) with step-size control on the embedded error estimate.
// rhs(t, y) -> dy/dt. After each accepted step observer(t, y, f) is called with the
// state at the step end; returning false stops the integration early.
// Integrates from t0 toward t1 (either direction) and returns the final time reached.
template <std::size_t N, class Rhs, class Observer>
double integrate(Rhs&& rhs, double t0, State<N>& y, double t1, const Options& opt, Observer&& observer,
                 Stats* stats = nullptr) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t1 - t0;
  if (span == 0) return t0;
  const double dir = span > 0 ? 1.0 : -1.0;

  auto axpy = [](State<N> base, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    for (const auto& [c, k] : terms)
      for (std::size_t i = 0; i < N; ++i) base[i] += h * c * (*k)[i];
    return base;
  };

  State<N> k1 = rhs(t0, y);
  double h = opt.h0;
  if (h <= 0) {
    double ny = 0, nf = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double sc = opt.atol + opt.rtol * std::abs(y[i]);
      ny = std::max(ny, std::abs(y[i]) / sc);
      nf = std::max(nf, std::abs(k1[i]) / sc);
    }
    h = (ny < 1e-5 || nf < 1e-5) ? 1e-6 : 0.01 * ny / nf;
    h = std::min(h, std::abs(span));
  }
  if (opt.hmax > 0) h = std::min(h, opt.hmax);

  double t = t0;
  std::size_t steps = 0;
  while (dir * (t1 - t) > 0) {
    if (++steps > opt.max_steps) throw NumericError("integrator exceeded its step budget");
    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    double hs = dir * h;
    State<N> k2 = rhs(t + c2 * hs, axpy(y, hs, {{a21, &k1}}));
    State<N> k3 = rhs(t + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    State<N> k4 = rhs(t + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    State<N> k5 = rhs(t + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    State<N> k6 = rhs(t + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    State<N> ynew = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    State<N> k7 = rhs(t + hs, ynew);

    double err = 0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
      if (!std::isfinite(ynew[i])) finite = false;
    }
    if (!finite) err = 1e10;

    if (err <= 1.0) {
      t = last ? t1 : t + hs;
      y = ynew;
      k1 = k7;
      if (stats) ++stats->accepted;
      if (!observer(t, static_cast<const State<N>&>(y), static_cast<const State<N>&>(k1))) return t;
      double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      if (stats) ++stats->rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (opt.hmax > 0) h = std::min(h, opt.hmax);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw NumericError("integrator step size underflow");
  }
  return t;
}

template <std::size_t N, class Rhs>
double integrate(Rhs&& rhs, double t0, State<N>& y, double t1, const Options& opt = {}) {
  return integrate<N>(std::forward<Rhs>(rhs), t0, y, t1, opt, [](double, const State<N>&, const State<N>&) {
    return true;
  });
}

}  // namespace plinf::ode
