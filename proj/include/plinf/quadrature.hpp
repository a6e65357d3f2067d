#pragma once

#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace plinf::quad {

struct Result {
  double value = 0;
  double error = 0;
  std::size_t intervals = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (nodes listed from the edge inward).
inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece gk15(F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double kron = wgk[7] * fc, gauss = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = h * xgk[i];
    double s = f(c - dx) + f(c + dx);
    kron += wgk[i] * s;
    if (i % 2 == 1) gauss += wg[i / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod on [a, b]; the integrand must be finite on the
// open interval and is never evaluated at the endpoints.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                 std::size_t max_intervals = 20000) {
  std::priority_queue<detail::Piece> heap;
  auto first = detail::gk15(f, a, b);
  heap.push(first);
  double total = first.value, err = first.error;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (heap.size() >= max_intervals)
      throw NumericError("quadrature did not converge (estimated error " + std::to_string(err) + ")");
    auto worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    auto l = detail::gk15(f, worst.a, mid), r = detail::gk15(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed accumulated rounding from the running updates.
  Result res;
  res.intervals = heap.size();
  res.value = 0;
  res.error = 0;
  while (!heap.empty()) {
    res.value += heap.top().value;
    res.error += heap.top().error;
    heap.pop();
  }
  return res;
}

}  // namespace plinf::quad
