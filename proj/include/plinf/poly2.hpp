#pragma once

#include <map>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "poly1.hpp"

namespace plinf {

// Sparse polynomial in two variables; key (i,j) multiplies x^i y^j.
class Poly2 {
 public:
  using TermMap = std::map<LatticePoint, Rational>;

  Poly2() = default;
  explicit Poly2(TermMap t) : t_(std::move(t)) { prune(); }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rational coeff(LatticePoint e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
  }
  void add(LatticePoint e, const Rational& c) {
    if (c == 0) return;
    auto& v = t_[e];
    v += c;
    if (v == 0) t_.erase(e);
  }

  bool has_negative_exponent() const {
    for (const auto& [e, c] : t_)
      if (e.m < 0 || e.n < 0) return true;
    return false;
  }

  Rational operator()(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [e, c] : t_) acc += c * pow(x, e.m) * pow(y, e.n);
    return acc;
  }
  double eval(double x, double y) const {
    double acc = 0;
    for (const auto& [e, c] : t_)
      acc += to_double(c) * std::pow(x, static_cast<double>(e.m)) * std::pow(y, static_cast<double>(e.n));
    return acc;
  }

  Poly2 dx() const {
    Poly2 r;
    for (const auto& [e, c] : t_)
      if (e.m != 0) r.add({e.m - 1, e.n}, c * Rational(e.m));
    return r;
  }
  Poly2 dy() const {
    Poly2 r;
    for (const auto& [e, c] : t_)
      if (e.n != 0) r.add({e.m, e.n - 1}, c * Rational(e.n));
    return r;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) {
    for (const auto& [e, c] : b.t_) a.add(e, c);
    return a;
  }
  friend Poly2 operator-(Poly2 a, const Poly2& b) {
    for (const auto& [e, c] : b.t_) a.add(e, -c);
    return a;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add({ea.m + eb.m, ea.n + eb.n}, ca * cb);
    return r;
  }
  friend Poly2 operator*(const Rational& k, const Poly2& a) {
    Poly2 r;
    for (const auto& [e, c] : a.t_) r.add(e, k * c);
    return r;
  }
  friend bool operator==(const Poly2&, const Poly2&) = default;

  // Restriction to y = 0 (as a polynomial in x) and to x = 0 (in y).
  Poly1 at_y0() const {
    std::vector<Rational> c;
    for (const auto& [e, v] : t_)
      if (e.n == 0) {
        if (e.m < 0) throw DomainError("Laurent term in restriction");
        if (c.size() <= static_cast<std::size_t>(e.m)) c.resize(e.m + 1);
        c[e.m] += v;
      }
    return Poly1(std::move(c));
  }
  Poly1 at_x0() const {
    std::vector<Rational> c;
    for (const auto& [e, v] : t_)
      if (e.m == 0) {
        if (e.n < 0) throw DomainError("Laurent term in restriction");
        if (c.size() <= static_cast<std::size_t>(e.n)) c.resize(e.n + 1);
        c[e.n] += v;
      }
    return Poly1(std::move(c));
  }

  std::string str(const std::string& xv = "x", const std::string& yv = "y") const {
    if (t_.empty()) return "0";
    std::string out;
    // Descending total degree, then descending power of the first variable.
    std::vector<std::pair<LatticePoint, Rational>> ordered(t_.begin(), t_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      auto da = a.first.m + a.first.n, db = b.first.m + b.first.n;
      if (da != db) return da > db;
      return a.first.m > b.first.m;
    });
    for (const auto& [e, v] : ordered) {
      Rational mag = abs(v);
      out += out.empty() ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
      bool constant = e.m == 0 && e.n == 0;
      bool unit = mag == 1 && !constant;
      std::string body = unit ? "" : to_string(mag);
      auto factor = [&](const std::string& var, std::int64_t k) {
        if (k == 0) return;
        if (!body.empty()) body += "*";
        body += var;
        if (k != 1) body += "^" + std::to_string(k);
      };
      factor(xv, e.m);
      factor(yv, e.n);
      out += body;
    }
    return out;
  }

 private:
  void prune() {
    for (auto it = t_.begin(); it != t_.end();) it = it->second == 0 ? t_.erase(it) : std::next(it);
  }
  TermMap t_;
};

// Element of Q[y][x]: coefficient i is a polynomial in y multiplying x^i.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<Poly1> c) : c_(std::move(c)) { trim(); }
  static BiPoly from(const Poly2& p) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& [e, v] : p.terms()) {
      if (e.m < 0 || e.n < 0) throw DomainError("BiPoly needs non-negative exponents");
      if (rows.size() <= static_cast<std::size_t>(e.m)) rows.resize(e.m + 1);
      auto& row = rows[e.m];
      if (row.size() <= static_cast<std::size_t>(e.n)) row.resize(e.n + 1);
      row[e.n] += v;
    }
    std::vector<Poly1> c;
    for (auto& r : rows) c.emplace_back(std::move(r));
    return BiPoly(std::move(c));
  }

  const std::vector<Poly1>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree_x() const { return static_cast<int>(c_.size()) - 1; }
  int degree_y() const {
    int d = -1;
    for (const auto& q : c_) d = std::max(d, q.degree());
    return d;
  }
  const Poly1& lead() const { return c_.back(); }

  Poly1 content() const {
    Poly1 g;
    for (const auto& q : c_) g = gcd(g, q);
    return g;
  }
  BiPoly primitive_part() const {
    if (is_zero()) return {};
    Poly1 g = content();
    std::vector<Poly1> c;
    for (const auto& q : c_) c.push_back(q / g);
    // Normalize so the leading coefficient is monic in y.
    Rational k = Rational(1) / c.back().lead();
    for (auto& q : c) q = k * q;
    return BiPoly(std::move(c));
  }
  BiPoly derivative_x() const {
    std::vector<Poly1> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(Rational(static_cast<long long>(i)) * c_[i]);
    return BiPoly(std::move(c));
  }
  Poly1 at_y(const Rational& y) const {
    std::vector<Rational> c;
    for (const auto& q : c_) c.push_back(q(y));
    return Poly1(std::move(c));
  }
  BiPoly scaled(const Poly1& k) const {
    std::vector<Poly1> c;
    for (const auto& q : c_) c.push_back(k * q);
    return BiPoly(std::move(c));
  }

  // lc(b)^(deg a - deg b + 1) * a mod b.
  static BiPoly prem(BiPoly a, const BiPoly& b) {
    if (b.is_zero()) throw DomainError("pseudo-division by zero");
    const Poly1& lb = b.lead();
    while (!a.is_zero() && a.degree_x() >= b.degree_x()) {
      int shift = a.degree_x() - b.degree_x();
      Poly1 la = a.lead();
      std::vector<Poly1> c(a.c_.size());
      for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = lb * a.c_[i];
      for (std::size_t i = 0; i < b.c_.size(); ++i) c[i + shift] = c[i + shift] - la * b.c_[i];
      a = BiPoly(std::move(c));
    }
    return a;
  }

  // Exact division; throws if b does not divide a.
  static BiPoly exact_div(BiPoly a, const BiPoly& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    std::vector<Poly1> q(std::max(0, a.degree_x() - b.degree_x() + 1));
    while (!a.is_zero()) {
      int shift = a.degree_x() - b.degree_x();
      if (shift < 0) throw InternalError("inexact bivariate division");
      auto [f, r] = a.lead().divmod(b.lead());
      if (!r.is_zero()) throw InternalError("inexact bivariate division");
      q[shift] = f;
      std::vector<Poly1> c = a.c_;
      for (std::size_t i = 0; i < b.c_.size(); ++i) c[i + shift] = c[i + shift] - f * b.c_[i];
      BiPoly next(std::move(c));
      if (!next.is_zero() && next.degree_x() >= a.degree_x()) throw InternalError("bivariate division stalled");
      a = std::move(next);
    }
    return BiPoly(std::move(q));
  }

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Poly1> c_;
};

// gcd in Q[x,y] (up to a rational constant) via the primitive remainder sequence.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return b.primitive_part().scaled(b.content().monic());
  if (b.is_zero()) return a.primitive_part().scaled(a.content().monic());
  Poly1 c = gcd(a.content(), b.content());
  BiPoly p = a.primitive_part(), q = b.primitive_part();
  if (p.degree_x() < q.degree_x()) std::swap(p, q);
  while (!q.is_zero()) {
    BiPoly r = BiPoly::prem(p, q);
    p = std::move(q);
    q = r.is_zero() ? BiPoly() : r.primitive_part();
  }
  return p.primitive_part().scaled(c);
}

inline bool is_constant(const BiPoly& p) { return p.degree_x() <= 0 && p.degree_y() <= 0; }

namespace detail {

inline Rational determinant(std::vector<std::vector<Rational>> a) {
  std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return d;
}

// Sylvester resultant with formal degrees (leading coefficients may vanish).
inline Rational sylvester(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  std::size_t n = f.size() - 1, m = g.size() - 1, N = n + m;
  if (N == 0) return 1;
  std::vector<std::vector<Rational>> s(N, std::vector<Rational>(N));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[r][r + i] = f[n - i];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[m + r][r + i] = g[m - i];
  return determinant(std::move(s));
}

inline Poly1 interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences.
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  Poly1 result = Poly1::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    result = result * Poly1(std::vector<Rational>{-xs[i], 1}) + Poly1::constant(dd[i]);
  return result;
}

}  // namespace detail

// Res_x(a, b) as a polynomial in y, by evaluation at deg+1 points and interpolation.
inline Poly1 resultant_x(const BiPoly& a, const BiPoly& b) {
  int n = a.degree_x(), m = b.degree_x();
  if (n < 0 || m < 0) return {};
  int bound = m * std::max(0, a.degree_y()) + n * std::max(0, b.degree_y());
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    Rational y = k;
    std::vector<Rational> f(n + 1), g(m + 1);
    for (int i = 0; i <= n; ++i) f[i] = a.coeffs()[i](y);
    for (int i = 0; i <= m; ++i) g[i] = b.coeffs()[i](y);
    xs.push_back(y);
    ys.push_back(detail::sylvester(f, g));
  }
  return detail::interpolate(xs, ys);
}

// Does the real zero set of p contain a curve? Assumes p is nonzero.
inline bool has_real_curve(const BiPoly& p) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  if (is_constant(p)) return false;
  Poly1 cont = p.content();
  if (cont.degree() >= 1 && !real_roots(cont).empty()) return true;
  BiPoly pp = p.primitive_part();
  if (pp.degree_x() <= 0) return false;
  BiPoly sq = BiPoly::exact_div(pp, gcd(pp, pp.derivative_x()).primitive_part());
  Poly1 crit = sq.lead() * resultant_x(sq, sq.derivative_x());
  if (crit.is_zero()) throw InternalError("squarefree part has vanishing discriminant");

  // One rational sample per open cell between critical values.
  auto roots = real_roots(crit);
  auto upper = [](const RealRoot& r) { return r.exact ? *r.exact : r.hi; };
  auto lower = [](const RealRoot& r) { return r.exact ? *r.exact : r.lo; };
  std::vector<Rational> samples;
  if (roots.empty()) {
    samples.push_back(0);
  } else {
    samples.push_back(lower(roots.front()) - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      while (upper(roots[i]) >= lower(roots[i + 1])) {
        refine_once(roots[i]);
        refine_once(roots[i + 1]);
      }
      samples.push_back((upper(roots[i]) + lower(roots[i + 1])) / 2);
    }
    samples.push_back(upper(roots.back()) + 1);
  }
  for (const auto& y : samples) {
    Poly1 f = sq.at_y(y);
    if (f.degree() >= 1 && !real_roots(f).empty()) return true;
  }
  return false;
}

}  // namespace plinf
