#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace plinf {

// Dense univariate polynomial over Q; coeffs()[i] multiplies t^i. Always trimmed.
class Poly1 {
 public:
  Poly1() = default;
  Poly1(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static Poly1 constant(const Rational& v) { return Poly1(std::vector<Rational>{v}); }
  static Poly1 monomial(const Rational& v, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = v;
    return Poly1(std::move(c));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  double eval(double t) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
  }

  Poly1 derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long long>(i));
    return Poly1(std::move(d));
  }

  Poly1 operator-() const {
    Poly1 r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly1(std::move(c));
  }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const Rational& k, const Poly1& a) {
    if (k == 0) return {};
    Poly1 r = a;
    for (auto& v : r.c_) v *= k;
    return r;
  }
  friend bool operator==(const Poly1&, const Poly1&) = default;

  // Euclidean division; throws on division by zero.
  std::pair<Poly1, Poly1> divmod(const Poly1& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> r = c_;
    if (degree() < d.degree()) return {Poly1(), *this};
    std::vector<Rational> q(c_.size() - d.c_.size() + 1);
    const Rational& ld = d.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational f = r[k + d.c_.size() - 1] / ld;
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {Poly1(std::move(q)), Poly1(std::move(r))};
  }
  Poly1 operator%(const Poly1& d) const { return divmod(d).second; }
  Poly1 operator/(const Poly1& d) const { return divmod(d).first; }

  Poly1 monic() const {
    if (is_zero()) return {};
    return (Rational(1) / lead()) * *this;
  }

  // Divides out t^k for the largest k with t^k | p.
  Poly1 strip_zero_roots(std::size_t* k_out = nullptr) const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    if (k_out) *k_out = k;
    return Poly1(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(std::min(k, c_.size())), c_.end()));
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& v = c_[i];
      if (v == 0) continue;
      Rational mag = abs(v);
      out += out.empty() ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
      bool unit = mag == 1 && i > 0;
      if (!unit) out += to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly1 gcd(Poly1 a, Poly1 b) {
  while (!b.is_zero()) {
    Poly1 r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly1 squarefree_part(const Poly1& p) {
  if (p.degree() <= 0) return p;
  Poly1 g = gcd(p, p.derivative());
  return (p / g).monic();
}

// Sturm chain of a polynomial; scaled by positive constants to keep numbers small.
inline std::vector<Poly1> sturm_chain(const Poly1& p) {
  std::vector<Poly1> chain;
  if (p.is_zero()) return chain;
  auto normalize = [](const Poly1& q) { return (Rational(1) / abs(q.lead())) * q; };
  chain.push_back(normalize(p));
  Poly1 d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(normalize(d));
  while (true) {
    Poly1 r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(normalize(r));
  }
  return chain;
}

inline int sign_variations(const std::vector<Poly1>& chain, const Rational& t) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign(q(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Number of distinct real roots in (lo, hi].
inline int count_roots(const std::vector<Poly1>& chain, const Rational& lo, const Rational& hi) {
  if (chain.empty()) return 0;
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}
inline int count_roots(const Poly1& p, const Rational& lo, const Rational& hi) {
  return count_roots(sturm_chain(squarefree_part(p)), lo, hi);
}

// Cauchy bound: all complex roots satisfy |z| < bound.
inline Rational root_bound(const Poly1& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(p.coeffs()[i] / p.lead()));
  return m + 1;
}

// A real algebraic number: the unique root of `poly` (squarefree) in (lo, hi].
struct RealRoot {
  Poly1 poly;
  Rational lo, hi;
  std::optional<Rational> exact;

  double approx() const {
    if (exact) return to_double(*exact);
    return to_double((lo + hi) / 2);
  }
  Rational width() const { return hi - lo; }
};

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer a = floor(lo);
  if (Rational(a) == lo) return lo;
  if (Rational(a + 1) <= hi) return Rational(a + 1);
  return Rational(a) + Rational(1) / simplest_between(Rational(1) / (hi - Rational(a)), Rational(1) / (lo - Rational(a)));
}

// Halves the isolating interval once; may discover the root exactly.
inline void refine_once(RealRoot& r) {
  if (r.exact) return;
  Rational mid = (r.lo + r.hi) / 2;
  Rational fm = r.poly(mid);
  if (fm == 0) {
    r.exact = mid;
    r.hi = mid;
    return;
  }
  Rational fh = r.poly(r.hi);
  if (fh == 0) {
    r.exact = r.hi;
    return;
  }
  if (sign(fm) == sign(fh))
    r.hi = mid;
  else
    r.lo = mid;
}

inline void refine_to(RealRoot& r, const Rational& width) {
  while (!r.exact && r.width() > width) refine_once(r);
}

// Tries to identify a rational root: any rational root p/q of an integer polynomial has
// q | lead, and distinct rationals with such denominators are >= 1/lead^2 apart.
inline void try_make_exact(RealRoot& r) {
  if (r.exact) return;
  Integer lcm_den = 1;
  for (const auto& c : r.poly.coeffs()) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  Rational lead = abs(r.poly.lead() * Rational(lcm_den));
  Integer g = 0;
  for (const auto& c : r.poly.coeffs()) g = boost::multiprecision::gcd(g, numerator(c * Rational(lcm_den)));
  if (g != 0) lead /= Rational(g);
  refine_to(r, Rational(1) / (2 * lead * lead));
  if (r.exact) return;
  Rational s = simplest_between(r.lo, r.hi);
  if (s > r.lo && r.poly(s) == 0) r.exact = s;
}

inline std::vector<RealRoot> real_roots(const Poly1& p) {
  std::vector<RealRoot> out;
  if (p.degree() <= 0) return out;
  Poly1 f = squarefree_part(p);
  auto chain = sturm_chain(f);
  Rational b = root_bound(f);

  // Split points must avoid roots so the counts stay exact.
  auto splitter = [&](const Rational& lo, const Rational& hi) {
    static const int nudges[] = {8, 7, 9, 5, 11, 3, 13, 1, 15};
    for (int k : nudges) {
      Rational mid = lo + (hi - lo) * Rational(k, 16);
      if (f(mid) != 0) return mid;
    }
    throw InternalError("could not find a root-free split point");
  };

  struct Job {
    Rational lo, hi;
    int count;
  };
  std::vector<Job> stack{{-b, b, count_roots(chain, -b, b)}};
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.count == 0) continue;
    if (job.count == 1) {
      RealRoot r{f, job.lo, job.hi, std::nullopt};
      if (f(job.hi) == 0) r.exact = job.hi;
      out.push_back(std::move(r));
      continue;
    }
    Rational mid = splitter(job.lo, job.hi);
    int left = count_roots(chain, job.lo, mid);
    stack.push_back({mid, job.hi, job.count - left});
    stack.push_back({job.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.hi <= b.lo; });
  for (auto& r : out) {
    try_make_exact(r);
    // Enough for the double annotation to be correctly rounded-ish.
    Rational scale = std::max(Rational(1), abs(r.hi));
    refine_to(r, scale / Rational(Integer(1) << 56));
  }
  return out;
}

// Sign of g at the algebraic number r.
inline int sign_at(const Poly1& g, RealRoot r) {
  if (g.is_zero()) return 0;
  if (r.exact) return sign(g(*r.exact));
  Poly1 h = gcd(r.poly, g);
  if (h.degree() >= 1 && count_roots(h, r.lo, r.hi) > 0) return 0;
  auto chain = sturm_chain(squarefree_part(g));
  while (!r.exact && count_roots(chain, r.lo, r.hi) > 0) refine_once(r);
  if (r.exact) return sign(g(*r.exact));
  // g has no root in [lo, hi] apart from possibly lo itself, which is not r.
  return sign(g(r.hi));
}

inline double approx_value(const Poly1& g, const RealRoot& r) {
  if (r.exact) return to_double(g(*r.exact));
  RealRoot t = r;
  refine_to(t, Rational(1, 1LL << 50));
  return g.eval(t.approx());
}

inline bool same_root(const RealRoot& a, const RealRoot& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  if (a.exact) return b.poly(*a.exact) == 0 && *a.exact > b.lo && *a.exact <= b.hi;
  if (b.exact) return same_root(b, a);
  Rational lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo >= hi) return false;
  Poly1 h = gcd(a.poly, b.poly);
  return h.degree() >= 1 && count_roots(h, lo, hi) > 0;
}

}  // namespace plinf
