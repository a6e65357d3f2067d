#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "poly2.hpp"
#include "rational.hpp"

namespace plinf {

struct CoeffPair {
  Rational a;  // multiplies x d/dx
  Rational b;  // multiplies y d/dy
  friend bool operator==(const CoeffPair&, const CoeffPair&) = default;
};

// True when x^m y^n (a x d/dx + b y d/dy) is a polynomial vector field.
inline bool admissible(LatticePoint p, const CoeffPair& c) {
  bool a_ok = c.a == 0 || (p.m >= -1 && p.n >= 0);
  bool b_ok = c.b == 0 || (p.m >= 0 && p.n >= -1);
  return a_ok && b_ok;
}

// Planar polynomial vector field in the logarithmic basis:
//   X = sum x^m y^n (a_{m,n} x d/dx + b_{m,n} y d/dy).
class PlanarField {
 public:
  using TermMap = std::map<LatticePoint, CoeffPair>;

  PlanarField() = default;
  explicit PlanarField(TermMap terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.a == 0 && it->second.b == 0) {
        it = terms_.erase(it);
        continue;
      }
      if (!admissible(it->first, it->second))
        throw DomainError("term at " + to_string(it->first) + " is not a polynomial vector field");
      ++it;
    }
  }

  // From ordinary components P d/dx + Q d/dy.
  static PlanarField from_components(const Poly2& P, const Poly2& Q) {
    TermMap t;
    for (const auto& [e, c] : P.terms()) {
      if (e.m < 0 || e.n < 0) throw DomainError("Laurent monomial in x-component");
      t[{e.m - 1, e.n}].a += c;
    }
    for (const auto& [e, c] : Q.terms()) {
      if (e.m < 0 || e.n < 0) throw DomainError("Laurent monomial in y-component");
      t[{e.m, e.n - 1}].b += c;
    }
    return PlanarField(std::move(t));
  }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::vector<LatticePoint> support() const {
    std::vector<LatticePoint> s;
    for (const auto& [p, c] : terms_) s.push_back(p);
    return s;
  }

  Poly2 x_component() const {
    Poly2 P;
    for (const auto& [p, c] : terms_) P.add({p.m + 1, p.n}, c.a);
    return P;
  }
  Poly2 y_component() const {
    Poly2 Q;
    for (const auto& [p, c] : terms_) Q.add({p.m, p.n + 1}, c.b);
    return Q;
  }

  std::pair<Rational, Rational> operator()(const Rational& x, const Rational& y) const {
    return {x_component()(x, y), y_component()(x, y)};
  }

  PlanarField restrict_to(const std::function<bool(LatticePoint)>& keep) const {
    TermMap t;
    for (const auto& [p, c] : terms_)
      if (keep(p)) t.emplace(p, c);
    return PlanarField(std::move(t));
  }

  friend bool operator==(const PlanarField&, const PlanarField&) = default;

 private:
  TermMap terms_;
};

inline std::string to_string(const PlanarField& f) {
  return "dx = " + f.x_component().str() + "; dy = " + f.y_component().str();
}

struct WeightVector {
  std::int64_t alpha = 1;
  std::int64_t beta = 1;

  WeightVector() = default;
  WeightVector(std::int64_t a, std::int64_t b) : alpha(a), beta(b) {
    if (a <= 0 || b <= 0) throw DomainError("weight entries must be positive");
    if (gcd(a, b) != 1) throw DomainError("weight entries must be coprime");
  }
  std::int64_t level(LatticePoint p) const { return alpha * p.m + beta * p.n; }
  friend auto operator<=>(const WeightVector&, const WeightVector&) = default;
};

inline std::string to_string(const WeightVector& w) {
  return "(" + std::to_string(w.alpha) + "," + std::to_string(w.beta) + ")";
}

// (alpha,beta)-decomposition: sub-fields by level d = alpha m + beta n, increasing.
inline std::vector<std::pair<std::int64_t, PlanarField>> decompose(const PlanarField& f, WeightVector w) {
  if (f.empty()) throw DomainError("empty support");
  std::map<std::int64_t, PlanarField::TermMap> levels;
  for (const auto& [p, c] : f.terms()) levels[w.level(p)].emplace(p, c);
  std::vector<std::pair<std::int64_t, PlanarField>> out;
  for (auto& [d, t] : levels) out.emplace_back(d, PlanarField(std::move(t)));
  return out;
}

inline std::int64_t max_level(const PlanarField& f, WeightVector w) {
  if (f.empty()) throw DomainError("empty support");
  std::int64_t d = w.level(f.terms().begin()->first);
  for (const auto& [p, c] : f.terms()) d = std::max(d, w.level(p));
  return d;
}

// p(x + lambda y, y).
inline Poly2 substitute_shear(const Poly2& p, const Rational& lambda) {
  Poly2 r;
  for (const auto& [e, c] : p.terms()) {
    // (x + lambda y)^m y^n = sum_i C(m,i) lambda^(m-i) x^i y^(n+m-i)
    Rational binom = 1;
    for (std::int64_t i = 0; i <= e.m; ++i) {
      r.add({i, e.n + e.m - i}, c * binom * pow(lambda, e.m - i));
      binom = binom * Rational(e.m - i) / Rational(i + 1);
    }
  }
  return r;
}

// The field in coordinates x~ = x - lambda y, y~ = y.
inline PlanarField shear(const PlanarField& f, const Rational& lambda) {
  if (lambda == 0) return f;
  Poly2 P = substitute_shear(f.x_component(), lambda);
  Poly2 Q = substitute_shear(f.y_component(), lambda);
  try {
    return PlanarField::from_components(P - lambda * Q, Q);
  } catch (const DomainError& e) {
    throw InternalError(std::string("shear broke admissibility: ") + e.what());
  }
}

}  // namespace plinf
