#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace plinf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

// q^e for any integer e; q must be nonzero when e < 0.
inline Rational pow(const Rational& q, std::int64_t e) {
  if (e < 0) {
    if (q == 0) throw DomainError("zero raised to a negative power");
    return Rational(1) / pow(q, -e);
  }
  Rational result = 1, base = q;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

inline Integer floor(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n.sign() < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

inline std::string to_string(const Rational& q) { return q.str(); }

// Accepts "p" or "p/q" with optional sign; whitespace is not allowed.
inline Rational parse_rational(std::string_view s) {
  auto digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
    throw ParseError("malformed rational '" + std::string(s) + "'", 0);
  Rational q{Integer{std::string(num)}};
  if (slash != std::string_view::npos) {
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator", slash + 1);
    q /= Rational(d);
  }
  return neg ? Rational(-q) : q;
}

}  // namespace plinf
