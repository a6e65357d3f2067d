#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "field.hpp"

namespace plinf {

namespace detail {

// Recursive descent over
//   field := "dx" "=" poly ";" "dy" "=" poly [";"]
//   poly  := ["+"|"-"] term (("+"|"-") term)*
//   term  := coeff? ("*"? var ("^" uint)?)*
//   coeff := int ["/" uint]    (int may carry its own sign, as in "x + -2/3*y")
class FieldParser {
 public:
  explicit FieldParser(std::string_view src) : s_(src) {}

  PlanarField parse() {
    expect_word("dx");
    expect('=');
    Poly2 P = poly();
    expect(';');
    expect_word("dy");
    expect('=');
    Poly2 Q = poly();
    skip_ws();
    if (peek() == ';') ++pos_;
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return PlanarField::from_components(P, Q);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::string near = pos_ < s_.size() ? " near '" + std::string(s_.substr(pos_, 8)) + "'" : " at end of input";
    throw ParseError(msg + near, pos_);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }
  bool is_digit(char c) const { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  Integer uint_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Poly2 poly() {
    Poly2 result;
    bool first = true;
    while (true) {
      char c = peek();
      Rational sgn = 1;
      if (c == '+' || c == '-') {
        sgn = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      auto [e, coeff] = term();
      result.add(e, sgn * coeff);
      first = false;
    }
    return result;
  }

  std::pair<LatticePoint, Rational> term() {
    Rational coeff = 1;
    bool have_coeff = false, have_var = false;
    Rational own_sign = 1;
    if (char c = peek(); c == '+' || c == '-') {
      std::size_t save = pos_++;
      if (!is_digit(peek())) {
        pos_ = save;
        fail("expected a term");
      }
      own_sign = c == '-' ? -1 : 1;
    }
    if (is_digit(peek())) {
      coeff = own_sign * Rational(uint_literal());
      if (peek() == '/') {
        ++pos_;
        std::size_t at = pos_;
        Integer den = uint_literal();
        if (den == 0) throw ParseError("zero denominator", at);
        coeff /= Rational(den);
      }
      have_coeff = true;
    }
    LatticePoint e{0, 0};
    while (true) {
      std::size_t save = pos_;
      char c = peek();
      if (c == '*') {
        ++pos_;
        c = peek();
        if (c != 'x' && c != 'y') fail("expected 'x' or 'y' after '*'");
      }
      if (c != 'x' && c != 'y') {
        pos_ = save;
        break;
      }
      ++pos_;
      std::int64_t k = 1;
      if (peek() == '^') {
        ++pos_;
        Integer v = uint_literal();
        if (v > 1000000) fail("exponent too large");
        k = v.convert_to<std::int64_t>();
      }
      (c == 'x' ? e.m : e.n) += k;
      have_var = true;
    }
    if (!have_coeff && !have_var) fail("expected a term");
    return {e, coeff};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PlanarField parse_field(std::string_view source) { return detail::FieldParser(source).parse(); }

}  // namespace plinf
