// Polynomial literal format: "3/2 * x1^2 x2 - x1 + (1/2, -1) * x2^3".
#pragma once

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>

#include "dunkl/polynomial.hpp"

namespace dunkl {

/// Parses a polynomial literal in d variables x1..xd.  Coefficients are
/// rationals ("p/q", decimals) or complex rationals "(p/q, r/s)".
inline Polynomial<CRational> parse_polynomial(std::string_view text, int dim) {
  Polynomial<CRational> result(dim);
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("polynomial literal: " + what + " at position " + std::to_string(i) + " in \"" +
                                std::string(text) + "\"");
  };
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  bool any_term = false;
  while (true) {
    skip_ws();
    int sign = 1;
    bool saw_sign = false;
    while (i < n && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      saw_sign = true;
      ++i;
      skip_ws();
    }
    if (i >= n) {
      if (saw_sign || !any_term) fail("expected a term");
      break;
    }
    CRational coeff(sign);
    MultiIndex nu(dim);
    bool has_content = false;
    while (i < n) {
      skip_ws();
      if (i >= n) break;
      char c = text[i];
      if (c == '+' || c == '-') break;
      if (c == '*') {
        ++i;
        continue;
      }
      if (c == '(') {
        auto close = text.find(')', i);
        if (close == std::string_view::npos) fail("unbalanced '('");
        coeff *= parse_crational(text.substr(i, close - i + 1));
        i = close + 1;
        has_content = true;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t start = i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.' || text[i] == '/')) ++i;
        if (i + 1 < n && (text[i] == 'e' || text[i] == 'E') &&
            (std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
             ((text[i + 1] == '-' || text[i + 1] == '+') && i + 2 < n &&
              std::isdigit(static_cast<unsigned char>(text[i + 2]))))) {
          i += 2;
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
        coeff *= CRational(parse_rational(text.substr(start, i - start)));
        has_content = true;
      } else if (c == 'x') {
        ++i;
        std::size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("variable index expected after 'x'");
        int var = std::stoi(std::string(text.substr(start, i - start)));
        if (var < 1 || var > dim) fail("variable x" + std::to_string(var) + " outside dimension " + std::to_string(dim));
        int e = 1;
        skip_ws();
        if (i < n && text[i] == '^') {
          ++i;
          skip_ws();
          std::size_t es = i;
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (es == i) fail("exponent expected after '^'");
          e = std::stoi(std::string(text.substr(es, i - es)));
        }
        nu.set(var - 1, nu[var - 1] + e);
        has_content = true;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    if (!has_content) fail("empty term");
    result.add_term(nu, coeff);
    any_term = true;
    if (i >= n) break;
  }
  return result;
}

namespace detail {

inline std::string monomial_str(const MultiIndex& nu) {
  std::string s;
  for (int i = 0; i < nu.dim(); ++i) {
    if (nu[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += "x" + std::to_string(i + 1);
    if (nu[i] > 1) s += "^" + std::to_string(nu[i]);
  }
  return s;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Returns {negative, magnitude text}; complex values are never split.
inline std::pair<bool, std::string> coeff_parts(const CRational& c) {
  if (c.is_real()) return {sgn(c.re()) < 0, to_string(abs(c.re()))};
  return {false, c.str()};
}
inline std::pair<bool, std::string> coeff_parts(const Rational& c) { return {sgn(c) < 0, to_string(abs(c))}; }
inline std::pair<bool, std::string> coeff_parts(double c) { return {c < 0, format_double(std::abs(c))}; }
inline std::pair<bool, std::string> coeff_parts(const Complex& c) {
  if (c.imag() == 0.0) return coeff_parts(c.real());
  return {false, "(" + format_double(c.real()) + ", " + format_double(c.imag()) + ")"};
}

}  // namespace detail

/// Prints in the literal format, highest degree first.  Round-trips through
/// parse_polynomial for exact coefficients.
template <class T>
std::string to_literal(const Polynomial<T>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    auto [negative, mag] = detail::coeff_parts(it->second);
    std::string mono = detail::monomial_str(it->first);
    std::string body;
    if (mono.empty())
      body = mag;
    else if (mag == "1")
      body = mono;
    else
      body = mag + " * " + mono;
    if (first)
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace dunkl
