// Scalar fields used by the library.
//
// The exact layer works over complex rationals (pairs of GMP rationals); the
// floating layer uses double / std::complex<double>.  Generic code talks to a
// scalar type only through ScalarTraits, so the same polynomial and Dunkl
// machinery instantiates over either field.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dunkl {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "p/q", "p", or a decimal literal such as "-0.25" / "1e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());

  const bool decimal = s.find_first_of(".eE") != std::string::npos;
  if (!decimal) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(text));
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
  }

  // Decimal: mantissa digits with optional point, optional exponent; converted exactly.
  std::string mant = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exponent = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  bool negative = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    negative = mant.front() == '-';
    mant.erase(mant.begin());
  }
  std::string digits;
  long frac = 0;
  bool seen_point = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal literal: " + std::string(text));
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac;
    } else {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + std::string(text));
  mpz_class num(digits, 10);
  long shift = exponent - frac;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift < 0 ? Rational(num, pow10) : Rational(num * pow10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// Complex number with exact rational real and imaginary parts.
class CRational {
 public:
  CRational() = default;
  CRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  CRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  CRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  CRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  CRational operator-() const { return {-re_, -im_}; }

  CRational& operator+=(const CRational& o) {
    re_ += o.re_;
    if (!o.is_real() || !is_real()) im_ += o.im_;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re_ -= o.re_;
    if (!o.is_real() || !is_real()) im_ -= o.im_;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  CRational& operator/=(const CRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      if (!is_real()) im_ /= o.re_;
      return *this;
    }
    Rational den = o.norm2();
    Rational r = (re_ * o.re_ + im_ * o.im_) / den;
    Rational i = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  friend bool operator==(const CRational& a, const CRational& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "p/q" for real values, "(p/q, r/s)" otherwise.
  std::string str() const {
    if (is_real()) return to_string(re_);
    return "(" + to_string(re_) + ", " + to_string(im_) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const CRational& c) { return os << c.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parses "p/q" or "(p/q, r/s)".
inline CRational parse_crational(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos) throw std::invalid_argument("empty scalar literal");
  text = text.substr(first, last - first + 1);
  if (text.front() == '(') {
    if (text.back() != ')') throw std::invalid_argument("unbalanced complex literal");
    auto inner = text.substr(1, text.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("complex literal needs ','");
    return {parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1))};
  }
  return CRational(parse_rational(text));
}

// ---------------------------------------------------------------------------
// ScalarTraits: the minimal interface generic code needs.

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<CRational> {
  static constexpr bool exact = true;
  static CRational zero() { return {}; }
  static CRational one() { return CRational(1); }
  static bool is_zero(const CRational& v) { return v.is_zero(); }
  static CRational from_rational(const Rational& r) { return CRational(r); }
  static CRational from_long(long v) { return CRational(v); }
  /// Exact: every finite double is a dyadic rational.
  static CRational from_double(double v) { return CRational(Rational(v)); }
  static Complex to_complex(const CRational& v) { return v.to_complex(); }
  static double magnitude(const CRational& v) { return std::abs(v.to_complex()); }
  static CRational conj(const CRational& v) { return v.conj(); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_long(long v) { return v; }
  static Rational from_double(double v) { return Rational(v); }
  static Complex to_complex(const Rational& v) { return {v.get_d(), 0.0}; }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
  static Rational conj(const Rational& v) { return v; }
};

/// Threshold below which floating coefficients are dropped from sparse storage.
inline constexpr double kFloatZero = 0.0;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double v) { return std::abs(v) <= kFloatZero; }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_double(double v) { return v; }
  static Complex to_complex(double v) { return {v, 0.0}; }
  static double magnitude(double v) { return std::abs(v); }
  static double conj(double v) { return v; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& v) { return std::abs(v) <= kFloatZero; }
  static Complex from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
  static Complex from_long(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_double(double v) { return {v, 0.0}; }
  static Complex to_complex(const Complex& v) { return v; }
  static double magnitude(const Complex& v) { return std::abs(v); }
  static Complex conj(const Complex& v) { return std::conj(v); }
};

template <class T>
concept ExactScalar = ScalarTraits<T>::exact;

/// Converts between the supported scalar types (exact -> floating, rational -> complex rational, ...).
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return ScalarTraits<To>::from_rational(v);
  } else if constexpr (std::is_same_v<To, Complex>) {
    return ScalarTraits<From>::to_complex(v);
  } else if constexpr (std::is_same_v<To, double> && std::is_same_v<From, CRational>) {
    return v.re().get_d();
  } else if constexpr (std::is_same_v<To, CRational> && std::is_same_v<From, Rational>) {
    return CRational(v);
  } else {
    static_assert(sizeof(To) == 0, "unsupported scalar conversion");
  }
}

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace dunkl
