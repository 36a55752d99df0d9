// Normalized monomials phi_nu = x^nu / sqrt(nu!) and Hermite polynomials
// H_nu = e^{-Delta/2} phi_nu.
//
// The 1/sqrt(nu!) factor is irrational, so both objects are carried as an
// exact rational polynomial together with the squared scale 1/nu!.  Every
// identity used by the library pairs two such factors, which is rational.
#pragma once

#include <cmath>

#include "dunkl/polynomial.hpp"

namespace dunkl {

struct NormalizedMonomial {
  MultiIndex nu;
  Rational scale_squared;  ///< 1 / nu!

  explicit NormalizedMonomial(const MultiIndex& index) : nu(index), scale_squared(1 / index.factorial()) {}

  double scale() const { return std::sqrt(scale_squared.get_d()); }
  /// x^nu (unscaled, exact).
  Polynomial<Rational> unscaled() const { return Polynomial<Rational>::monomial(nu); }
  double evaluate(std::span<const double> x) const { return scale() * unscaled().evaluate_real(x); }
};

struct HermiteData {
  MultiIndex nu;
  Rational scale_squared;             ///< 1 / nu!
  Polynomial<Rational> unscaled;      ///< e^{-Delta/2} x^nu, so H_nu = sqrt(scale_squared) * unscaled

  double scale() const { return std::sqrt(scale_squared.get_d()); }
  int degree() const { return nu.degree(); }

  /// H_nu as a floating polynomial.
  Polynomial<double> polynomial() const {
    double s = scale();
    return unscaled.map<double>([s](const Rational& c) { return s * c.get_d(); });
  }
  double evaluate(std::span<const double> z) const { return scale() * unscaled.evaluate_real(z); }
  /// h_nu(z) = e^{-|z|^2/2} H_nu(z)
  double evaluate_function(std::span<const double> z) const {
    double r2 = 0;
    for (double v : z) r2 += v * v;
    return std::exp(-r2 / 2) * evaluate(z);
  }
};

inline HermiteData hermite(const MultiIndex& nu) {
  return {nu, 1 / nu.factorial(), heat_half(Polynomial<Rational>::monomial(nu))};
}

}  // namespace dunkl
