#include <gtest/gtest.h>

#include <cmath>

#include "common.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/poly_io.hpp"
#include "dunkl/polynomial.hpp"
#include "dunkl/sphere_norm.hpp"

using namespace dunkl;
using P = Polynomial<CRational>;

namespace {

P x(int d, int i) { return P::variable(d, i); }
CRational q(long a, long b = 1) { return CRational(Rational(a, b)); }

}  // namespace

TEST(Rationals, Parsing) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("x"), std::exception);
}

TEST(ComplexRational, FieldOperations) {
  CRational a(Rational(1, 2), Rational(1, 3)), b(Rational(-2), Rational(3, 4));
  CRational c = a * b / b;
  EXPECT_EQ(c, a);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * a.conj(), CRational(Rational(1, 4) + Rational(1, 9)));
}

TEST(Polynomial, ArithmeticAndDegree) {
  P p = x(2, 0) * x(2, 0) + q(3) * x(2, 1);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_TRUE((p - p).is_zero());
  P sq = p * p;
  EXPECT_EQ(sq.coeff(MultiIndex{2, 1}), q(6));
  EXPECT_EQ(sq.homogeneous_part(2), q(9) * x(2, 1) * x(2, 1));
}

TEST(Polynomial, DerivativesAndLaplacian) {
  P p = x(2, 0) * x(2, 0) * x(2, 0) * x(2, 1) * x(2, 1);  // x1^3 x2^2
  EXPECT_EQ(p.derivative(0), q(3) * x(2, 0) * x(2, 0) * x(2, 1) * x(2, 1));
  EXPECT_EQ(p.laplacian(), q(6) * x(2, 0) * x(2, 1) * x(2, 1) + q(2) * x(2, 0) * x(2, 0) * x(2, 0));
}

TEST(Polynomial, HeatSemigroupInverts) {
  P p = x(3, 0) * x(3, 0) * x(3, 0) * x(3, 0) * x(3, 1) + q(1, 3) * x(3, 2) * x(3, 2) - q(2) * x(3, 1);
  EXPECT_EQ(heat_half(inverse_heat_half(p)), p);
  EXPECT_EQ(inverse_heat_half(heat_half(p)), p);
  // e^{-Delta/2} x^4 = x^4 - 6 x^2 + 3
  P x4 = x(1, 0) * x(1, 0) * x(1, 0) * x(1, 0);
  EXPECT_EQ(heat_half(x4), x4 - q(6) * x(1, 0) * x(1, 0) + P::constant(1, q(3)));
}

TEST(Polynomial, FischerOrthogonalityOfMonomials) {
  for (const auto& a : monomials_up_to(2, 5))
    for (const auto& b : monomials_up_to(2, 5)) {
      CRational v = fischer(P::monomial(a), P::monomial(b));
      EXPECT_EQ(v, a == b ? CRational(a.factorial()) : CRational()) << to_literal(P::monomial(a));
    }
}

TEST(Polynomial, SubstituteByMatrix) {
  Matrix<Rational> swap(2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  P p = x(2, 0) * x(2, 0) * x(2, 1);
  EXPECT_EQ(p.substitute(swap), x(2, 1) * x(2, 1) * x(2, 0));
  Matrix<Rational> shear = Matrix<Rational>::identity(2);
  shear(0, 1) = 1;  // x1 -> x1 + x2
  EXPECT_EQ((x(2, 0) * x(2, 0)).substitute(shear), x(2, 0) * x(2, 0) + q(2) * x(2, 0) * x(2, 1) + x(2, 1) * x(2, 1));
}

TEST(Polynomial, DivideByLinearForm) {
  std::vector<CRational> a{q(1), q(-1)};
  P l = P::linear_form(a);
  P r = x(2, 0) * x(2, 0) + q(1, 2) * x(2, 1) + P::constant(2, q(7));
  P prod = l * r;
  EXPECT_EQ(prod.divide_by_linear(a), r);
  EXPECT_THROW((prod + x(2, 1)).divide_by_linear(a), std::exception);
}

TEST(Polynomial, EvaluationAgreesAcrossScalarTypes) {
  P p = q(3, 2) * x(2, 0) * x(2, 1) * x(2, 1) - q(1, 7) * x(2, 0) + P::constant(2, q(2));
  std::vector<CRational> ze{q(1, 3), q(-2, 5)};
  std::vector<Complex> zc{{1.0 / 3, 0.0}, {-0.4, 0.0}};
  EXPECT_NEAR(std::abs(p.evaluate(ze).to_complex() - p.evaluate_complex(zc)), 0.0, 1e-15);
}

TEST(PolyIO, RoundTrip) {
  for (std::string s : {"x1^2 x2 - 3/2 * x1", "7", "-x2^5 + 1/3 * x1 x2^2 + 2", "(1/2, -1/3) * x1^2 + x2"}) {
    P p = parse_polynomial(s, 2);
    EXPECT_EQ(parse_polynomial(to_literal(p), 2), p) << s << " -> " << to_literal(p);
  }
  EXPECT_THROW(parse_polynomial("x3", 2), std::exception);
  EXPECT_THROW(parse_polynomial("x1 +", 2), std::exception);
}

TEST(Hermite, OneDimensionalClosedForms) {
  // H_3 = (x^3 - 3x) / sqrt(6)
  auto h = hermite(MultiIndex{3});
  EXPECT_EQ(h.scale_squared, Rational(1, 6));
  std::vector<double> z{0.7};
  EXPECT_NEAR(h.evaluate(z), (0.343 - 2.1) / std::sqrt(6.0), 1e-14);
}

TEST(Hermite, TensorStructure) {
  auto h = hermite(MultiIndex{2, 1});
  std::vector<double> z{0.3, -1.2};
  double want = (0.09 - 1) / std::sqrt(2.0) * -1.2;
  EXPECT_NEAR(h.evaluate(z), want, 1e-14);
}

TEST(SphereNorm, KnownSuprema) {
  auto r2 = Polynomial<Rational>::variable(2, 0) * Polynomial<Rational>::variable(2, 0) +
            Polynomial<Rational>::variable(2, 1) * Polynomial<Rational>::variable(2, 1);
  EXPECT_NEAR(sphere_sup_norm(r2).value, 1.0, 1e-12);
  auto xy = Polynomial<Rational>::variable(2, 0) * Polynomial<Rational>::variable(2, 1);
  EXPECT_NEAR(sphere_sup_norm(xy).value, 0.5, 1e-6);
  auto x5 = Polynomial<Rational>::monomial(MultiIndex{5});
  EXPECT_NEAR(sphere_sup_norm(x5).value, 1.0, 1e-12);
  EXPECT_THROW(sphere_sup_norm(r2 + Polynomial<Rational>::variable(2, 0)), std::invalid_argument);
}
