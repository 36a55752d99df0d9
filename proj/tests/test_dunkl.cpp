#include <gtest/gtest.h>

#include "common.hpp"
#include "dunkl/config.hpp"
#include "dunkl/dunkl.hpp"
#include "dunkl/poly_io.hpp"
#include "dunkl/sphere_norm.hpp"

using namespace dunkl;
using namespace testing_util;
using P = Polynomial<CRational>;

namespace {

P random_poly(int d, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  P p(d);
  for (const auto& nu : monomials_up_to(d, n)) p.add_term(nu, CRational(Rational(num(rng), den(rng))));
  return p;
}

bool intertwines(const ExactContext& ctx, const P& p) {
  P v = ctx.intertwine(p);
  for (int j = 0; j < ctx.dimension(); ++j)
    if (ctx.dunkl_j(j, v) != ctx.intertwine(p.derivative(j))) return false;
  return true;
}

}  // namespace

TEST(Intertwiner, MatchesConstraintOracleOnB2) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"1"}})");
  ctx.prepare(6);
  oracle::Intertwiner ref(oracle::b2(oracle::Q(1, 2), oracle::Q(1)), 6);
  for (const auto& nu : monomials_up_to(2, 6)) {
    oracle::Exp e{nu[0], nu[1]};
    EXPECT_EQ(to_oracle(ctx.intertwine_monomial(nu)), ref.image(e)) << to_literal(P::monomial(nu));
  }
}

TEST(Intertwiner, MatchesConstraintOracleOnA2) {
  auto ctx = exact_context(R"({"family":"A","d":3,"k":"3/2"})");
  ctx.prepare(4);
  oracle::Intertwiner ref(oracle::a2(oracle::Q(3, 2)), 4);
  for (const auto& nu : monomials_up_to(3, 4)) {
    oracle::Exp e{nu[0], nu[1], nu[2]};
    EXPECT_EQ(to_oracle(ctx.intertwine_monomial(nu)), ref.image(e));
  }
}

TEST(Intertwiner, RankOneClosedForm) {
  for (auto k : {"0", "1/2", "1", "3/2", "7/3"}) {
    auto ctx = exact_context(std::string(R"({"family":"Z2","d":1,"k":")") + k + "\"}");
    ctx.prepare(10);
    for (int n = 0; n <= 10; ++n) {
      P v = ctx.intertwine_monomial(MultiIndex{n});
      EXPECT_EQ(v, P::monomial(MultiIndex{n}, CRational(oracle::rank_one_coefficient(n, parse_rational(k)))))
          << "k = " << k << ", n = " << n;
    }
  }
}

TEST(Intertwiner, UnitAndDegreePreservation) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/3","long":"2"}})");
  ctx.prepare(5);
  EXPECT_EQ(ctx.intertwine(P::constant(2, CRational(1))), P::constant(2, CRational(1)));
  for (const auto& nu : monomials_up_to(2, 5)) {
    P v = ctx.intertwine_monomial(nu);
    EXPECT_TRUE(v.is_homogeneous());
    EXPECT_EQ(v.degree(), nu.degree());
  }
}

TEST(Intertwiner, InverseRoundTrip) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  P p = random_poly(2, 6, 3);
  ctx.prepare(6);
  EXPECT_EQ(ctx.intertwine_inverse(ctx.intertwine(p)), p);
  EXPECT_EQ(ctx.intertwine(ctx.intertwine_inverse(p)), p);
}

TEST(Intertwiner, ExpansionAgreesWithRecursion) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"1"}})");
  ctx.prepare(5);
  std::vector<CRational> x{CRational(Rational(2, 3)), CRational(Rational(-1, 5))};
  for (const auto& nu : monomials_up_to(2, 5)) {
    P m = P::monomial(nu);
    EXPECT_EQ(ctx.intertwine_by_expansion(m, x), ctx.intertwine(m).evaluate(x));
  }
}

TEST(Intertwiner, ComplexMultiplicity) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":{"re":"1/2","im":"1"},"long":"1"}})");
  auto conj = exact_context(R"({"family":"B","d":2,"k":{"short":{"re":"1/2","im":"-1"},"long":"1"}})");
  ctx.prepare(5);
  conj.prepare(5);
  P p = random_poly(2, 5, 11);
  EXPECT_TRUE(intertwines(ctx, p));
  P a = ctx.intertwine(p), b = conj.intertwine(p);
  for (const auto& [nu, c] : a.terms()) EXPECT_EQ(c.conj(), b.coeff(nu));
}

TEST(Intertwiner, FloatingDihedral) {
  auto ctx = float_context(R"({"family":"I2","m":5,"k":"0.75"})");
  ctx.prepare(6);
  for (const auto& nu : monomials_up_to(2, 6)) {
    auto p = Polynomial<Complex>::monomial(nu);
    auto v = ctx.intertwine(p);
    for (int j = 0; j < 2; ++j) {
      auto diff = ctx.dunkl_j(j, v) - ctx.intertwine(p.derivative(j));
      for (const auto& [mu, c] : diff.terms()) EXPECT_LT(std::abs(c), 1e-10);
    }
  }
}

TEST(DunklOperators, Commute) {
  auto ctx = exact_context(R"({"family":"A","d":3,"k":"2/3"})");
  P p = random_poly(3, 4, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_EQ(ctx.dunkl_j(i, ctx.dunkl_j(j, p)), ctx.dunkl_j(j, ctx.dunkl_j(i, p)));
}

TEST(DunklOperators, EulerIdentity) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  for (int n = 1; n <= 5; ++n) {
    P p = random_poly(2, n, 17 + n).homogeneous_part(n);
    EXPECT_EQ(ctx.euler_W(n, p), ctx.euler_W_via_dunkl(n, p));
  }
}

TEST(HOperator, InvertsW) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"1"}})");
  ctx.prepare(8);
  for (int n = 1; n <= 8; ++n) {
    auto prod = ctx.W_on_basis(n) * ctx.H(n).on_basis;
    auto id = Matrix<CRational>::identity(prod.n);
    EXPECT_TRUE(prod.a == id.a) << "n = " << n;
    EXPECT_FALSE(ctx.H(n).fallback());
  }
}

TEST(HOperator, RankOneLambdaOne) {
  for (auto k : {"1/2", "1", "3/2", "5/7"}) {
    auto ctx = exact_context(std::string(R"({"family":"Z2","d":1,"k":")") + k + "\"}");
    ctx.prepare(1);
    Rational k0 = parse_rational(k);
    const auto& lam = ctx.H(1).lambda->coefficients;
    const int e = ctx.group().identity_index(), s = 1 - e;
    EXPECT_EQ(lam[e], CRational((1 + k0) / (1 + 2 * k0)));
    EXPECT_EQ(lam[s], CRational(k0 / (1 + 2 * k0)));
  }
}

TEST(HOperator, MatrixRouteAgrees) {
  auto a = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  auto b = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  b.set_force_matrix_route(true);
  a.prepare(6);
  b.prepare(6);
  for (const auto& nu : monomials_up_to(2, 6)) EXPECT_EQ(a.intertwine_monomial(nu), b.intertwine_monomial(nu));
  EXPECT_TRUE(b.H(3).fallback());
}

TEST(HOperator, FallbackWhenGroupAlgebraIsSingular) {
  // k0 = -1 on Z2^1: the group-algebra system is singular at even n, W_n = n on P_n.
  auto ctx = exact_context(R"({"family":"Z2","d":1,"k":"-1"})");
  ctx.prepare(6);
  EXPECT_TRUE(ctx.H(2).fallback());
  EXPECT_FALSE(ctx.H(1).fallback());
  P p = random_poly(1, 6, 2);
  EXPECT_TRUE(intertwines(ctx, p));
}

TEST(HOperator, SingularParameterReportsDegree) {
  auto ctx = exact_context(R"({"family":"Z2","d":1,"k":"-1/2"})");
  try {
    ctx.prepare(4);
    FAIL() << "expected NotInMStar";
  } catch (const NotInMStar& e) {
    EXPECT_EQ(e.degree(), 1);
  }
  auto ctx3 = exact_context(R"({"family":"Z2","d":1,"k":"-3/2"})");
  try {
    ctx3.prepare(4);
    FAIL() << "expected NotInMStar";
  } catch (const NotInMStar& e) {
    EXPECT_EQ(e.degree(), 3);
  }
}

TEST(HOperator, PresetLambdaFromCache) {
  auto cfg = config(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  auto a = build_context<CRational, Rational>(cfg);
  a.prepare(6);
  auto cache = nlohmann::json::parse(context_cache(a, cfg).dump());
  auto b = build_context<CRational, Rational>(cfg);
  EXPECT_EQ(apply_context_cache(b, cache), 6);
  b.prepare(6);
  for (int n = 1; n <= 6; ++n) EXPECT_TRUE(b.H_is_inverse(n));
  for (const auto& nu : monomials_up_to(2, 6)) EXPECT_EQ(a.intertwine_monomial(nu), b.intertwine_monomial(nu));

  GroupAlgebraElement<CRational> wrong{std::vector<CRational>(3)};
  auto c = build_context<CRational, Rational>(cfg);
  EXPECT_THROW(c.preset_lambda(1, wrong), std::invalid_argument);
}

TEST(DeltaEstimate, TableBoundedByDeltaHat) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  auto est = ctx.estimate_delta(14);
  ASSERT_EQ(est.table.size(), 14u);
  double mx = 0;
  for (auto [n, v] : est.table) {
    EXPECT_LE(v, est.delta_hat);
    mx = std::max(mx, v);
  }
  EXPECT_EQ(mx, est.delta_hat);
  EXPECT_GT(est.delta_hat, 0.5);
  EXPECT_LT(est.delta_hat, 1.0);
}

TEST(DeltaEstimate, RankOneIdentityCoefficient) {
  // n lambda_n(id) = (n + k) / (n + 2k) at odd n for Z2^1
  auto ctx = exact_context(R"({"family":"Z2","d":1,"k":"1/2"})");
  ctx.prepare(9);
  const int e = ctx.group().identity_index();
  for (int n = 1; n <= 9; n += 2)
    EXPECT_EQ(CRational(n) * ctx.H(n).lambda->coefficients[e], CRational(Rational(2 * n + 1, 2 * n + 2)));
}

// |V_k p(x)| <= (delta |G| |x|)^n sup_{|u|=1}|p(u)| for p in P_n.
TEST(IntertwinerBound, HoldsWithoutFactorial) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  auto est = ctx.estimate_delta(8);
  auto pts = random_ball(2, 20, 1.5, 9);
  for (int n = 1; n <= 8; ++n)
    for (unsigned s = 0; s < 3; ++s) {
      P p = random_poly(2, n, 100 * n + s).homogeneous_part(n);
      double sup = sphere_sup_norm(p).value * 1.05;
      P v = ctx.intertwine(p);
      for (const auto& x : pts) {
        std::vector<Complex> xc(x.begin(), x.end());
        double lhs = std::abs(v.evaluate_complex(xc));
        double rhs = std::pow(est.delta_hat * 8 * std::hypot(x[0], x[1]), n) * sup;
        EXPECT_LE(lhs, rhs) << "n = " << n;
      }
    }
}

TEST(IntertwinerBound, FactorialFormFailsAtRankOne) {
  // k = 0 on Z2^1: V = id, delta = 1, |G| = 2.  p = x^5 at x = 1 gives 1 > 2^5 / 5!.
  auto ctx = exact_context(R"({"family":"Z2","d":1,"k":"0"})");
  auto est = ctx.estimate_delta(5);
  EXPECT_DOUBLE_EQ(est.delta_hat, 1.0);
  P p = P::monomial(MultiIndex{5});
  std::vector<CRational> one{CRational(1)};
  double lhs = std::abs(ctx.intertwine(p).evaluate(one).to_complex());
  double sup = sphere_sup_norm(p).value;
  EXPECT_DOUBLE_EQ(lhs, 1.0);
  EXPECT_LE(lhs, std::pow(2.0, 5) * sup);
  EXPECT_GT(lhs, std::pow(2.0, 5) / 120.0 * sup);
}
