#include <gtest/gtest.h>

#include <set>

#include "common.hpp"
#include "dunkl/reflection_group.hpp"
#include "dunkl/root_system.hpp"

using namespace dunkl;
using namespace testing_util;

namespace {

template <class R>
ReflectionGroup<R> group_of(Family f, int n) {
  return generate_group(select_positive(build_root_system<R>(f, n)));
}

template <class R>
bool matrices_equal(const Matrix<R>& a, const Matrix<R>& b) {
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if constexpr (std::is_same_v<R, Rational>) {
      if (a.a[i] != b.a[i]) return false;
    } else if (std::abs(a.a[i] - b.a[i]) > 1e-10) {
      return false;
    }
  }
  return true;
}

template <class R>
Matrix<R> product(const Matrix<R>& a, const Matrix<R>& b) {
  Matrix<R> r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      R s = R(0);
      for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

}  // namespace

TEST(GroupOrder, ClassicalFamilies) {
  EXPECT_EQ(group_of<Rational>(Family::Z2, 1).order(), 2);
  EXPECT_EQ(group_of<Rational>(Family::Z2, 2).order(), 4);
  EXPECT_EQ(group_of<Rational>(Family::Z2, 3).order(), 8);
  EXPECT_EQ(group_of<Rational>(Family::A, 3).order(), 6);
  EXPECT_EQ(group_of<Rational>(Family::A, 4).order(), 24);
  EXPECT_EQ(group_of<Rational>(Family::B, 2).order(), 8);
  EXPECT_EQ(group_of<Rational>(Family::B, 3).order(), 48);
  EXPECT_EQ(group_of<Rational>(Family::D, 3).order(), 24);
  EXPECT_EQ(group_of<Rational>(Family::D, 4).order(), 192);
}

TEST(GroupOrder, Dihedral) {
  EXPECT_EQ(group_of<Rational>(Family::I2, 4).order(), 8);
  for (int m : {3, 5, 6, 7}) EXPECT_EQ(group_of<double>(Family::I2, m).order(), 2 * m) << "m = " << m;
  EXPECT_THROW(build_root_system<Rational>(Family::I2, 5), std::invalid_argument);
}

TEST(GroupStructure, CayleyTableAndInverses) {
  auto G = group_of<Rational>(Family::B, 2);
  const int e = G.identity_index();
  for (int g = 0; g < G.order(); ++g) {
    EXPECT_EQ(G.multiply(g, G.inverse(g)), e);
    for (int h = 0; h < G.order(); ++h) {
      auto gh = product(G.element(g), G.element(h));
      EXPECT_TRUE(matrices_equal(gh, G.element(G.multiply(g, h))));
    }
  }
}

TEST(GroupStructure, FloatingDihedralClosure) {
  auto G = group_of<double>(Family::I2, 5);
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      EXPECT_TRUE(matrices_equal(product(G.element(g), G.element(h)), G.element(G.multiply(g, h))));
}

TEST(Reflections, InvolutionsNegatingTheirRoot) {
  auto rs = build_root_system<Rational>(Family::B, 3);
  for (const auto& a : rs.roots) {
    auto m = reflection_matrix(a);
    EXPECT_TRUE(matrices_equal(product(m, m), Matrix<Rational>::identity(3)));
    auto r = reflect(a, a);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(r[i], -a[i]);
  }
}

TEST(PositiveSystem, HalfOfTheRootsOnePerPair) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 2}, {Family::D, 4}, {Family::Z2, 3}}) {
    auto rs = build_root_system<Rational>(f, n);
    auto ps = select_positive(rs);
    EXPECT_EQ(2 * ps.size(), static_cast<int>(rs.roots.size()));
    std::set<int> seen(ps.positives.begin(), ps.positives.end());
    for (int i : ps.positives) {
      Vec<Rational> neg = rs.roots[i];
      for (auto& v : neg) v = -v;
      EXPECT_EQ(seen.count(*rs.find(neg)), 0u);
    }
  }
}

TEST(PositiveSystem, ReflectionIndicesMatchPositiveRoots) {
  auto ps = select_positive(build_root_system<Rational>(Family::B, 2));
  auto G = generate_group(ps);
  for (int i = 0; i < ps.size(); ++i)
    EXPECT_TRUE(matrices_equal(G.element(G.reflection_index(i)), reflection_matrix(ps.root(i))));
}

TEST(RootOrbits, NamesAndSizes) {
  auto ps = select_positive(build_root_system<Rational>(Family::B, 2));
  auto G = generate_group(ps);
  auto o = root_orbits(G, ps.base);
  ASSERT_EQ(o.members.size(), 2u);
  std::set<std::string> names(o.names.begin(), o.names.end());
  EXPECT_TRUE(names.count("short") && names.count("long"));
  EXPECT_EQ(o.members[0].size(), 4u);

  auto psa = select_positive(build_root_system<Rational>(Family::A, 3));
  EXPECT_EQ(root_orbits(generate_group(psa), psa.base).members.size(), 1u);

  auto psz = select_positive(build_root_system<Rational>(Family::Z2, 2));
  auto oz = root_orbits(generate_group(psz), psz.base);
  EXPECT_EQ(oz.names, (std::vector<std::string>{"e1", "e2"}));
}

TEST(Action, CompositionConvention) {
  auto G = group_of<Rational>(Family::B, 2);
  auto p = Polynomial<CRational>::variable(2, 0) * Polynomial<CRational>::variable(2, 0) *
               Polynomial<CRational>::variable(2, 1) +
           Polynomial<CRational>::variable(2, 1);
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) EXPECT_EQ(G.act(g, G.act(h, p)), G.act(G.multiply(h, g), p));
}

TEST(Multiplicity, RejectsNonInvariantValues) {
  auto ps = select_positive(build_root_system<Rational>(Family::B, 2));
  auto G = generate_group(ps);
  std::vector<CRational> per_root(ps.base.roots.size(), CRational(1));
  per_root[0] = CRational(2);
  EXPECT_THROW(validate_multiplicity(G, ps, per_root), InvalidMultiplicity);
}

TEST(Multiplicity, GammaIsSumOverPositiveRoots) {
  auto ctx = exact_context(R"({"family":"B","d":2,"k":{"short":"1/2","long":"3/2"}})");
  EXPECT_EQ(ctx.gamma(), CRational(Rational(4)));
}

TEST(CustomRoots, ValidatesClosure) {
  EXPECT_THROW(custom_root_system<Rational>(2, {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}}), std::invalid_argument);
  auto rs = custom_root_system<Rational>(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  EXPECT_EQ(generate_group(select_positive(rs)).order(), 4);
}

TEST(Config, ErrorsAreConfigErrors) {
  EXPECT_THROW(exact_context(R"({"family":"B","d":2,"k":{"shrt":"1"}})"), ConfigError);
  EXPECT_THROW(exact_context(R"({"family":"B","d":2,"k":["1"]})"), ConfigError);
  EXPECT_THROW(exact_context(R"({"family":"Q","d":2})"), ConfigError);
  EXPECT_THROW(exact_context(R"({"family":"B","d":2,"k":"abc"})"), ConfigError);
  EXPECT_THROW(config(R"({"family":"I2"})"), ConfigError);
}

TEST(Config, ScalarForms) {
  EXPECT_EQ(parse_config_scalar<CRational>(nlohmann::json("3/2")), CRational(Rational(3, 2)));
  EXPECT_EQ(parse_config_scalar<CRational>(nlohmann::json(0.25)), CRational(Rational(1, 4)));
  EXPECT_EQ(parse_config_scalar<CRational>(nlohmann::json::parse(R"({"re":"1","im":"-1/3"})")),
            CRational(Rational(1), Rational(-1, 3)));
}

TEST(Config, ExactnessAndDefaults) {
  EXPECT_TRUE(config(R"({"family":"I2","m":4})").exact());
  EXPECT_FALSE(config(R"({"family":"I2","m":5})").exact());
  EXPECT_EQ(config(R"({"family":"B","d":2})").degree, 14);
  EXPECT_EQ(config(R"({"family":"B","d":3})").degree, 10);
  EXPECT_EQ(config(R"({"family":"B","d":4})").degree, 8);
  EXPECT_EQ(config_key(config(R"({"family":"B","d":2,"N":3})")), config_key(config(R"({"family":"B","d":2,"N":9})")));
  EXPECT_NE(config_key(config(R"({"family":"B","d":2})")), config_key(config(R"({"family":"B","d":3})")));
}
