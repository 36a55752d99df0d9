// Root systems, reflections and positive systems.
//
// A root system is templated on its entry field: Rational for the
// crystallographic families (exact layer) or double for dihedral groups with
// irrational entries (floating layer).
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/scalar.hpp"

namespace dunkl {

enum class Family { A, B, D, Z2, I2, Custom };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::Z2: return "Z2";
    case Family::I2: return "I2";
    case Family::Custom: return "custom";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "D") return Family::D;
  if (s == "Z2" || s == "Z2^d" || s == "Z2d") return Family::Z2;
  if (s == "I2" || s == "I2(m)") return Family::I2;
  if (s == "custom") return Family::Custom;
  throw std::invalid_argument("unknown root system family: " + s);
}

/// Equality and hashing conventions of an entry field.
template <class R>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool near(const Rational& a, const Rational& b, double = 0) { return a == b; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static double to_double(const Rational& a) { return a.get_d(); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
  static bool is_zero(double a) { return a == 0.0; }
  static double to_double(double a) { return a; }
};

template <class R>
using Vec = std::vector<R>;

template <class R>
R dot(const Vec<R>& a, const Vec<R>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  R acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class R>
bool near(const Vec<R>& a, const Vec<R>& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!FieldTraits<R>::near(a[i], b[i], tol)) return false;
  return true;
}

/// sigma_alpha(x) = x - 2 <x, alpha> alpha / |alpha|^2
template <class R>
Vec<R> reflect(const Vec<R>& alpha, const Vec<R>& x) {
  R n2 = dot(alpha, alpha);
  if (FieldTraits<R>::is_zero(n2)) throw std::invalid_argument("cannot reflect in the zero root");
  R c = 2 * dot(x, alpha) / n2;
  Vec<R> r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * alpha[i];
  return r;
}

template <class R>
struct RootSystem {
  int dimension = 0;
  std::vector<Vec<R>> roots;
  Family family = Family::Custom;
  int parameter = 0;  ///< d for A/B/D/Z2 (A uses R^d), m for I2(m)

  std::optional<int> find(const Vec<R>& v, double tol = 1e-12) const {
    for (int i = 0; i < static_cast<int>(roots.size()); ++i)
      if (near(roots[i], v, tol)) return i;
    return std::nullopt;
  }

  /// Checks nonzero roots, closure under negation and under every reflection.
  void validate(double tol = 1e-12) const {
    if (dimension < 1) throw std::invalid_argument("root system dimension must be positive");
    if (roots.empty()) throw std::invalid_argument("root system has no roots");
    for (const auto& a : roots) {
      if (static_cast<int>(a.size()) != dimension) throw std::invalid_argument("root of wrong dimension");
      if (FieldTraits<R>::is_zero(dot(a, a))) throw std::invalid_argument("zero vector in root system");
      Vec<R> neg = a;
      for (auto& v : neg) v = -v;
      if (!find(neg, tol)) throw std::invalid_argument("root system not closed under negation");
      for (const auto& b : roots)
        if (!find(reflect(a, b), tol)) throw std::invalid_argument("root system not closed under reflections");
    }
  }
};

template <class R>
struct PositiveSystem {
  RootSystem<R> base;
  Vec<Rational> beta;             ///< exact separating vector (1, eps, eps^2, ...)
  std::vector<int> positives;     ///< indices into base.roots with <alpha, beta> > 0

  int size() const { return static_cast<int>(positives.size()); }
  const Vec<R>& root(int i) const { return base.roots[positives[i]]; }
};

namespace detail {

inline Vec<Rational> unit_rational(int d, int i, long s = 1) {
  Vec<Rational> v(d, 0);
  v[i] = s;
  return v;
}

}  // namespace detail

template <class R>
R field_from_rational(const Rational& r) {
  if constexpr (std::is_same_v<R, Rational>)
    return r;
  else
    return r.get_d();
}

/// Standard root lists.  `n` is d for A (realized in R^d), B, D, Z2 and m for I2(m).
template <class R>
RootSystem<R> build_root_system(Family family, int n) {
  RootSystem<R> rs;
  rs.family = family;
  rs.parameter = n;
  auto push = [&](const Vec<Rational>& v) {
    Vec<R> r;
    for (const auto& x : v) r.push_back(field_from_rational<R>(x));
    rs.roots.push_back(std::move(r));
  };
  switch (family) {
    case Family::Z2:
      if (n < 1) throw std::invalid_argument("Z2^d needs d >= 1");
      rs.dimension = n;
      for (int i = 0; i < n; ++i) {
        push(detail::unit_rational(n, i, 1));
        push(detail::unit_rational(n, i, -1));
      }
      break;
    case Family::A:
      if (n < 2) throw std::invalid_argument("A_{d-1} in R^d needs d >= 2");
      rs.dimension = n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) {
            Vec<Rational> v(n, 0);
            v[i] = 1;
            v[j] = -1;
            push(v);
          }
      break;
    case Family::B:
    case Family::D:
      if (n < 1 || (family == Family::D && n < 2))
        throw std::invalid_argument(family_name(family) + "_d: unsupported dimension " + std::to_string(n));
      rs.dimension = n;
      if (family == Family::B)
        for (int i = 0; i < n; ++i) {
          push(detail::unit_rational(n, i, 1));
          push(detail::unit_rational(n, i, -1));
        }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              Vec<Rational> v(n, 0);
              v[i] = si;
              v[j] = sj;
              push(v);
            }
      break;
    case Family::I2: {
      if (n < 1) throw std::invalid_argument("I2(m) needs m >= 1");
      rs.dimension = 2;
      if (n == 1) {
        push({1, 0});
        push({-1, 0});
      } else if (n == 2) {
        push({1, 0});
        push({-1, 0});
        push({0, 1});
        push({0, -1});
      } else if (n == 4) {
        for (auto v : std::vector<Vec<Rational>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}})
          push(v);
      } else if constexpr (std::is_same_v<R, Rational>) {
        throw std::invalid_argument("I2(" + std::to_string(n) + ") has irrational roots; use the floating layer");
      } else {
        for (int j = 0; j < 2 * n; ++j) {
          double t = std::numbers::pi * j / n;
          rs.roots.push_back({std::cos(t), std::sin(t)});
        }
      }
      break;
    }
    case Family::Custom:
      throw std::invalid_argument("custom root systems are built from an explicit root list");
  }
  return rs;
}

template <class R>
RootSystem<R> custom_root_system(int dim, std::vector<Vec<R>> roots) {
  RootSystem<R> rs;
  rs.dimension = dim;
  rs.roots = std::move(roots);
  rs.family = Family::Custom;
  rs.parameter = dim;
  rs.validate();
  return rs;
}

/// Positive system for beta = (1, eps, eps^2, ...), eps = 1/127 halved until
/// no root is orthogonal to beta.
template <class R>
PositiveSystem<R> select_positive(const RootSystem<R>& rs) {
  Rational eps(1, 127);
  for (int attempt = 0; attempt < 200; ++attempt, eps /= 2) {
    Vec<Rational> beta(rs.dimension);
    Rational pw = 1;
    for (int i = 0; i < rs.dimension; ++i, pw *= eps) beta[i] = pw;
    std::vector<int> pos;
    bool ok = true;
    for (int i = 0; i < static_cast<int>(rs.roots.size()) && ok; ++i) {
      if constexpr (std::is_same_v<R, Rational>) {
        Rational s = dot(rs.roots[i], beta);
        if (sgn(s) == 0) ok = false;
        if (sgn(s) > 0) pos.push_back(i);
      } else {
        double s = 0;
        for (int j = 0; j < rs.dimension; ++j) s += rs.roots[i][j] * beta[j].get_d();
        if (std::abs(s) <= 1e-12) ok = false;
        if (s > 0) pos.push_back(i);
      }
    }
    if (ok) return {rs, beta, pos};
  }
  throw std::logic_error("no separating vector found");  // unreachable for finite root lists
}

}  // namespace dunkl
