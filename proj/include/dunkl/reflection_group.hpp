// Finite reflection groups generated by a positive system, their action on
// points and polynomials, and G-invariant multiplicity functions.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/polynomial.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

enum class ArithmeticMode { Exact, Floating };

inline constexpr int kDefaultGroupCap = 4096;

/// Thrown when closure does not terminate below the element cap.
class GroupClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class R>
class ReflectionGroup {
 public:
  int dimension() const { return dim_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int identity_index() const { return identity_; }
  ArithmeticMode mode() const { return FieldTraits<R>::exact ? ArithmeticMode::Exact : ArithmeticMode::Floating; }

  const Matrix<R>& element(int g) const { return elements_.at(g); }
  const std::vector<Matrix<R>>& elements() const { return elements_; }

  /// Index of element(g) * element(h) (matrix product).
  int multiply(int g, int h) const { return cayley_[static_cast<std::size_t>(g) * order() + h]; }
  int inverse(int g) const { return inverse_[g]; }

  /// Index of the reflection sigma_alpha for the i-th positive root.
  int reflection_index(int i) const { return reflections_.at(i); }
  const std::vector<int>& reflection_indices() const { return reflections_; }

  std::optional<int> find(const Matrix<R>& m) const {
    auto it = index_.find(key(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Vec<R> apply(int g, const Vec<R>& x) const {
    const auto& m = elements_.at(g);
    Vec<R> r(dim_, R(0));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r[i] += m(i, j) * x[j];
    return r;
  }

  /// (L_g p)(x) = p(g x).  With this convention L_g L_h = L_{h g}, i.e.
  /// act(g, act(h, p)) == act(multiply(h, g), p).
  template <class T>
  Polynomial<T> act(int g, const Polynomial<T>& p) const {
    if (p.dim() != dim_) throw std::invalid_argument("polynomial dimension mismatch");
    return p.substitute(elements_.at(g));
  }

  template <class Rr>
  friend ReflectionGroup<Rr> generate_group(const PositiveSystem<Rr>& ps, int cap);

 private:
  using Key = std::vector<long long>;

  // Exact mode keys by the rational entries themselves; floating mode by
  // entries rounded to 1e-10.
  struct ExactLess {
    bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
      for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
      }
      return false;
    }
  };
  using KeyType = std::conditional_t<FieldTraits<R>::exact, std::vector<Rational>, Key>;
  using KeyLess = std::conditional_t<FieldTraits<R>::exact, ExactLess, std::less<Key>>;

  static KeyType key(const Matrix<R>& m) {
    if constexpr (FieldTraits<R>::exact) {
      return m.a;
    } else {
      Key k;
      for (double v : m.a) k.push_back(std::llround(v * 1e10));
      return k;
    }
  }

  int dim_ = 0;
  int identity_ = 0;
  std::vector<Matrix<R>> elements_;
  std::vector<int> cayley_;
  std::vector<int> inverse_;
  std::vector<int> reflections_;
  std::map<KeyType, int, KeyLess> index_;
};

/// Matrix of sigma_alpha: I - 2 alpha alpha^T / |alpha|^2.
template <class R>
Matrix<R> reflection_matrix(const Vec<R>& alpha) {
  int d = static_cast<int>(alpha.size());
  R n2 = dot(alpha, alpha);
  if (FieldTraits<R>::is_zero(n2)) throw std::invalid_argument("cannot reflect in the zero root");
  Matrix<R> m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = (i == j ? R(1) : R(0)) - R(2) * alpha[i] * alpha[j] / n2;
  return m;
}

/// Closure of {sigma_alpha : alpha in R_+} under composition, with Cayley table.
template <class R>
ReflectionGroup<R> generate_group(const PositiveSystem<R>& ps, int cap = kDefaultGroupCap) {
  ReflectionGroup<R> g;
  const int d = ps.base.dimension;
  g.dim_ = d;

  auto insert = [&](Matrix<R> m) -> std::pair<int, bool> {
    if constexpr (!FieldTraits<R>::exact) {
      for (auto& v : m.a)
        if (std::abs(v) < 1e-14) v = 0.0;
    }
    auto k = ReflectionGroup<R>::key(m);
    auto it = g.index_.find(k);
    if (it != g.index_.end()) return {it->second, false};
    int idx = static_cast<int>(g.elements_.size());
    if (idx >= cap) throw GroupClosureError("not a finite reflection group at this tolerance (more than " +
                                             std::to_string(cap) + " elements)");
    g.index_.emplace(std::move(k), idx);
    g.elements_.push_back(std::move(m));
    return {idx, true};
  };

  insert(Matrix<R>::identity(d));
  g.identity_ = 0;
  std::vector<Matrix<R>> gens;
  for (int i = 0; i < ps.size(); ++i) {
    gens.push_back(reflection_matrix(ps.root(i)));
    g.reflections_.push_back(insert(gens.back()).first);
  }
  for (std::size_t frontier = 0; frontier < g.elements_.size(); ++frontier)
    for (const auto& s : gens) insert(g.elements_[frontier] * s);

  const int n = g.order();
  g.cayley_.assign(static_cast<std::size_t>(n) * n, -1);
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto [idx, fresh] = insert(g.elements_[a] * g.elements_[b]);
      if (fresh) throw GroupClosureError("group closure is not stable under multiplication");
      g.cayley_[static_cast<std::size_t>(a) * n + b] = idx;
      if (idx == g.identity_) g.inverse_[a] = b;
    }

  for (int a = 0; a < n; ++a) {
    if (g.inverse_[a] < 0) throw GroupClosureError("element without inverse");
    // orthogonality g^T g = I
    Matrix<R> gtg = g.elements_[a].transpose() * g.elements_[a];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!FieldTraits<R>::near(gtg(i, j), R(i == j ? 1 : 0), 1e-12))
          throw GroupClosureError("generated element is not orthogonal");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Root orbits and multiplicity functions

struct RootOrbits {
  std::vector<int> orbit_of_root;               ///< orbit id per root index
  std::vector<std::vector<int>> members;        ///< root indices per orbit, ordered by first occurrence
  std::vector<std::string> names;
};

template <class R>
RootOrbits root_orbits(const ReflectionGroup<R>& G, const RootSystem<R>& rs) {
  RootOrbits o;
  const int nr = static_cast<int>(rs.roots.size());
  o.orbit_of_root.assign(nr, -1);
  for (int i = 0; i < nr; ++i) {
    if (o.orbit_of_root[i] >= 0) continue;
    int id = static_cast<int>(o.members.size());
    o.members.emplace_back();
    for (int g = 0; g < G.order(); ++g) {
      auto j = rs.find(G.apply(g, rs.roots[i]), 1e-9);
      if (!j) throw std::logic_error("group does not preserve the root system");
      if (o.orbit_of_root[*j] < 0) {
        o.orbit_of_root[*j] = id;
        o.members[id].push_back(*j);
      }
    }
    std::sort(o.members[id].begin(), o.members[id].end());
  }
  for (std::size_t id = 0; id < o.members.size(); ++id) {
    std::string name = "orbit" + std::to_string(id);
    const auto& r = rs.roots[o.members[id].front()];
    double n2 = FieldTraits<R>::to_double(dot(r, r));
    if (rs.family == Family::B && rs.dimension >= 2) name = n2 > 1.5 ? "long" : "short";
    if (rs.family == Family::I2 && rs.parameter == 4 && FieldTraits<R>::exact) name = n2 > 1.5 ? "long" : "short";
    if (rs.family == Family::Z2)
      for (int i = 0; i < rs.dimension; ++i)
        if (!FieldTraits<R>::is_zero(r[i])) name = "e" + std::to_string(i + 1);
    o.names.push_back(name);
  }
  return o;
}

/// k on the positive roots plus gamma = sum_{alpha in R_+} k(alpha).
template <class T>
struct MultiplicityFunction {
  std::vector<T> positive_values;  ///< k(alpha) for each positive root, in PositiveSystem order
  std::vector<T> orbit_values;     ///< k per root orbit
  T gamma{};

  bool is_real_nonnegative() const {
    for (const auto& v : orbit_values) {
      Complex c = ScalarTraits<T>::to_complex(v);
      if (c.imag() != 0.0 || c.real() < 0.0) return false;
    }
    return true;
  }
  bool is_real() const {
    for (const auto& v : orbit_values)
      if (ScalarTraits<T>::to_complex(v).imag() != 0.0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& v : orbit_values)
      if (!ScalarTraits<T>::is_zero(v)) return false;
    return true;
  }
};

class InvalidMultiplicity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Validates raw per-root values (indexed like ps.base.roots) for G-invariance
/// and computes gamma.
template <class T, class R>
MultiplicityFunction<T> validate_multiplicity(const ReflectionGroup<R>& G, const PositiveSystem<R>& ps,
                                              const std::vector<T>& per_root) {
  if (per_root.size() != ps.base.roots.size())
    throw InvalidMultiplicity("a multiplicity value is required for every root");
  auto orbits = root_orbits(G, ps.base);
  MultiplicityFunction<T> k;
  for (std::size_t id = 0; id < orbits.members.size(); ++id) {
    const T& first = per_root[orbits.members[id].front()];
    for (int r : orbits.members[id]) {
      bool same;
      if constexpr (ScalarTraits<T>::exact)
        same = per_root[r] == first;
      else
        same = std::abs(ScalarTraits<T>::to_complex(per_root[r] - first)) <= 1e-12;
      if (!same) throw InvalidMultiplicity("multiplicity is not constant on root orbit '" + orbits.names[id] + "'");
    }
    k.orbit_values.push_back(first);
  }
  k.gamma = ScalarTraits<T>::zero();
  for (int i : ps.positives) {
    k.positive_values.push_back(per_root[i]);
    k.gamma += per_root[i];
  }
  return k;
}

/// Multiplicity from one value per orbit (orbit order of root_orbits).
template <class T, class R>
MultiplicityFunction<T> multiplicity_from_orbits(const ReflectionGroup<R>& G, const PositiveSystem<R>& ps,
                                                 const std::vector<T>& orbit_values) {
  auto orbits = root_orbits(G, ps.base);
  if (orbit_values.size() != orbits.members.size())
    throw InvalidMultiplicity("expected " + std::to_string(orbits.members.size()) + " orbit values, got " +
                              std::to_string(orbit_values.size()));
  std::vector<T> per_root(ps.base.roots.size());
  for (std::size_t r = 0; r < per_root.size(); ++r) per_root[r] = orbit_values[orbits.orbit_of_root[r]];
  return validate_multiplicity(G, ps, per_root);
}

}  // namespace dunkl
