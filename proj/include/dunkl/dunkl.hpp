// Dunkl operators and the intertwining operator V_k on polynomials.
//
// V_k is built degree by degree from the Euler-type identity
//   ((n + gamma) - A) V_k p = sum_j x_j V_k(d_j p),   p in P_n,
// so V_k p = H_n(sum_j x_j V_k(d_j p)) with H_n the inverse of
// W_n = (n + gamma) - A on P_n.  H_n is first sought in the group algebra,
// H_n = sum_g lambda_n(g) L_g, by solving ((n + gamma) e - a) * lambda = e in
// the regular representation; when that system is singular W_n is inverted
// directly as a matrix on the monomial basis of P_n.
#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/bounds.hpp"
#include "dunkl/linalg.hpp"
#include "dunkl/polynomial.hpp"
#include "dunkl/reflection_group.hpp"

namespace dunkl {

/// W_n is singular on P_n: the multiplicity is outside M* at this degree.
class NotInMStar : public std::runtime_error {
 public:
  explicit NotInMStar(int degree)
      : std::runtime_error("k is not in M*: W_n is singular on P_n at degree n = " + std::to_string(degree)),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lambda(g) over group element indices.
template <class T>
struct GroupAlgebraElement {
  std::vector<T> coefficients;
};

/// Realized H_n: the P_n matrix always, lambda_n when the group-algebra system was solvable.
template <class T>
struct HData {
  int degree = 0;
  std::vector<MultiIndex> basis;               ///< monomial basis of P_n
  Matrix<T> on_basis;                          ///< H_n in that basis (columns = images)
  std::optional<GroupAlgebraElement<T>> lambda;
  bool fallback() const { return !lambda.has_value(); }
};

struct DeltaEstimate {
  double delta_hat = 0.0;
  int n_max = 0;
  std::vector<std::pair<int, double>> table;  ///< (n, n * max_g |lambda_n(g)|)
  std::vector<int> excluded;                  ///< fallback degrees without lambda_n
};

template <class T, class R>
class DunklContext {
 public:
  using Poly = Polynomial<T>;
  using Traits = ScalarTraits<T>;

  DunklContext(ReflectionGroup<R> group, PositiveSystem<R> positives, MultiplicityFunction<T> k)
      : group_(std::move(group)), ps_(std::move(positives)), k_(std::move(k)) {
    dim_ = ps_.base.dimension;
    for (int i = 0; i < ps_.size(); ++i) {
      std::vector<T> a;
      for (const auto& v : ps_.root(i)) a.push_back(scalar_cast<T>(v));
      roots_.push_back(std::move(a));
    }
    if (static_cast<int>(k_.positive_values.size()) != ps_.size())
      throw std::invalid_argument("multiplicity does not match the positive system");
    vcache_.emplace(MultiIndex(dim_), Poly::constant(dim_, Traits::one()));
  }

  int dimension() const { return dim_; }
  const ReflectionGroup<R>& group() const { return group_; }
  const PositiveSystem<R>& positive_system() const { return ps_; }
  const MultiplicityFunction<T>& multiplicity() const { return k_; }
  const T& gamma() const { return k_.gamma; }

  // -------------------------------------------------------------------------
  // Operators on polynomials

  /// T_xi(k) p = d_xi p + sum_{alpha in R_+} k(alpha) <alpha, xi> (p - p o sigma_alpha) / <alpha, x>
  Poly dunkl_apply(std::span<const T> xi, const Poly& p) const {
    check(p);
    Poly r = p.directional_derivative(xi);
    for (int i = 0; i < ps_.size(); ++i) {
      T w = k_.positive_values[i];
      if (Traits::is_zero(w)) continue;
      T ax = Traits::zero();
      for (int j = 0; j < dim_; ++j) ax += roots_[i][j] * xi[j];
      if (Traits::is_zero(ax)) continue;
      Poly diff = p - group_.act(group_.reflection_index(i), p);
      if (diff.is_zero()) continue;
      r += diff.divide_by_linear(roots_[i]) * (w * ax);
    }
    return r;
  }

  /// T_j = T_{e_j}
  Poly dunkl_j(int j, const Poly& p) const {
    std::vector<T> e(dim_, Traits::zero());
    e.at(j) = Traits::one();
    return dunkl_apply(e, p);
  }

  /// A p = sum_{alpha in R_+} k(alpha) L_{sigma_alpha} p
  Poly operator_A(const Poly& p) const {
    check(p);
    Poly r(dim_);
    for (int i = 0; i < ps_.size(); ++i)
      if (!Traits::is_zero(k_.positive_values[i]))
        r += group_.act(group_.reflection_index(i), p) * k_.positive_values[i];
    return r;
  }

  /// W_n p = (n + gamma) p - A p for homogeneous p of degree n.
  Poly euler_W(int n, const Poly& p) const {
    require_homogeneous(n, p);
    return p * (Traits::from_long(n) + k_.gamma) - operator_A(p);
  }

  /// W_n p computed as sum_j x_j T_j p.
  Poly euler_W_via_dunkl(int n, const Poly& p) const {
    require_homogeneous(n, p);
    Poly r(dim_);
    for (int j = 0; j < dim_; ++j) r += dunkl_j(j, p).times_variable(j);
    return r;
  }

  // -------------------------------------------------------------------------
  // H_n and V_k

  /// Solves for H_n at every degree up to N and fills the V_k table on
  /// monomials of degree <= N.  Idempotent; extends an earlier preparation.
  void prepare(int N) {
    if (N <= prepared_) return;
    for (int n = prepared_ + 1; n <= N; ++n) {
      h_.push_back(solve_H(n));
      const HData<T>& h = h_.back();
      for (const auto& nu : h.basis) {
        Poly q(dim_);
        for (int j = 0; j < dim_; ++j)
          if (nu[j] > 0) q += vcache_.at(nu.minus_unit(j)).times_variable(j) * Traits::from_long(nu[j]);
        vcache_.emplace(nu, apply_on_basis(h, q));
      }
      prepared_ = n;
    }
  }

  int prepared_degree() const { return prepared_; }

  /// Forces the P_n-matrix route for H_n (used to cross-check both routes).
  void set_force_matrix_route(bool v) { force_matrix_ = v; }

  /// H_n for 1 <= n <= prepared_degree().
  const HData<T>& H(int n) const {
    if (n < 1 || n > prepared_) throw std::out_of_range("H_n not prepared for n = " + std::to_string(n));
    return h_[n - 1];
  }

  /// Computes H_n without caching.  Group-algebra route first, P_n matrix fallback.
  HData<T> solve_H(int n) const {
    if (n < 1) throw std::invalid_argument("H_n is defined for n >= 1");
    HData<T> h;
    h.degree = n;
    h.basis = monomials_of_degree(dim_, n);
    const int G = group_.order();
    const T shift = Traits::from_long(n) + k_.gamma;

    if (!force_matrix_) {
      if (auto it = preset_.find(n); it != preset_.end()) {
        h.on_basis = group_algebra_on_basis(it->second.coefficients, h.basis);
        h.lambda = it->second;
        return h;
      }
      // w = (n + gamma) e - sum k(alpha) sigma_alpha;  W_n H_n = sum w(s) lambda(t) L_{ts}
      std::vector<T> w(G, Traits::zero());
      w[group_.identity_index()] += shift;
      for (int i = 0; i < ps_.size(); ++i) w[group_.reflection_index(i)] -= k_.positive_values[i];
      Matrix<T> M(G);
      for (int g = 0; g < G; ++g)
        for (int t = 0; t < G; ++t) M(g, t) = w[group_.multiply(group_.inverse(t), g)];
      if (auto inv = invert(M)) {
        GroupAlgebraElement<T> lam;
        for (int t = 0; t < G; ++t) lam.coefficients.push_back((*inv)(t, group_.identity_index()));
        h.on_basis = group_algebra_on_basis(lam.coefficients, h.basis);
        h.lambda = std::move(lam);
        return h;
      }
    }
    Matrix<T> W = shift_minus_A_on_basis(shift, h.basis);
    auto inv = invert(W);
    if (!inv) throw NotInMStar(n);
    h.on_basis = std::move(*inv);
    return h;
  }

  /// Supplies lambda_n ahead of prepare() (e.g. from a cache); must precede preparation of degree n.
  void preset_lambda(int n, GroupAlgebraElement<T> lam) {
    if (n <= prepared_) throw std::logic_error("degree already prepared");
    if (static_cast<int>(lam.coefficients.size()) != group_.order())
      throw std::invalid_argument("lambda table size does not match |G|");
    preset_[n] = std::move(lam);
  }

  /// W_n H_n = id on the monomial basis of P_n (exact in exact fields).
  bool H_is_inverse(int n, double tol = 1e-10) const {
    Matrix<T> prod = W_on_basis(n) * H(n).on_basis;
    for (int i = 0; i < prod.n; ++i)
      for (int j = 0; j < prod.n; ++j) {
        T want = i == j ? Traits::one() : Traits::zero();
        if constexpr (Traits::exact) {
          if (prod(i, j) != want) return false;
        } else if (std::abs(prod(i, j) - want) > tol) {
          return false;
        }
      }
    return true;
  }

  /// Matrix of W_n on the monomial basis of P_n.
  Matrix<T> W_on_basis(int n) const {
    return shift_minus_A_on_basis(Traits::from_long(n) + k_.gamma, monomials_of_degree(dim_, n));
  }

  /// H_n p for homogeneous p of degree n (prepared degrees only).
  Poly apply_H(int n, const Poly& p) const {
    require_homogeneous(n, p);
    return apply_on_basis(H(n), p);
  }

  /// V_k(x^nu) from the prepared table.
  const Poly& intertwine_monomial(const MultiIndex& nu) const {
    auto it = vcache_.find(nu);
    if (it == vcache_.end())
      throw std::out_of_range("V_k not prepared for degree " + std::to_string(nu.degree()) +
                              " (prepared up to " + std::to_string(prepared_) + ")");
    return it->second;
  }

  /// V_k(p) for deg p <= prepared_degree().
  Poly intertwine(const Poly& p) const {
    check(p);
    Poly r(dim_);
    for (const auto& [nu, c] : p.terms()) r += intertwine_monomial(nu) * c;
    return r;
  }

  /// V_k^{-1}(q), degree by degree.
  Poly intertwine_inverse(const Poly& q) const {
    check(q);
    Poly r(dim_);
    for (int n = 0; n <= q.degree(); ++n) {
      Poly part = q.homogeneous_part(n);
      if (part.is_zero()) continue;
      if (n == 0) {
        r += part;
        continue;
      }
      auto basis = monomials_of_degree(dim_, n);
      Matrix<T> V(static_cast<int>(basis.size()));
      for (int c = 0; c < V.n; ++c) {
        const Poly& img = intertwine_monomial(basis[c]);
        for (int row = 0; row < V.n; ++row) V(row, c) = img.coeff(basis[row]);
      }
      auto inv = invert(V);
      if (!inv) throw std::logic_error("V_k is singular on P_" + std::to_string(n));
      std::vector<T> coords;
      for (const auto& nu : basis) coords.push_back(part.coeff(nu));
      auto sol = inv->apply(coords);
      for (int i = 0; i < V.n; ++i) r.add_term(basis[i], sol[i]);
    }
    return r;
  }

  /// V_k(p)(x) by the product expansion over G^n,
  ///   sum_{g_1..g_n} prod_i lambda_i(g_i) d_{g_1...g_n x} ... d_{g_n x} p,
  /// for homogeneous p.  Exponential in n; a cross-check only.
  T intertwine_by_expansion(const Poly& p, std::span<const T> x) const {
    check(p);
    int n = p.degree();
    if (n <= 0) return p.coeff(MultiIndex(dim_));
    require_homogeneous(n, p);
    std::vector<T> y(x.begin(), x.end());
    return expansion_rec(p, y);
  }

  // -------------------------------------------------------------------------
  // Dunkl kernel

  /// E_n(x, .) as a polynomial in y: sum_{|nu|=n} V_k(x^nu)(x) y^nu / nu!.
  Poly homogeneous_kernel(int n, std::span<const T> x) const {
    if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    Poly r(dim_);
    for (const auto& nu : monomials_of_degree(dim_, n))
      r.add_term(nu, intertwine_monomial(nu).evaluate(x) / Traits::from_rational(nu.factorial()));
    return r;
  }

  /// E_n(x, y) = V_k(<., y>^n)(x) / n!, intertwining the power of the linear form directly.
  T homogeneous_kernel_value(int n, std::span<const T> x, std::span<const T> y) const {
    Poly lf = linear_form_power<T>(y, n);
    return intertwine(lf).evaluate(x) / Traits::from_rational(factorial(n));
  }

  struct KernelValue {
    Complex value;
    double tail_bound = 0.0;       ///< certified given delta_hat
    double last_term = 0.0;        ///< |E_N(x, y)|, a-posteriori indicator
    int degree = 0;
  };

  /// E_k(x, y) truncated where the tail bound sum_{n>N} (dhat |G| |x| |y|)^n / n! drops below tol.
  KernelValue dunkl_kernel(std::span<const Complex> x, std::span<const Complex> y, double tol) const {
    if (!delta_hat_) throw std::logic_error("estimate_delta must run before dunkl_kernel");
    const double t = *delta_hat_ * group_.order() * norm(x) * norm(y);
    int N = 0;
    while (N <= prepared_ && bounds::exp_tail(t, N) >= tol) ++N;
    if (N > prepared_) {
      // largest |x||y| certified at the prepared degree
      double lo = 0.0, hi = norm(x) * norm(y);
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (bounds::exp_tail(*delta_hat_ * group_.order() * mid, prepared_) < tol ? lo : hi) = mid;
      }
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "E_k tolerance %.3g unreachable within prepared degree %d: |x||y| = %.6g, certified up to %.6g",
                    tol, prepared_, norm(x) * norm(y), lo);
      throw TruncationError(buf);
    }
    KernelValue kv;
    kv.degree = N;
    kv.tail_bound = bounds::exp_tail(t, N);
    kv.value = dunkl_kernel_truncated(x, y, N, &kv.last_term);
    return kv;
  }

  /// sum_{n <= N} E_n(x, y) at complex points.
  Complex dunkl_kernel_truncated(std::span<const Complex> x, std::span<const Complex> y, int N,
                                 double* last_term = nullptr) const {
    if (N > prepared_) throw std::out_of_range("degree beyond preparation");
    Complex acc{};
    for (int n = 0; n <= N; ++n) {
      Complex en{};
      for (const auto& nu : monomials_of_degree(dim_, n)) {
        Complex ym{1.0};
        for (int i = 0; i < dim_; ++i) ym *= std::pow(y[i], nu[i]);
        en += intertwine_monomial(nu).evaluate_complex(x) * ym / nu.factorial().get_d();
      }
      acc += en;
      if (n == N && last_term) *last_term = std::abs(en);
    }
    return acc;
  }

  // -------------------------------------------------------------------------
  // Growth constant

  /// dhat = max_{1<=n<=N_max} n max_g |lambda_n(g)| over group-algebra degrees.
  DeltaEstimate estimate_delta(int n_max) {
    prepare(n_max);
    DeltaEstimate est;
    est.n_max = n_max;
    for (int n = 1; n <= n_max; ++n) {
      const auto& h = H(n);
      if (h.fallback()) {
        est.excluded.push_back(n);
        continue;
      }
      double m = 0;
      for (const auto& c : h.lambda->coefficients) m = std::max(m, Traits::magnitude(c));
      est.table.emplace_back(n, n * m);
      est.delta_hat = std::max(est.delta_hat, n * m);
    }
    if (est.table.empty()) throw std::runtime_error("no group-algebra degree available to estimate delta");
    delta_hat_ = est.delta_hat;
    return est;
  }

  std::optional<double> delta_hat() const { return delta_hat_; }
  void set_delta_hat(double v) { delta_hat_ = v; }

  static double norm(std::span<const Complex> v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
  }

 private:
  void check(const Poly& p) const {
    if (p.dim() != dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }
  void require_homogeneous(int n, const Poly& p) const {
    check(p);
    if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != n))
      throw std::invalid_argument("expected a homogeneous polynomial of degree " + std::to_string(n));
  }

  Matrix<T> group_algebra_on_basis(const std::vector<T>& lam, const std::vector<MultiIndex>& basis) const {
    const int m = static_cast<int>(basis.size());
    Matrix<T> out(m);
    for (int g = 0; g < group_.order(); ++g) {
      if (Traits::is_zero(lam[g])) continue;
      add_action(out, g, lam[g], basis);
    }
    return out;
  }

  Matrix<T> shift_minus_A_on_basis(const T& shift, const std::vector<MultiIndex>& basis) const {
    const int m = static_cast<int>(basis.size());
    Matrix<T> out(m);
    for (int i = 0; i < m; ++i) out(i, i) = shift;
    for (int i = 0; i < ps_.size(); ++i)
      if (!Traits::is_zero(k_.positive_values[i]))
        add_action(out, group_.reflection_index(i), -k_.positive_values[i], basis);
    return out;
  }

  // out += coeff * [L_g] in the monomial basis
  void add_action(Matrix<T>& out, int g, const T& coeff, const std::vector<MultiIndex>& basis) const {
    std::map<MultiIndex, int> pos;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) pos.emplace(basis[i], i);
    for (int c = 0; c < static_cast<int>(basis.size()); ++c) {
      Poly img = group_.act(g, Poly::monomial(basis[c]));
      for (const auto& [nu, v] : img.terms()) out(pos.at(nu), c) += coeff * v;
    }
  }

  Poly apply_on_basis(const HData<T>& h, const Poly& p) const {
    std::vector<T> coords;
    coords.reserve(h.basis.size());
    for (const auto& nu : h.basis) coords.push_back(p.coeff(nu));
    auto img = h.on_basis.apply(coords);
    Poly r(dim_);
    for (std::size_t i = 0; i < img.size(); ++i) r.add_term(h.basis[i], img[i]);
    return r;
  }

  T expansion_rec(const Poly& p, const std::vector<T>& y) const {
    int n = p.degree();
    if (n <= 0) return p.is_zero() ? Traits::zero() : p.coeff(MultiIndex(dim_));
    const auto& h = H(n);
    if (h.fallback()) throw std::logic_error("expansion needs lambda_n; degree " + std::to_string(n) + " used the fallback");
    T acc = Traits::zero();
    for (int g = 0; g < group_.order(); ++g) {
      const T& lam = h.lambda->coefficients[g];
      if (Traits::is_zero(lam)) continue;
      const auto& m = group_.element(g);
      std::vector<T> gy(dim_, Traits::zero());
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) gy[i] += scalar_cast<T>(m(i, j)) * y[j];
      acc += lam * expansion_rec(p.directional_derivative(gy), gy);
    }
    return acc;
  }

  ReflectionGroup<R> group_;
  PositiveSystem<R> ps_;
  MultiplicityFunction<T> k_;
  int dim_ = 0;
  std::vector<std::vector<T>> roots_;
  int prepared_ = 0;
  bool force_matrix_ = false;
  std::vector<HData<T>> h_;
  std::map<int, GroupAlgebraElement<T>> preset_;
  std::map<MultiIndex, Poly> vcache_;
  std::optional<double> delta_hat_;
};

/// Exact context over complex rationals.
using ExactContext = DunklContext<CRational, Rational>;
/// Floating context (dihedral groups with irrational entries).
using FloatContext = DunklContext<Complex, double>;

}  // namespace dunkl
