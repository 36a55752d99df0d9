// Sparse multivariate polynomials over a ScalarTraits field.
#pragma once

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dunkl/multi_index.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

/// Dense square matrix, row-major.
template <class T>
struct Matrix {
  int n = 0;
  std::vector<T> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, ScalarTraits<T>::zero()) {}
  static Matrix identity(int size) {
    Matrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  Matrix operator*(const Matrix& o) const {
    Matrix r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (ScalarTraits<T>::is_zero((*this)(i, k))) continue;
        for (int j = 0; j < n; ++j) r(i, j) += (*this)(i, k) * o(k, j);
      }
    return r;
  }
  Matrix transpose() const {
    Matrix r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  std::vector<T> apply(std::span<const T> v) const {
    std::vector<T> r(n, ScalarTraits<T>::zero());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  /// True when every row holds exactly one nonzero entry.
  bool is_monomial() const {
    for (int i = 0; i < n; ++i) {
      int nz = 0;
      for (int j = 0; j < n; ++j) nz += ScalarTraits<T>::is_zero((*this)(i, j)) ? 0 : 1;
      if (nz != 1) return false;
    }
    return true;
  }
};

template <class T>
class Polynomial {
 public:
  using Traits = ScalarTraits<T>;
  using Terms = std::map<MultiIndex, T>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const T& c) {
    Polynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
  }
  static Polynomial variable(int dim, int i) { return monomial(MultiIndex::unit(dim, i)); }
  static Polynomial monomial(const MultiIndex& nu, const T& c = Traits::one()) {
    Polynomial p(nu.dim());
    p.add_term(nu, c);
    return p;
  }
  /// x -> sum_i coeffs[i] x_i
  static Polynomial linear_form(std::span<const T> coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    for (int i = 0; i < p.dim_; ++i) p.add_term(MultiIndex::unit(p.dim_, i), coeffs[i]);
    return p;
  }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of x^nu (zero when absent).
  T coeff(const MultiIndex& nu) const {
    auto it = terms_.find(nu);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  void add_term(const MultiIndex& nu, const T& c) {
    if (nu.dim() != dim_) throw std::invalid_argument("monomial dimension mismatch");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(nu, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
  bool is_homogeneous() const { return terms_.empty() || degree() == min_degree(); }

  Polynomial homogeneous_part(int n) const {
    Polynomial r(dim_);
    for (const auto& [nu, c] : terms_)
      if (nu.degree() == n) r.terms_.emplace(nu, c);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r(dim_);
    for (const auto& [nu, c] : terms_) r.terms_.emplace(nu, -c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [nu, c] : o.terms_) add_term(nu, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [nu, c] : o.terms_) add_term(nu, -c);
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [nu, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dim(b);
    Polynomial r(a.dim_);
    for (const auto& [nu, c] : a.terms_)
      for (const auto& [mu, e] : b.terms_) r.add_term(nu + mu, c * e);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// x_i * p
  Polynomial times_variable(int i) const {
    Polynomial r(dim_);
    for (const auto& [nu, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), nu.plus_unit(i), c);
    return r;
  }

  Polynomial derivative(int i) const {
    Polynomial r(dim_);
    for (const auto& [nu, c] : terms_)
      if (nu[i] > 0) r.add_term(nu.minus_unit(i), c * Traits::from_long(nu[i]));
    return r;
  }

  /// sum_j xi_j d_j p
  Polynomial directional_derivative(std::span<const T> xi) const {
    if (static_cast<int>(xi.size()) != dim_) throw std::invalid_argument("direction dimension mismatch");
    Polynomial r(dim_);
    for (int j = 0; j < dim_; ++j)
      if (!Traits::is_zero(xi[j])) r += derivative(j) * xi[j];
    return r;
  }

  Polynomial laplacian() const {
    Polynomial r(dim_);
    for (const auto& [nu, c] : terms_)
      for (int i = 0; i < dim_; ++i)
        if (nu[i] >= 2) r.add_term(nu.minus_unit(i).minus_unit(i), c * Traits::from_long(long(nu[i]) * (nu[i] - 1)));
    return r;
  }

  /// e^{sign * Delta / 2} p = sum_m sign^m Delta^m p / (2^m m!), a finite sum.
  Polynomial heat(int sign) const {
    Polynomial result = *this;
    Polynomial power = *this;
    T scale = Traits::one();
    for (long m = 1; !power.is_zero(); ++m) {
      power = power.laplacian();
      scale = scale / Traits::from_long(sign < 0 ? -2 * m : 2 * m);
      result += power * scale;
    }
    return result;
  }

  /// Evaluation at a point of the same field.
  T evaluate(std::span<const T> z) const {
    if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    return evaluate_generic<T>(z);
  }

  /// Evaluation at a complex point; coefficients are converted to double precision.
  Complex evaluate_complex(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    return evaluate_converted<Complex>(z);
  }

  double evaluate_real(std::span<const double> z) const
    requires(std::is_same_v<T, double> || std::is_same_v<T, Rational>)
  {
    if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    return evaluate_converted<double>(z);
  }

  /// p(M x) for a d x d matrix with entries convertible to T.
  template <class R>
  Polynomial substitute(const Matrix<R>& m) const {
    if (m.n != dim_) throw std::invalid_argument("matrix dimension mismatch");
    Polynomial r(dim_);
    if (m.is_monomial()) {
      // x_i -> s_i x_{pi(i)}
      std::vector<int> target(dim_);
      std::vector<T> factor(dim_);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          if (!ScalarTraits<R>::is_zero(m(i, j))) {
            target[i] = j;
            factor[i] = scalar_cast<T>(m(i, j));
          }
      for (const auto& [nu, c] : terms_) {
        MultiIndex mu(dim_);
        T coeff = c;
        for (int i = 0; i < dim_; ++i) {
          mu.set(target[i], mu[target[i]] + nu[i]);
          for (int e = 0; e < nu[i]; ++e) coeff *= factor[i];
        }
        r.add_term(mu, coeff);
      }
      return r;
    }
    std::vector<std::vector<Polynomial>> powers(dim_);
    for (int i = 0; i < dim_; ++i) {
      std::vector<T> row(dim_);
      for (int j = 0; j < dim_; ++j) row[j] = scalar_cast<T>(m(i, j));
      powers[i].push_back(constant(dim_, Traits::one()));
      powers[i].push_back(linear_form(row));
    }
    for (const auto& [nu, c] : terms_) {
      Polynomial t = constant(dim_, c);
      for (int i = 0; i < dim_; ++i) {
        while (static_cast<int>(powers[i].size()) <= nu[i]) powers[i].push_back(powers[i].back() * powers[i][1]);
        if (nu[i] > 0) t = t * powers[i][nu[i]];
      }
      r += t;
    }
    return r;
  }

  /// Quotient of p by the linear form sum_i a_i x_i.  Throws std::logic_error
  /// when the division is not exact (beyond `rel_tol` of the input scale in
  /// floating fields).
  Polynomial divide_by_linear(std::span<const T> a, double rel_tol = 1e-9) const {
    int piv = -1;
    double best = 0.0;
    for (int i = 0; i < dim_; ++i) {
      double mag = Traits::magnitude(a[i]);
      if (Traits::exact ? (!Traits::is_zero(a[i])) : (mag > best)) {
        piv = i;
        best = mag;
      }
    }
    if (piv < 0) throw std::invalid_argument("division by the zero linear form");
    double scale = 0.0;
    for (const auto& [nu, c] : terms_) scale = std::max(scale, Traits::magnitude(c));

    Polynomial rem = *this;
    Polynomial quot(dim_);
    Polynomial ell = linear_form(a);
    while (true) {
      const MultiIndex* lead = nullptr;
      for (const auto& [nu, c] : rem.terms_)
        if (nu[piv] > 0 && (lead == nullptr || nu[piv] > (*lead)[piv])) lead = &nu;
      if (lead == nullptr) break;
      MultiIndex mu = lead->minus_unit(piv);
      T c = rem.terms_.at(*lead) / a[piv];
      quot.add_term(mu, c);
      Polynomial step = monomial(mu, c) * ell;
      rem -= step;
      rem.terms_.erase(*lead);  // floating cancellation may leave a residue
    }
    for (const auto& [nu, c] : rem.terms_) {
      if (Traits::exact || Traits::magnitude(c) > rel_tol * std::max(scale, 1.0))
        throw std::logic_error("polynomial is not divisible by the linear form");
    }
    return quot;
  }

  /// Coefficient-wise conversion to another field.
  template <class U, class F>
  Polynomial<U> map(F&& f) const {
    Polynomial<U> r(dim_);
    for (const auto& [nu, c] : terms_) r.add_term(nu, f(c));
    return r;
  }
  template <class U>
  Polynomial<U> cast() const {
    return map<U>([](const T& c) { return scalar_cast<U>(c); });
  }

 private:
  void check_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  template <class U>
  U evaluate_generic(std::span<const U> z) const {
    if (terms_.empty()) return ScalarTraits<U>::zero();
    int deg = degree();
    std::vector<std::vector<U>> pw(dim_);
    for (int i = 0; i < dim_; ++i) {
      pw[i].reserve(deg + 1);
      pw[i].push_back(ScalarTraits<U>::one());
      for (int e = 1; e <= deg; ++e) pw[i].push_back(pw[i].back() * z[i]);
    }
    U acc = ScalarTraits<U>::zero();
    for (const auto& [nu, c] : terms_) {
      U t = c;
      for (int i = 0; i < dim_; ++i)
        if (nu[i] > 0) t *= pw[i][nu[i]];
      acc += t;
    }
    return acc;
  }

  template <class U>
  U evaluate_converted(std::span<const U> z) const {
    if (terms_.empty()) return U{};
    int deg = degree();
    std::vector<std::vector<U>> pw(dim_);
    for (int i = 0; i < dim_; ++i) {
      pw[i].push_back(U{1});
      for (int e = 1; e <= deg; ++e) pw[i].push_back(pw[i].back() * z[i]);
    }
    U acc{};
    for (const auto& [nu, c] : terms_) {
      U t = scalar_cast<U>(c);
      for (int i = 0; i < dim_; ++i)
        if (nu[i] > 0) t *= pw[i][nu[i]];
      acc += t;
    }
    return acc;
  }

  int dim_ = 0;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Free-function surface

template <class T>
Polynomial<T> laplacian(const Polynomial<T>& p) {
  return p.laplacian();
}

/// e^{-Delta/2} p
template <class T>
Polynomial<T> heat_half(const Polynomial<T>& p) {
  return p.heat(-1);
}

/// e^{+Delta/2} p
template <class T>
Polynomial<T> inverse_heat_half(const Polynomial<T>& p) {
  return p.heat(+1);
}

template <class T>
Polynomial<T> directional_derivative(std::span<const T> xi, const Polynomial<T>& p) {
  return p.directional_derivative(xi);
}

/// Fischer form [p, q] = p(d)(q)(0) = sum_nu p_nu q_nu nu!  (bilinear, no conjugation).
template <class T>
T fischer(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("polynomial dimension mismatch");
  T acc = ScalarTraits<T>::zero();
  const auto& small = p.size() <= q.size() ? p : q;
  const auto& large = p.size() <= q.size() ? q : p;
  for (const auto& [nu, c] : small.terms()) {
    auto it = large.terms().find(nu);
    if (it != large.terms().end()) acc += c * it->second * ScalarTraits<T>::from_rational(nu.factorial());
  }
  return acc;
}

/// <x, y>^n as a polynomial in y for a fixed coefficient vector x.
template <class T>
Polynomial<T> linear_form_power(std::span<const T> x, int n) {
  int d = static_cast<int>(x.size());
  Polynomial<T> base = Polynomial<T>::linear_form(x);
  Polynomial<T> r = Polynomial<T>::constant(d, ScalarTraits<T>::one());
  for (int i = 0; i < n; ++i) r = r * base;
  return r;
}

}  // namespace dunkl
