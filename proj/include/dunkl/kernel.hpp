// The kernel L_k(x, y) = sum_n (e^{-Delta/2} E_n(x, .))(y), which represents
// V_k o e^{Delta/2} against d gamma:
//   V_k(p)(x) = int L_k(x, y) (e^{-Delta/2} p)(y) d gamma(y).
//
// Two evaluation paths are kept deliberately separate:
//   series:  build E_n(x, .) as a polynomial in y, apply the heat operator, evaluate;
//   hermite: sum_nu V_k(phi_nu)(x) H_nu(y) with the 1/sqrt(nu!) scales applied per factor.
// The measure mu_x(dz) = e^{-|z|^2/2} L_k(x, z) dz is never stored on its own;
// it is the pair (KernelEvaluator, QuadratureRule).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/bounds.hpp"
#include "dunkl/dunkl.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

struct TailBound {
  int degree = 0;
  double x_norm = 0.0;
  double y_norm = 0.0;
  double value = 0.0;     ///< sum over n > degree of the per-degree heat-image bounds
  double envelope = 0.0;  ///< closed bound on the whole series, for sanity
};

inline double euclidean_norm(std::span<const double> v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

/// L_k^{(N)}(x, .) for one fixed x.
struct KernelSlice {
  std::vector<double> x;
  int degree = 0;
  std::vector<Polynomial<Complex>> terms;  ///< (e^{-Delta/2} E_n(x, .)), n = 0..degree
  Polynomial<Complex> total;               ///< sum of terms
  std::vector<Complex> vk_phi;             ///< V_k(phi_nu)(x), aligned with KernelEvaluator::basis()
};

struct ReconstructionResult {
  Complex quadrature;  ///< Phi_x(p) = int L^{(N)}(x, y) p(y) d gamma(y)
  Complex exact;       ///< V_k(e^{Delta/2} p)(x)
  double residual = 0.0;
  double bound = 0.0;  ///< truncation part of the admissible error
};

struct NormRoutes {
  double series = 0.0;      ///< (sum_{|nu|<=N} |V_k(phi_nu)(x)|^2)^{1/2}
  double quadrature = 0.0;  ///< ||L^{(N)}(x, .)||_{L^2(d gamma)}
  double relative_gap() const { return std::abs(series - quadrature) / std::max(series, 1e-300); }
};

struct ConvolutionResult {
  Complex lhs;  ///< E_k^{(N)}(x, y)
  Complex rhs;  ///< int L^{(N)}(x, y + u) d gamma(u)
  double residual = 0.0;
  double e_tail = 0.0;  ///< tail bound of the E_k series at degree N
};

/// Both sign conventions of the Gaussian image identity.
///   plus:  V_k(e^{-|. + y|^2/2})(x) = e^{-|y|^2/2} L_k(x, y)   (as displayed in the source)
///   minus: V_k(e^{-|. - y|^2/2})(x) = e^{-|y|^2/2} L_k(x, y)
struct SignCheck {
  Complex rhs;
  Complex lhs_plus;
  Complex lhs_minus;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double bound = 0.0;  ///< Taylor remainder + series tail
  std::string validated() const {
    if (residual_minus <= 1e-6 && residual_plus > 1e-6) return "minus";
    if (residual_plus <= 1e-6 && residual_minus > 1e-6) return "plus";
    if (residual_plus <= 1e-6) return "both";
    return "neither";
  }
};

/// Both conventions of the Fourier identity
///   e^{-|y|^2/2} L_k(x, y) = F(e^{-|.|^2/2} E_k(s i x, .))(y),  s = +1 or -1.
struct FourierCheck {
  Complex lhs;
  Complex rhs_plus_ix;
  Complex rhs_minus_ix;
  double residual_plus_ix = 0.0;
  double residual_minus_ix = 0.0;
  std::string validated() const {
    if (residual_plus_ix <= 1e-6 && residual_minus_ix > 1e-6) return "+ix";
    if (residual_minus_ix <= 1e-6 && residual_plus_ix > 1e-6) return "-ix";
    if (residual_plus_ix <= 1e-6) return "both";
    return "neither";
  }
};

/// d_{y_j}(L(x, .) e^{-|.|^2/2})(y) against s T_j^x(L(., y) e^{-|y|^2/2})(x).
struct DerivativeCheck {
  Complex lhs;
  Complex rhs;               ///< T_j^x(...) without sign
  double residual_plus = 0.0;   ///< |lhs - rhs|, the displayed form
  double residual_minus = 0.0;  ///< |lhs + rhs|
};

struct SymmetryReport {
  int checks = 0;
  int failures = 0;
  double max_float_deviation = 0.0;
  std::vector<std::string> messages;
};

struct PositivityReport {
  bool skipped = false;
  std::string reason;
  double min_value = std::numeric_limits<double>::infinity();      ///< min of Re L - tail
  double min_raw = std::numeric_limits<double>::infinity();        ///< min of Re L
  double max_tail = 0.0;
  double max_imag = 0.0;
  std::vector<double> min_x, min_y;
  std::size_t points = 0;
};

struct BoundReport {
  int terms = 0;
  int violations = 0;
  double max_ratio = 0.0;  ///< max over (n, m) of |Delta^m E_n| / bound
};

template <class T, class R>
class KernelEvaluator {
 public:
  using Context = DunklContext<T, R>;
  using Traits = ScalarTraits<T>;
  using CPoly = Polynomial<Complex>;

  /// Prepares ctx to degree N.  delta_hat is taken from ctx, estimated over
  /// degrees <= N when ctx has none yet.
  KernelEvaluator(Context& ctx, int N) : ctx_(&ctx), N_(N), d_(ctx.dimension()) {
    if (N < 0) throw std::invalid_argument("truncation degree must be nonnegative");
    ctx.prepare(N);
    if (!ctx.delta_hat() && N >= 1) ctx.estimate_delta(N);
    basis_ = monomials_up_to(d_, N);
    for (const auto& nu : basis_) {
      vk_float_.push_back(ctx.intertwine_monomial(nu).template cast<Complex>());
      HermiteData h = hermite(nu);
      herm_float_.push_back(h.unscaled.template cast<double>());
      inv_fact_.push_back(h.scale_squared.get_d());
      scale_.push_back(h.scale());
      herm_exact_.push_back(std::move(h));
    }
  }

  int degree() const { return N_; }
  int dimension() const { return d_; }
  const Context& context() const { return *ctx_; }
  Context& context() { return *ctx_; }
  const std::vector<MultiIndex>& basis() const { return basis_; }

  double delta_hat() const { return ctx_->delta_hat().value_or(1.0); }
  /// delta_hat |G|
  double growth() const { return delta_hat() * ctx_->group().order(); }

  TailBound tail_bound(double x_norm, double y_norm, int N) const {
    TailBound t;
    t.degree = N;
    t.x_norm = x_norm;
    t.y_norm = y_norm;
    double a = growth() * x_norm;
    t.value = bounds::heat_series_tail(a, y_norm, d_, N);
    t.envelope = bounds::heat_series_envelope(a, y_norm, d_);
    return t;
  }

  /// Largest |x| with tail_bound(|x|, y_norm, N) < tol (bisection; 0 if none).
  double certified_radius(double y_norm, double tol, int N) const {
    auto ok = [&](double r) { return tail_bound(r, y_norm, N).value < tol; };
    double lo = 0.0, hi = 1.0;
    if (!ok(1e-12)) return 0.0;
    while (ok(hi) && hi < 1e6) {
      lo = hi;
      hi *= 2;
    }
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  // -------------------------------------------------------------------------
  // Evaluation

  KernelSlice slice(std::span<const double> x, int N = -1) const {
    N = resolve(N);
    check_point(x);
    KernelSlice s;
    s.x.assign(x.begin(), x.end());
    s.degree = N;
    std::vector<Complex> xc(x.begin(), x.end());
    std::vector<CPoly> en(N + 1, CPoly(d_));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const int n = basis_[i].degree();
      if (n > N) break;
      Complex v = vk_float_[i].evaluate_complex(xc);
      s.vk_phi.push_back(v * scale_[i]);
      en[n].add_term(basis_[i], v * inv_fact_[i]);
    }
    s.total = CPoly(d_);
    for (int n = 0; n <= N; ++n) {
      s.terms.push_back(en[n].heat(-1));
      s.total += s.terms.back();
    }
    return s;
  }

  Complex series_value(const KernelSlice& s, std::span<const double> y) const {
    check_point(y);
    std::vector<Complex> yc(y.begin(), y.end());
    return s.total.evaluate_complex(yc);
  }

  Complex hermite_value(const KernelSlice& s, std::span<const double> y) const {
    check_point(y);
    Complex acc{};
    for (std::size_t i = 0; i < s.vk_phi.size(); ++i)
      acc += s.vk_phi[i] * (scale_[i] * herm_float_[i].evaluate_real(y));
    return acc;
  }

  struct LkValue {
    Complex value;
    TailBound tail;
    int degree = 0;
    double last_term = 0.0;  ///< |heat image of E_N| at y, a-posteriori indicator
  };

  /// Series path with the smallest degree whose tail bound is below tol.
  LkValue lk_eval(std::span<const double> x, std::span<const double> y, double tol) const {
    const double xn = euclidean_norm(x), yn = euclidean_norm(y);
    int N = 0;
    while (N <= N_ && tail_bound(xn, yn, N).value >= tol) ++N;
    if (N > N_) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "L_k tolerance %.3g unreachable at degree cap %d for |x| = %.6g, |y| = %.6g "
                    "(certified radius %.6g)",
                    tol, N_, xn, yn, certified_radius(yn, tol, N_));
      throw TruncationError(buf);
    }
    KernelSlice s = slice(x, N);
    LkValue r;
    r.degree = N;
    r.tail = tail_bound(xn, yn, N);
    r.value = series_value(s, y);
    std::vector<Complex> yc(y.begin(), y.end());
    r.last_term = std::abs(s.terms.back().evaluate_complex(yc));
    return r;
  }

  Complex lk_eval_truncated(std::span<const double> x, std::span<const double> y, int N = -1) const {
    return series_value(slice(x, N), y);
  }

  Complex lk_eval_hermite(std::span<const double> x, std::span<const double> y, int N = -1) const {
    return hermite_value(slice(x, N), y);
  }

  // -------------------------------------------------------------------------
  // Integrals against d gamma

  Complex lk_mass(std::span<const double> x, const QuadratureRule& rule, int N = -1) const {
    N = resolve(N);
    require_rule(rule, N);
    KernelSlice s = slice(x, N);
    return integrate_poly(s.total, rule);
  }

  /// Phi_x(f) = int L^{(N)}(x, y) f(y) d gamma(y).
  Complex phi_x_apply(std::span<const double> x, const std::function<Complex(std::span<const double>)>& f,
                      const QuadratureRule& rule, int N = -1) const {
    KernelSlice s = slice(x, resolve(N));
    std::vector<Complex> yc(d_);
    return integrate(
        [&](std::span<const double> y) {
          std::copy(y.begin(), y.end(), yc.begin());
          return s.total.evaluate_complex(yc) * f(y);
        },
        rule);
  }

  /// Phi_x(p) against V_k(e^{Delta/2} p)(x).  Degrees n > deg p of the series
  /// integrate to zero against p, so the truncation contributes nothing once
  /// N >= deg p; below that the tail bound is integrated against |p|.
  ReconstructionResult reconstruction_check(std::span<const double> x, const Polynomial<T>& p,
                                            const QuadratureRule& rule, int N = -1) const {
    N = resolve(N);
    if (p.degree() > ctx_->prepared_degree()) throw std::out_of_range("polynomial degree beyond preparation");
    require_rule(rule, N + std::max(p.degree(), 0));
    CPoly pc = p.template cast<Complex>();
    ReconstructionResult r;
    std::vector<Complex> yc(d_);
    r.quadrature = phi_x_apply(
        x,
        [&](std::span<const double> y) {
          std::copy(y.begin(), y.end(), yc.begin());
          return pc.evaluate_complex(yc);
        },
        rule, N);
    std::vector<Complex> xc(x.begin(), x.end());
    r.exact = ctx_->intertwine(inverse_heat_half(p)).evaluate_complex(xc);
    r.residual = std::abs(r.quadrature - r.exact);
    if (N < p.degree()) {
      const double xn = euclidean_norm(x);
      r.bound = integrate(
          [&](std::span<const double> y) {
            std::copy(y.begin(), y.end(), yc.begin());
            return tail_bound(xn, euclidean_norm(y), N).value * std::abs(pc.evaluate_complex(yc));
          },
          rule);
    }
    return r;
  }

  NormRoutes phi_x_norm(std::span<const double> x, const QuadratureRule& rule, int N = -1) const {
    N = resolve(N);
    require_rule(rule, 2 * N);
    KernelSlice s = slice(x, N);
    NormRoutes r;
    double acc = 0;
    for (const auto& v : s.vk_phi) acc += std::norm(v);
    r.series = std::sqrt(acc);
    std::vector<Complex> yc(d_);
    double q = integrate(
        [&](std::span<const double> y) {
          std::copy(y.begin(), y.end(), yc.begin());
          return std::norm(s.total.evaluate_complex(yc));
        },
        rule);
    r.quadrature = std::sqrt(q);
    return r;
  }

  /// E_k^{(N)}(x, y) against int L^{(N)}(x, y + u) d gamma(u); the two agree per degree.
  ConvolutionResult convolution_check(std::span<const double> x, std::span<const double> y,
                                      const QuadratureRule& rule, int N = -1) const {
    N = resolve(N);
    require_rule(rule, N);
    check_point(y);
    KernelSlice s = slice(x, N);
    ConvolutionResult r;
    std::vector<Complex> xc(x.begin(), x.end()), yc(y.begin(), y.end());
    r.lhs = ctx_->dunkl_kernel_truncated(xc, yc, N);
    std::vector<Complex> z(d_);
    r.rhs = integrate(
        [&](std::span<const double> u) {
          for (int j = 0; j < d_; ++j) z[j] = y[j] + u[j];
          return s.total.evaluate_complex(z);
        },
        rule);
    r.residual = std::abs(r.lhs - r.rhs);
    r.e_tail = bounds::exp_tail(growth() * euclidean_norm(x) * euclidean_norm(y), N);
    return r;
  }

  // -------------------------------------------------------------------------
  // Sign conventions

  /// Left side from a Taylor polynomial of the Gaussian (degree between N and
  /// 2N), intertwined exactly; right side e^{-|y|^2/2} L^{(N)}(x, y).
  SignCheck gaussian_image_check(std::span<const double> x, std::span<const double> y, int N = -1) {
    N = resolve(N);
    check_point(x);
    check_point(y);
    const double gy = std::exp(-0.5 * sq(euclidean_norm(y)));
    const double a = growth() * euclidean_norm(x), b = euclidean_norm(y);
    // Taylor degree of the Gaussian: up to 2N, stopping once its remainder is negligible
    int D = N;
    while (D < 2 * N && gy * bounds::heat_series_tail(a, b, 1, D) > 1e-14) ++D;
    ctx_->prepare(D);
    SignCheck r;
    r.rhs = gy * lk_eval_truncated(x, y, N);
    std::vector<Complex> xc(x.begin(), x.end());
    for (int s : {+1, -1}) {
      // e^{-|u + s y|^2/2} = e^{-|y|^2/2} e^{-s<u,y>} e^{-|u|^2/2}
      Polynomial<T> taylor = gaussian_taylor(y, s, D);
      Complex v = gy * ctx_->intertwine(taylor).evaluate_complex(xc);
      (s > 0 ? r.lhs_plus : r.lhs_minus) = v;
    }
    r.residual_plus = std::abs(r.lhs_plus - r.rhs);
    r.residual_minus = std::abs(r.lhs_minus - r.rhs);
    r.bound = gy * (bounds::heat_series_tail(a, b, 1, D) + bounds::heat_series_tail(a, b, d_, N));
    return r;
  }

  FourierCheck fourier_check(std::span<const double> x, std::span<const double> y, const QuadratureRule& rule,
                             int N = -1) const {
    N = resolve(N);
    check_point(x);
    check_point(y);
    FourierCheck r;
    r.lhs = std::exp(-0.5 * sq(euclidean_norm(y))) * lk_eval_truncated(x, y, N);
    std::vector<Complex> xc(x.begin(), x.end());
    for (int s : {+1, -1}) {
      // E^{(N)}(s i x, z) = sum_n (s i)^n E_n(x, z)
      CPoly g(d_);
      Complex unit(0.0, s), pw(1.0);
      int last = -1;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const int n = basis_[i].degree();
        if (n > N) break;
        if (n != last) {
          pw = std::pow(unit, n);
          last = n;
        }
        g.add_term(basis_[i], pw * vk_float_[i].evaluate_complex(xc) * inv_fact_[i]);
      }
      FourierIntegrand in;
      std::vector<Complex> zc(d_);
      in.gaussian_factor = [&](std::span<const double> z) {
        std::copy(z.begin(), z.end(), zc.begin());
        return g.evaluate_complex(zc);
      };
      Complex v = fourier_quadrature(in, y, rule).value;
      (s > 0 ? r.rhs_plus_ix : r.rhs_minus_ix) = v;
    }
    r.residual_plus_ix = std::abs(r.lhs - r.rhs_plus_ix);
    r.residual_minus_ix = std::abs(r.lhs - r.rhs_minus_ix);
    return r;
  }

  /// Exact per term at the (dyadic rational) points x, y.  The left side uses
  /// degrees < N and the right side degrees <= N: T_j^x lowers the x-degree,
  /// and the identity matches term n + 1 on the right with term n on the left.
  DerivativeCheck derivative_relation_check(std::span<const double> x, std::span<const double> y, int j,
                                            int N = -1) const {
    N = resolve(N);
    check_point(x);
    check_point(y);
    if (j < 0 || j >= d_) throw std::invalid_argument("coordinate index out of range");
    auto xe = to_field(x), ye = to_field(y);

    // left: sum_{n<N} (d_j P_n - y_j P_n)(y), P_n = e^{-Delta/2} E_n(x, .)
    Polynomial<T> P(d_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].degree() >= N) break;
      T c = ctx_->intertwine_monomial(basis_[i]).evaluate(xe) * Traits::from_rational(herm_exact_[i].scale_squared);
      P += herm_exact_[i].unscaled.template map<T>([](const Rational& q) { return Traits::from_rational(q); }) * c;
    }
    T lhs = P.derivative(j).evaluate(ye) - ye[j] * P.evaluate(ye);

    // right: T_j applied in x' to Q(x') = sum_{|nu|<=N} V_k(x^nu)(x') (e^{-Delta/2} y^nu)(y) / nu!
    Polynomial<T> Q(d_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].degree() > N) break;
      T h = Traits::from_rational(herm_exact_[i].scale_squared) *
            herm_exact_[i].unscaled.template map<T>([](const Rational& q) { return Traits::from_rational(q); }).evaluate(ye);
      if (Traits::is_zero(h)) continue;
      Q += ctx_->intertwine_monomial(basis_[i]) * h;
    }
    T rhs = ctx_->dunkl_j(j, Q).evaluate(xe);

    const double g = std::exp(-0.5 * sq(euclidean_norm(y)));
    DerivativeCheck r;
    r.lhs = g * Traits::to_complex(lhs);
    r.rhs = g * Traits::to_complex(rhs);
    r.residual_plus = g * std::abs(Traits::to_complex(lhs - rhs));
    r.residual_minus = g * std::abs(Traits::to_complex(lhs + rhs));
    return r;
  }

  // -------------------------------------------------------------------------
  // Structural scans

  /// (e^{-Delta/2} E_n(x, .))(y) in the exact field.
  T term_exact(int n, std::span<const T> x, std::span<const T> y) const {
    T acc = Traits::zero();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].degree() != n) continue;
      T h = herm_exact_[i].unscaled.template map<T>([](const Rational& q) { return Traits::from_rational(q); }).evaluate(y);
      acc += ctx_->intertwine_monomial(basis_[i]).evaluate(x) * h * Traits::from_rational(herm_exact_[i].scale_squared);
    }
    return acc;
  }

  /// E_n(x, y) in the exact field.
  T en_exact(int n, std::span<const T> x, std::span<const T> y) const {
    T acc = Traits::zero();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].degree() != n) continue;
      T ym = Traits::one();
      for (int k = 0; k < d_; ++k)
        for (int e = 0; e < basis_[i][k]; ++e) ym *= y[k];
      acc += ctx_->intertwine_monomial(basis_[i]).evaluate(x) * ym * Traits::from_rational(herm_exact_[i].scale_squared);
    }
    return acc;
  }

  /// L(gx, y) = L(x, g^{-1} y) for every g and L(-x, y) = L(x, -y), per term;
  /// E_n(x, 0) = 0 (n >= 1), E_0 = 1 and E_n(lx, y) = l^n E_n(x, y) = E_n(x, ly).
  SymmetryReport symmetry_scan(std::span<const double> x, std::span<const double> y, double lambda = 1.5,
                               int N = -1) const {
    N = resolve(N);
    SymmetryReport rep;
    auto xe = to_field(x), ye = to_field(y);
    const auto& G = ctx_->group();
    auto fail = [&](const std::string& m) {
      ++rep.failures;
      if (rep.messages.size() < 20) rep.messages.push_back(m);
    };
    auto equal = [](const T& a, const T& b) {
      if constexpr (Traits::exact)
        return a == b;
      else
        return std::abs(Traits::to_complex(a - b)) <= 1e-12 * std::max(1.0, std::abs(Traits::to_complex(a)));
    };
    for (int g = 0; g < G.order(); ++g) {
      auto gx = apply_matrix(G.element(g), xe);
      auto ginv_y = apply_matrix(G.element(G.inverse(g)), ye);
      for (int n = 0; n <= N; ++n) {
        ++rep.checks;
        if (!equal(term_exact(n, gx, ye), term_exact(n, xe, ginv_y)))
          fail("equivariance fails at g = " + std::to_string(g) + ", n = " + std::to_string(n));
      }
    }
    std::vector<T> mx = xe, my = ye;
    for (auto& v : mx) v = -v;
    for (auto& v : my) v = -v;
    std::vector<T> zero(d_, Traits::zero());
    const T lam = Traits::from_double(lambda);
    std::vector<T> lx = xe, ly = ye;
    for (auto& v : lx) v *= lam;
    for (auto& v : ly) v *= lam;
    T lam_n = Traits::one();
    for (int n = 0; n <= N; ++n, lam_n *= lam) {
      rep.checks += 4;
      if (!equal(term_exact(n, mx, ye), term_exact(n, xe, my))) fail("parity fails at n = " + std::to_string(n));
      T e0 = en_exact(n, xe, zero);
      if (!equal(e0, n == 0 ? Traits::one() : Traits::zero())) fail("E_n(x, 0) wrong at n = " + std::to_string(n));
      T en = en_exact(n, xe, ye);
      if (!equal(en_exact(n, lx, ye), lam_n * en)) fail("homogeneity in x fails at n = " + std::to_string(n));
      if (!equal(en_exact(n, xe, ly), lam_n * en)) fail("homogeneity in y fails at n = " + std::to_string(n));
    }
    // floating spot check on the summed kernel
    for (int g = 0; g < G.order(); ++g) {
      auto gx = apply_matrix_double(G.element(g), x);
      auto gy = apply_matrix_double(G.element(G.inverse(g)), y);
      double dev = std::abs(lk_eval_truncated(gx, y, N) - lk_eval_truncated(x, gy, N));
      rep.max_float_deviation = std::max(rep.max_float_deviation, dev);
    }
    return rep;
  }

  /// min over xs x ys of Re L^{(N)} - TailBound; requires real k >= 0.
  PositivityReport positivity_scan(const std::vector<std::vector<double>>& xs,
                                   const std::vector<std::vector<double>>& ys, int N = -1) const {
    N = resolve(N);
    PositivityReport rep;
    if (!ctx_->multiplicity().is_real_nonnegative()) {
      rep.skipped = true;
      rep.reason = "positivity is only asserted for real nonnegative k";
      return rep;
    }
    std::map<std::pair<double, double>, double> tails;
    for (const auto& x : xs) {
      KernelSlice s = slice(x, N);
      const double xn = euclidean_norm(x);
      for (const auto& y : ys) {
        Complex v = series_value(s, y);
        const double yn = euclidean_norm(y);
        auto it = tails.find({xn, yn});
        if (it == tails.end()) it = tails.emplace(std::pair{xn, yn}, tail_bound(xn, yn, N).value).first;
        double tail = it->second;
        ++rep.points;
        rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
        rep.max_tail = std::max(rep.max_tail, tail);
        rep.min_raw = std::min(rep.min_raw, v.real());
        if (v.real() - tail < rep.min_value) {
          rep.min_value = v.real() - tail;
          rep.min_x = x;
          rep.min_y = y;
        }
      }
    }
    return rep;
  }

  /// |Delta^m E_n(x, .)(y)| <= d^m / (n-2m)! (dhat |G| |x|)^n |y|^{n-2m} for all n <= N, 2m <= n.
  BoundReport bound_consistency(std::span<const double> x, std::span<const double> y, int N = -1) const {
    N = resolve(N);
    BoundReport rep;
    const double a = growth() * euclidean_norm(x), b = euclidean_norm(y);
    std::vector<Complex> xc(x.begin(), x.end()), yc(y.begin(), y.end());
    for (int n = 0; n <= N; ++n) {
      CPoly en(d_);
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].degree() == n) en.add_term(basis_[i], vk_float_[i].evaluate_complex(xc) * inv_fact_[i]);
      CPoly lap = en;
      for (int m = 0; 2 * m <= n; ++m) {
        double v = std::abs(lap.evaluate_complex(yc));
        double bound = bounds::laplacian_power_bound(n, m, a, b, d_);
        ++rep.terms;
        double slack = 1e-12 * std::max(1.0, bound);
        if (v > bound + slack) ++rep.violations;
        if (bound > 0) rep.max_ratio = std::max(rep.max_ratio, v / bound);
        lap = lap.laplacian();
      }
    }
    return rep;
  }

  // -------------------------------------------------------------------------
  // Export

  /// x1..xd,y1..yd,re(L),im(L),tail_bound with 17 significant digits.
  void write_grid_csv(std::ostream& os, const std::vector<std::vector<double>>& xs,
                      const std::vector<std::vector<double>>& ys, int N = -1) const {
    N = resolve(N);
    for (int j = 0; j < d_; ++j) os << "x" << j + 1 << ",";
    for (int j = 0; j < d_; ++j) os << "y" << j + 1 << ",";
    os << "re,im,tail_bound\n";
    char buf[40];
    auto put = [&](double v, char sep) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf << sep;
    };
    for (const auto& x : xs) {
      KernelSlice s = slice(x, N);
      for (const auto& y : ys) {
        Complex v = series_value(s, y);
        for (double c : x) put(c, ',');
        for (double c : y) put(c, ',');
        put(v.real(), ',');
        put(v.imag(), ',');
        put(tail_bound(euclidean_norm(x), euclidean_norm(y), N).value, '\n');
      }
    }
  }

 private:
  static double sq(double v) { return v * v; }

  int resolve(int N) const {
    if (N < 0) return N_;
    if (N > N_) throw std::out_of_range("degree " + std::to_string(N) + " beyond evaluator degree " + std::to_string(N_));
    return N;
  }
  void check_point(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != d_) throw std::invalid_argument("point dimension mismatch");
  }
  static void require_rule(const QuadratureRule& rule, int degree) {
    if (rule.exact_degree < degree)
      throw std::invalid_argument("quadrature rule exact to degree " + std::to_string(rule.exact_degree) +
                                  ", need " + std::to_string(degree));
  }
  Complex integrate_poly(const CPoly& p, const QuadratureRule& rule) const {
    std::vector<Complex> z(d_);
    return integrate(
        [&](std::span<const double> y) {
          std::copy(y.begin(), y.end(), z.begin());
          return p.evaluate_complex(z);
        },
        rule);
  }

  std::vector<T> to_field(std::span<const double> v) const {
    check_point(v);
    std::vector<T> r;
    for (double c : v) r.push_back(Traits::from_double(c));
    return r;
  }
  std::vector<T> apply_matrix(const Matrix<R>& m, const std::vector<T>& v) const {
    std::vector<T> r(d_, Traits::zero());
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) r[i] += scalar_cast<T>(m(i, j)) * v[j];
    return r;
  }
  std::vector<double> apply_matrix_double(const Matrix<R>& m, std::span<const double> v) const {
    std::vector<double> r(d_, 0.0);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) r[i] += FieldTraits<R>::to_double(m(i, j)) * v[j];
    return r;
  }

  /// Degree-D Taylor polynomial in u of e^{-s<u,y>} e^{-|u|^2/2}, exact coefficients.
  Polynomial<T> gaussian_taylor(std::span<const double> y, int s, int D) const {
    std::vector<T> lin;
    for (double c : y) lin.push_back(Traits::from_double(-s * c));
    Polynomial<T> ell = Polynomial<T>::linear_form(lin);
    Polynomial<T> quad(d_);
    for (int j = 0; j < d_; ++j) quad.add_term(MultiIndex::unit(d_, j) + MultiIndex::unit(d_, j), Traits::from_rational(Rational(-1, 2)));
    // a_n = ell^n / n!, b_m = quad^m / m!
    std::vector<Polynomial<T>> a{Polynomial<T>::constant(d_, Traits::one())};
    for (int n = 1; n <= D; ++n) a.push_back(a.back() * ell * Traits::from_rational(Rational(1, n)));
    std::vector<Polynomial<T>> b{Polynomial<T>::constant(d_, Traits::one())};
    for (int m = 1; 2 * m <= D; ++m) b.push_back(b.back() * quad * Traits::from_rational(Rational(1, m)));
    Polynomial<T> r(d_);
    for (int m = 0; 2 * m <= D; ++m)
      for (int n = 0; n + 2 * m <= D; ++n) r += a[n] * b[m];
    return r;
  }

  Context* ctx_;
  int N_;
  int d_;
  std::vector<MultiIndex> basis_;
  std::vector<CPoly> vk_float_;
  std::vector<Polynomial<double>> herm_float_;
  std::vector<HermiteData> herm_exact_;
  std::vector<double> inv_fact_;
  std::vector<double> scale_;
};

}  // namespace dunkl
