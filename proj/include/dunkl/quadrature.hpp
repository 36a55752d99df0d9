// Integration against the standard Gaussian measure
//   d gamma = (2 pi)^{-d/2} e^{-|z|^2/2} dz
// (unit mass, unit variance per axis).  Gauss-Hermite rules are built from the
// Jacobi matrix of the probabilists' Hermite polynomials, so nodes and weights
// are already in this normalization.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "dunkl/polynomial.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

struct QuadratureRule {
  int dim = 0;
  int points_per_axis = 0;
  int exact_degree = 0;        ///< total polynomial degree integrated exactly
  std::vector<double> nodes;   ///< size() * dim, row per node
  std::vector<double> weights; ///< positive, summing to 1

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const { return {nodes.data() + i * dim, static_cast<std::size_t>(dim)}; }

  /// "z1,...,zd,weight" rows with 17 significant digits.
  void write_csv(std::ostream& os) const {
    for (int j = 0; j < dim; ++j) os << "z" << j + 1 << ",";
    os << "weight\n";
    char buf[40];
    for (std::size_t i = 0; i < size(); ++i) {
      for (int j = 0; j < dim; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", nodes[i * dim + j]);
        os << buf << ",";
      }
      std::snprintf(buf, sizeof buf, "%.17g", weights[i]);
      os << buf << "\n";
    }
  }
};

inline constexpr std::size_t kMaxRuleNodes = 20'000'000;

/// One-dimensional q-point rule for d gamma.
inline QuadratureRule gauss_rule_1d(int q) {
  if (q < 1) throw std::invalid_argument("gauss_rule needs q >= 1");
  // Jacobi matrix of He_n: zero diagonal, off-diagonal sqrt(i).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
  for (int i = 1; i < q; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + q);

  // Orthonormal recurrence h_{n+1} = (z h_n - sqrt(n) h_{n-1}) / sqrt(n+1); returns (h_q, h_{q-1}).
  auto eval = [q](double z) {
    double prev = 0.0, cur = 1.0;
    for (int n = 0; n < q; ++n) {
      double next = (z * cur - std::sqrt(static_cast<double>(n)) * prev) / std::sqrt(n + 1.0);
      prev = cur;
      cur = next;
    }
    return std::pair{cur, prev};
  };
  for (double& z : x)
    for (int it = 0; it < 6; ++it) {
      auto [hq, hq1] = eval(z);
      if (q == 0 || hq1 == 0.0) break;
      z -= hq / (std::sqrt(static_cast<double>(q)) * hq1);  // h_q' = sqrt(q) h_{q-1}
    }
  for (int i = 0; i < q / 2; ++i) {
    double s = 0.5 * (x[q - 1 - i] - x[i]);
    x[i] = -s;
    x[q - 1 - i] = s;
  }
  if (q % 2 == 1) x[q / 2] = 0.0;

  QuadratureRule r;
  r.dim = 1;
  r.points_per_axis = q;
  r.exact_degree = 2 * q - 1;
  r.nodes = x;
  for (double z : x) {
    double hq1 = eval(z).second;
    r.weights.push_back(1.0 / (q * hq1 * hq1));
  }
  return r;
}

/// Tensor rule with q points per axis; exact through total degree 2q - 1.
inline QuadratureRule gauss_rule(int dim, int q) {
  if (dim < 1) throw std::invalid_argument("gauss_rule needs d >= 1");
  double count = std::pow(static_cast<double>(q), dim);
  if (count > static_cast<double>(kMaxRuleNodes))
    throw std::length_error("tensor rule with " + std::to_string(q) + "^" + std::to_string(dim) +
                            " nodes exceeds the memory cap");
  QuadratureRule base = gauss_rule_1d(q);
  QuadratureRule r;
  r.dim = dim;
  r.points_per_axis = q;
  r.exact_degree = base.exact_degree;
  std::size_t n = static_cast<std::size_t>(count);
  r.nodes.resize(n * dim);
  r.weights.resize(n);
  std::vector<int> idx(dim, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) {
      r.nodes[i * dim + j] = base.nodes[idx[j]];
      w *= base.weights[idx[j]];
    }
    r.weights[i] = w;
    for (int j = dim - 1; j >= 0; --j) {
      if (++idx[j] < q) break;
      idx[j] = 0;
    }
  }
  return r;
}

/// Default points per axis: 40 for d <= 2, 20 for d = 3.
inline int default_points_per_axis(int dim) { return dim <= 2 ? 40 : 20; }

/// sum_i w_i f(z_i); f returns double or std::complex<double>.
template <class F>
auto integrate(F&& f, const QuadratureRule& rule) {
  using Out = std::decay_t<decltype(f(rule.node(0)))>;
  Out acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.node(i));
  return acc;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

template <class F>
MonteCarloResult monte_carlo(F&& f, int dim, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("monte_carlo needs at least 2 samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> z(dim);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (int j = 0; j < dim; ++j) z[j] = normal(rng);
    double v = f(std::span<const double>(z));
    double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  double var = m2 / (n_samples - 1);
  return {mean, std::sqrt(var / n_samples), n_samples};
}

// ---------------------------------------------------------------------------
// Fourier transform F(f)(y) = (2 pi)^{-d/2} int f(z) e^{-i<y,z>} dz

/// An integrand for fourier_quadrature.  Either the Gaussian factor is
/// explicit (f = g e^{-|z|^2/2}, `gaussian_factor` = g) or a decay constant C
/// certifies |f(z)| <= C e^{-|z|^2/2}.
struct FourierIntegrand {
  std::function<Complex(std::span<const double>)> gaussian_factor;
  std::function<Complex(std::span<const double>)> f;
  std::optional<double> decay_constant;
};

struct FourierResult {
  Complex value;
  double truncation_bound = 0.0;  ///< 0 on the Gaussian-factored route
};

inline FourierResult fourier_quadrature(const FourierIntegrand& in, std::span<const double> y,
                                        const QuadratureRule& rule, double box_step = 0.25) {
  const int d = rule.dim;
  if (static_cast<int>(y.size()) != d) throw std::invalid_argument("frequency dimension mismatch");
  if (in.gaussian_factor) {
    Complex v = integrate(
        [&](std::span<const double> z) {
          double yz = 0;
          for (int j = 0; j < d; ++j) yz += y[j] * z[j];
          return in.gaussian_factor(z) * std::exp(Complex(0.0, -yz));
        },
        rule);
    return {v, 0.0};
  }
  if (!in.f || !in.decay_constant) throw std::invalid_argument("integrand without certified Gaussian decay");
  // Outside [-L, L]^d the mass is at most C d erfc(L / sqrt 2).
  const double C = *in.decay_constant;
  double L = 4.0;
  while (C * d * std::erfc(L / std::sqrt(2.0)) > 1e-15 && L < 40) L += 0.5;
  const int m = static_cast<int>(std::ceil(L / box_step));
  const int per_axis = 2 * m + 1;
  if (std::pow(per_axis, d) > static_cast<double>(kMaxRuleNodes))
    throw std::length_error("trapezoid grid too large");
  const double c0 = std::pow(2 * std::numbers::pi, d / 2.0);
  const double cell = std::pow(box_step, d) / c0;
  std::vector<int> idx(d, 0);
  std::vector<double> z(d);
  Complex acc{};
  const std::size_t total = static_cast<std::size_t>(std::pow(per_axis, d));
  for (std::size_t i = 0; i < total; ++i) {
    double yz = 0;
    for (int j = 0; j < d; ++j) {
      z[j] = (idx[j] - m) * box_step;
      yz += y[j] * z[j];
    }
    acc += in.f(std::span<const double>(z)) * std::exp(Complex(0.0, -yz));
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
    }
  }
  return {acc * cell, C * d * std::erfc(L / std::sqrt(2.0))};
}

/// Closed-form Gaussian moment E[z^nu] for d gamma (products of double factorials).
inline double gaussian_moment(std::span<const int> nu) {
  double m = 1.0;
  for (int e : nu) {
    if (e % 2) return 0.0;
    for (int k = e - 1; k > 1; k -= 2) m *= k;
  }
  return m;
}

/// [p, q] as int (e^{-Delta/2} p)(z) (e^{-Delta/2} q)(z) d gamma(z).
template <class T>
Complex fischer_via_gaussian(const Polynomial<T>& p, const Polynomial<T>& q, const QuadratureRule& rule) {
  if (p.dim() != rule.dim || q.dim() != rule.dim) throw std::invalid_argument("dimension mismatch");
  if (std::max(p.degree(), 0) + std::max(q.degree(), 0) > rule.exact_degree)
    throw std::invalid_argument("quadrature rule degree " + std::to_string(rule.exact_degree) +
                                " too low for the product degree");
  auto hp = heat_half(p).template cast<Complex>();
  auto hq = heat_half(q).template cast<Complex>();
  std::vector<Complex> z(rule.dim);
  Complex acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    auto node = rule.node(i);
    for (int j = 0; j < rule.dim; ++j) z[j] = node[j];
    acc += rule.weights[i] * hp.evaluate_complex(z) * hq.evaluate_complex(z);
  }
  return acc;
}

/// Gram matrix G(a, b) = [ps[a], ps[b]] by the same route, evaluating each
/// heat image at the nodes once.
template <class T>
std::vector<std::vector<Complex>> fischer_gram_via_gaussian(const std::vector<Polynomial<T>>& ps,
                                                            const QuadratureRule& rule) {
  int top = 0;
  for (const auto& p : ps) {
    if (p.dim() != rule.dim) throw std::invalid_argument("dimension mismatch");
    top = std::max(top, p.degree());
  }
  if (2 * top > rule.exact_degree)
    throw std::invalid_argument("quadrature rule degree " + std::to_string(rule.exact_degree) +
                                " too low for the product degree");
  const std::size_t n = ps.size(), m = rule.size();
  std::vector<std::vector<Complex>> vals(n, std::vector<Complex>(m));
  std::vector<Complex> z(rule.dim);
  for (std::size_t a = 0; a < n; ++a) {
    auto h = heat_half(ps[a]).template cast<Complex>();
    for (std::size_t i = 0; i < m; ++i) {
      auto node = rule.node(i);
      for (int j = 0; j < rule.dim; ++j) z[j] = node[j];
      vals[a][i] = h.evaluate_complex(z);
    }
  }
  std::vector<std::vector<Complex>> g(n, std::vector<Complex>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Complex acc{};
      for (std::size_t i = 0; i < m; ++i) acc += rule.weights[i] * vals[a][i] * vals[b][i];
      g[a][b] = g[b][a] = acc;
    }
  return g;
}

}  // namespace dunkl
