#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/polynomial.hpp"

namespace dunkl {

struct SupNormEstimate {
  double value = 0.0;  ///< lower estimate of sup_{|x|=1} |p(x)|
  int samples = 0;
  int ascent_steps = 0;
};

namespace detail {

inline double radical_inverse(unsigned i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

inline std::vector<std::vector<double>> sphere_points(int dim, int count) {
  std::vector<std::vector<double>> pts;
  if (dim == 1) return {{1.0}, {-1.0}};
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      double t = 2 * std::numbers::pi * i / count;
      pts.push_back({std::cos(t), std::sin(t)});
    }
    return pts;
  }
  if (dim == 3) {
    // Fibonacci lattice
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / count;
      double r = std::sqrt(1.0 - z * z);
      pts.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
    return pts;
  }
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13};
  for (int i = 1; static_cast<int>(pts.size()) < count; ++i) {
    std::vector<double> p(dim);
    double n2 = 0;
    for (int j = 0; j < dim; ++j) {
      p[j] = 2 * radical_inverse(static_cast<unsigned>(i), primes[j]) - 1;
      n2 += p[j] * p[j];
    }
    if (n2 < 1e-6) continue;
    for (double& v : p) v /= std::sqrt(n2);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace detail

/// Estimate of ||p||_S for homogeneous p: the maximum of |p| over a
/// quasi-uniform sample of the unit sphere, refined by projected gradient
/// ascent from the best samples.  Always a lower bound of the true value.
template <class T>
SupNormEstimate sphere_sup_norm(const Polynomial<T>& p, int samples = 4096, int ascent_steps = 20) {
  if (!p.is_homogeneous()) throw std::invalid_argument("sphere_sup_norm needs a homogeneous polynomial");
  const int d = p.dim();
  SupNormEstimate est{0.0, 0, ascent_steps};
  if (p.is_zero()) return est;

  auto pc = p.template cast<Complex>();
  std::vector<Polynomial<Complex>> grad;
  for (int j = 0; j < d; ++j) grad.push_back(pc.derivative(j));
  auto value = [&](const std::vector<double>& x) {
    std::vector<Complex> z(x.begin(), x.end());
    return std::abs(pc.evaluate_complex(z));
  };

  auto pts = detail::sphere_points(d, samples);
  est.samples = static_cast<int>(pts.size());
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) ranked.emplace_back(value(pts[i]), i);
  std::sort(ranked.begin(), ranked.end(), std::greater<>());
  est.value = ranked.front().first;
  if (d == 1) return est;

  const int starts = std::min<int>(16, static_cast<int>(ranked.size()));
  for (int s = 0; s < starts; ++s) {
    std::vector<double> x = pts[ranked[s].second];
    double fx = ranked[s].first;
    double step = 0.1;
    for (int it = 0; it < ascent_steps; ++it) {
      std::vector<Complex> z(x.begin(), x.end());
      Complex pv = pc.evaluate_complex(z);
      std::vector<double> g(d);
      double dot = 0;
      for (int j = 0; j < d; ++j) {
        g[j] = 2 * std::real(std::conj(pv) * grad[j].evaluate_complex(z));
        dot += g[j] * x[j];
      }
      for (int j = 0; j < d; ++j) g[j] -= dot * x[j];
      bool improved = false;
      for (int tries = 0; tries < 30 && !improved; ++tries) {
        std::vector<double> y(d);
        double n2 = 0;
        for (int j = 0; j < d; ++j) {
          y[j] = x[j] + step * g[j];
          n2 += y[j] * y[j];
        }
        for (double& v : y) v /= std::sqrt(n2);
        double fy = value(y);
        if (fy > fx) {
          x = y;
          fx = fy;
          improved = true;
          step *= 1.5;
        } else {
          step *= 0.5;
        }
      }
      if (!improved) break;
    }
    est.value = std::max(est.value, fx);
  }
  return est;
}

}  // namespace dunkl
