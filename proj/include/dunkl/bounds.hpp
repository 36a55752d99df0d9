// Truncation bounds for the Dunkl kernel series and the heat-image series of
// the kernel L_k.  All sums are carried in log space so that large growth
// constants do not overflow.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace dunkl::bounds {

namespace detail {

inline double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline double safe_log(double v) { return v > 0 ? std::log(v) : -INFINITY; }

}  // namespace detail

/// log of sum_{0<=m<=n/2} d^m/(2^m m!) * b^{n-2m}/(n-2m)!
inline double log_heat_weight(int n, double b, int d) {
  double acc = -INFINITY;
  const double lb = detail::safe_log(b);
  const double lhalf_d = std::log(d / 2.0);
  for (int m = 0; 2 * m <= n; ++m) {
    int r = n - 2 * m;
    if (r > 0 && lb == -INFINITY) continue;
    double t = m * lhalf_d - std::lgamma(m + 1.0) - std::lgamma(r + 1.0) + (r > 0 ? r * lb : 0.0);
    acc = detail::log_add(acc, t);
  }
  return acc;
}

/// Bound on |(e^{-Delta/2} E_n(x, .))(y)| given a = delta |G| |x| and b = |y|.
inline double heat_term_bound(int n, double a, double b, int d) {
  if (n == 0) return 1.0;
  double la = detail::safe_log(a);
  if (la == -INFINITY) return 0.0;
  return std::exp(n * la + log_heat_weight(n, b, d));
}

/// Bound on |(Delta^m E_n(x, .))(y)|: d^m/(n-2m)! a^n b^{n-2m}.
inline double laplacian_power_bound(int n, int m, double a, double b, int d) {
  int r = n - 2 * m;
  if (r < 0) return 0.0;
  double la = detail::safe_log(a), lb = detail::safe_log(b);
  if (n > 0 && la == -INFINITY) return 0.0;
  if (r > 0 && lb == -INFINITY) return 0.0;
  double l = m * std::log(static_cast<double>(d)) - std::lgamma(r + 1.0) + (n > 0 ? n * la : 0.0) + (r > 0 ? r * lb : 0.0);
  return std::exp(l);
}

/// sum_{n>N} t^n / n!
inline double exp_tail(double t, int N) {
  if (t <= 0) return 0.0;
  const double lt = std::log(t);
  double acc = -INFINITY;
  for (int n = N + 1; n < N + 100000; ++n) {
    double l = n * lt - std::lgamma(n + 1.0);
    acc = detail::log_add(acc, l);
    if (n > t && l < acc - 40) break;
  }
  return std::exp(acc);
}

/// sum_{n>N} a^n sum_m d^m/(2^m m!) b^{n-2m}/(n-2m)!: the remainder bound for
/// the heat-image series of L_k, summed with the same splitting as the
/// convergence estimate.
inline double heat_series_tail(double a, double b, int d, int N) {
  if (a <= 0) return 0.0;
  const double la = std::log(a);
  double acc = -INFINITY;
  // Terms grow until n ~ a*b + a^2 d, then decay super-exponentially.
  const double peak = a * b + a * a * d;
  for (int n = N + 1; n < N + 20000; ++n) {
    double l = n * la + log_heat_weight(n, b, d);
    acc = detail::log_add(acc, l);
    if (n > peak + 2 && l < acc - 40) break;
  }
  return std::exp(acc);
}

/// Closed envelope e^{(a sqrt d)^2/2} e^{a b} of the full heat-image series.
inline double heat_series_envelope(double a, double b, int d) { return std::exp(a * a * d / 2 + a * b); }

}  // namespace dunkl::bounds
