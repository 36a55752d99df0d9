// Shared helpers for the test binaries.
#pragma once

#include <nlohmann/json.hpp>

#include <random>
#include <string>
#include <vector>

#include "dunkl/config.hpp"
#include "dunkl/dunkl.hpp"
#include "oracle.hpp"

namespace testing_util {

using dunkl::CRational;
using dunkl::Rational;
using ExactContext = dunkl::DunklContext<CRational, Rational>;
using FloatContext = dunkl::DunklContext<dunkl::Complex, double>;

inline dunkl::ContextConfig config(const std::string& text) { return dunkl::parse_config(nlohmann::json::parse(text)); }

inline ExactContext exact_context(const std::string& text) {
  return dunkl::build_context<CRational, Rational>(config(text));
}
inline FloatContext float_context(const std::string& text) {
  return dunkl::build_context<dunkl::Complex, double>(config(text));
}

/// Library polynomial -> oracle polynomial (real coefficients required).
inline oracle::Poly to_oracle(const dunkl::Polynomial<CRational>& p) {
  oracle::Poly r;
  for (const auto& [nu, c] : p.terms()) {
    if (!c.is_real()) throw std::logic_error("complex coefficient");
    oracle::Exp e(nu.dim());
    for (int i = 0; i < nu.dim(); ++i) e[i] = nu[i];
    oracle::add(r, e, c.re());
  }
  return r;
}

inline dunkl::MultiIndex to_index(const oracle::Exp& e) { return dunkl::MultiIndex(e); }

inline std::vector<std::vector<double>> random_ball(int d, int count, double radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(d);
    double n = 0;
    for (auto& x : v) {
      x = g(rng);
      n += x * x;
    }
    double r = radius * std::pow(u(rng), 1.0 / d) / std::sqrt(n);
    for (auto& x : v) x *= r;
    out.push_back(v);
  }
  return out;
}

}  // namespace testing_util
