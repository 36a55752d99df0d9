#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dunkl/scalar.hpp"

namespace dunkl {

inline constexpr int kMaxDim = 6;

/// Exponent vector nu in N^d, d <= kMaxDim.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : dim_(check_dim(dim)) {}
  MultiIndex(std::initializer_list<int> exps) : dim_(check_dim(static_cast<int>(exps.size()))) {
    int i = 0;
    for (int e : exps) set(i++, e);
  }
  explicit MultiIndex(const std::vector<int>& exps) : dim_(check_dim(static_cast<int>(exps.size()))) {
    for (int i = 0; i < dim_; ++i) set(i, exps[i]);
  }

  static MultiIndex unit(int dim, int i) {
    MultiIndex m(dim);
    m.set(i, 1);
    return m;
  }

  int dim() const { return dim_; }
  int operator[](int i) const { return e_[i]; }
  void set(int i, int v) {
    if (v < 0 || v > 0xffff) throw std::out_of_range("exponent out of range");
    e_[i] = static_cast<std::uint16_t>(v);
  }
  int degree() const { return std::accumulate(e_.begin(), e_.begin() + dim_, 0); }

  MultiIndex plus_unit(int i) const {
    MultiIndex m = *this;
    m.set(i, e_[i] + 1);
    return m;
  }
  MultiIndex minus_unit(int i) const {
    MultiIndex m = *this;
    m.set(i, e_[i] - 1);
    return m;
  }
  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex m = *this;
    for (int i = 0; i < dim_; ++i) m.set(i, e_[i] + o.e_[i]);
    return m;
  }

  /// nu! = prod nu_i!
  Rational factorial() const {
    Rational f = 1;
    for (int i = 0; i < dim_; ++i) f *= dunkl::factorial(e_[i]);
    return f;
  }

  /// Graded order: total degree first, then lexicographically descending
  /// exponents (x1^2 < x1 x2 < x2^2 within a degree).
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = 0; i < a.dim_; ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i];
    return false;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension must be in [1, 6]");
    return d;
  }
  int dim_ = 0;
  std::array<std::uint16_t, kMaxDim> e_{};
};

/// All multi-indices of total degree n in dimension d, in MultiIndex order.
inline std::vector<MultiIndex> monomials_of_degree(int dim, int n) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == dim - 1) {
      cur.set(i, left);
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(i, e);
      rec(i + 1, left - e);
    }
  };
  rec(0, n);
  return out;
}

inline std::vector<MultiIndex> monomials_up_to(int dim, int n) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= n; ++k) {
    auto level = monomials_of_degree(dim, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace dunkl
