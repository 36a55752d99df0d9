// Dense Gauss-Jordan elimination over a ScalarTraits field.  Exact fields
// detect singularity exactly; floating fields use partial pivoting and a
// relative pivot threshold.
#pragma once

#include <optional>
#include <vector>

#include "dunkl/polynomial.hpp"

namespace dunkl {

/// Inverse of `m`, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> invert(Matrix<T> m, double rel_pivot_tol = 1e-12) {
  using Tr = ScalarTraits<T>;
  const int n = m.n;
  Matrix<T> inv = Matrix<T>::identity(n);
  double scale = 0;
  for (const auto& v : m.a) scale = std::max(scale, Tr::magnitude(v));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = -1;
    for (int r = col; r < n; ++r) {
      if (Tr::is_zero(m(r, col))) continue;
      double mag = Tr::magnitude(m(r, col));
      if constexpr (Tr::exact) {
        piv = r;
        break;
      } else if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv < 0) return std::nullopt;
    if constexpr (!Tr::exact)
      if (best <= rel_pivot_tol * std::max(scale, 1e-300)) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || Tr::is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (int j = 0; j < n; ++j) {
        if (!Tr::is_zero(m(col, j))) m(r, j) -= f * m(col, j);
        if (!Tr::is_zero(inv(col, j))) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace dunkl
