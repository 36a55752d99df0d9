// Independent reference implementations for the test suite.  Nothing here
// calls the library's polynomial, Dunkl or intertwiner code: polynomials are
// plain maps of exponent vectors to mpq_class, Dunkl operators are built from
// explicit positive roots, and V_k is solved degree by degree from the
// constraints T_j V x^nu = nu_j V x^{nu - e_j} by exact row reduction.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Exp = std::vector<int>;
using Poly = std::map<Exp, Q>;

inline void add(Poly& p, const Exp& e, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exp e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add(r, e, ca * cb);
    }
  return r;
}

inline Poly one(int d) { return Poly{{Exp(d, 0), Q(1)}}; }

inline Poly linear(const std::vector<Q>& a) {
  Poly r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exp e(a.size(), 0);
    e[i] = 1;
    add(r, e, a[i]);
  }
  return r;
}

/// p / <a, x>, exact; throws when the division leaves a remainder.
inline Poly divide_linear(Poly r, const std::vector<Q>& a) {
  std::size_t piv = 0;
  while (a[piv] == 0) ++piv;
  Poly q;
  const Poly l = linear(a);
  while (!r.empty()) {
    // leading term: highest power of x_piv
    auto lead = r.begin();
    for (auto it = r.begin(); it != r.end(); ++it)
      if (it->first[piv] > lead->first[piv]) lead = it;
    if (lead->first[piv] == 0) throw std::logic_error("oracle: not divisible by the linear form");
    Exp e = lead->first;
    e[piv] -= 1;
    Q c = lead->second / a[piv];
    add(q, e, c);
    Poly t{{e, -c}};
    for (const auto& [el, cl] : mul(t, l)) add(r, el, cl);
  }
  return q;
}

/// Monomial x^mu with x replaced by sigma_alpha x = x - 2<alpha,x>/<alpha,alpha> alpha.
inline Poly reflected_monomial(const Exp& mu, const std::vector<Q>& alpha) {
  const int d = static_cast<int>(mu.size());
  Q aa = 0;
  for (const auto& v : alpha) aa += v * v;
  Poly r = one(d);
  for (int i = 0; i < d; ++i) {
    std::vector<Q> row(d);
    for (int j = 0; j < d; ++j) row[j] = (i == j ? Q(1) : Q(0)) - 2 * alpha[i] * alpha[j] / aa;
    Poly li = linear(row);
    for (int p = 0; p < mu[i]; ++p) r = mul(r, li);
  }
  return r;
}

struct RootData {
  int dim = 0;
  std::vector<std::vector<Q>> positive;
  std::vector<Q> k;  ///< per positive root
};

/// T_j x^mu = mu_j x^{mu-e_j} + sum_alpha k_alpha alpha_j (x^mu - (sigma_alpha x)^mu) / <alpha, x>.
inline Poly dunkl_monomial(const RootData& rd, int j, const Exp& mu) {
  Poly r;
  if (mu[j] > 0) {
    Exp e = mu;
    e[j] -= 1;
    add(r, e, Q(mu[j]));
  }
  for (std::size_t a = 0; a < rd.positive.size(); ++a) {
    const auto& alpha = rd.positive[a];
    if (rd.k[a] == 0 || alpha[j] == 0) continue;
    Poly diff{{mu, Q(1)}};
    for (const auto& [e, c] : reflected_monomial(mu, alpha)) add(diff, e, -c);
    for (const auto& [e, c] : divide_linear(diff, alpha)) add(r, e, rd.k[a] * alpha[j] * c);
  }
  return r;
}

inline std::vector<Exp> monomials(int d, int n) {
  std::vector<Exp> out;
  Exp e(d, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

/// V_k on every monomial of degree <= n_max, from the intertwining constraints.
class Intertwiner {
 public:
  Intertwiner(RootData rd, int n_max) : rd_(std::move(rd)) {
    const int d = rd_.dim;
    images_[Exp(d, 0)] = one(d);
    for (int n = 1; n <= n_max; ++n) solve_degree(n);
  }

  const Poly& image(const Exp& nu) const { return images_.at(nu); }

 private:
  void solve_degree(int n) {
    const int d = rd_.dim;
    auto cols = monomials(d, n);
    auto rows_mon = monomials(d, n - 1);
    std::map<Exp, int> row_index;
    for (std::size_t i = 0; i < rows_mon.size(); ++i) row_index[rows_mon[i]] = static_cast<int>(i);
    const int nr = d * static_cast<int>(rows_mon.size()), nc = static_cast<int>(cols.size());
    const int nrhs = nc;
    // augmented [M | B], one right-hand side per target monomial nu
    std::vector<std::vector<Q>> A(nr, std::vector<Q>(nc + nrhs, Q(0)));
    for (int c = 0; c < nc; ++c)
      for (int j = 0; j < d; ++j)
        for (const auto& [e, v] : dunkl_monomial(rd_, j, cols[c])) A[j * rows_mon.size() + row_index.at(e)][c] += v;
    for (int t = 0; t < nrhs; ++t) {
      const Exp& nu = cols[t];
      for (int j = 0; j < d; ++j) {
        if (nu[j] == 0) continue;
        Exp lower = nu;
        lower[j] -= 1;
        for (const auto& [e, v] : images_.at(lower)) A[j * rows_mon.size() + row_index.at(e)][nc + t] += nu[j] * v;
      }
    }
    // Gauss-Jordan
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < nc && r < nr; ++c) {
      int p = r;
      while (p < nr && A[p][c] == 0) ++p;
      if (p == nr) throw std::runtime_error("oracle: intertwining constraints do not determine V at degree " +
                                            std::to_string(n));
      std::swap(A[p], A[r]);
      Q inv = 1 / A[r][c];
      for (auto& v : A[r]) v *= inv;
      for (int i = 0; i < nr; ++i)
        if (i != r && A[i][c] != 0) {
          Q f = A[i][c];
          for (int k = c; k < nc + nrhs; ++k) A[i][k] -= f * A[r][k];
        }
      pivot_col.push_back(c);
      ++r;
    }
    for (int i = r; i < nr; ++i)
      for (int t = 0; t < nrhs; ++t)
        if (A[i][nc + t] != 0) throw std::runtime_error("oracle: inconsistent intertwining constraints");
    for (int t = 0; t < nrhs; ++t) {
      Poly img;
      for (int i = 0; i < r; ++i) add(img, cols[pivot_col[i]], A[i][nc + t]);
      images_[cols[t]] = std::move(img);
    }
  }

  RootData rd_;
  std::map<Exp, Poly> images_;
};

inline std::vector<Q> unit(int d, int i, int s = 1) {
  std::vector<Q> v(d, Q(0));
  v[i] = s;
  return v;
}

/// Z2^d with k_i on e_i.
inline RootData z2(const std::vector<Q>& k) {
  RootData rd;
  rd.dim = static_cast<int>(k.size());
  for (int i = 0; i < rd.dim; ++i) {
    rd.positive.push_back(unit(rd.dim, i));
    rd.k.push_back(k[i]);
  }
  return rd;
}

/// A_2 as e_i - e_j in R^3.
inline RootData a2(const Q& k) {
  RootData rd;
  rd.dim = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::vector<Q> v(3, Q(0));
      v[i] = 1;
      v[j] = -1;
      rd.positive.push_back(v);
      rd.k.push_back(k);
    }
  return rd;
}

/// B_2: short roots e_1, e_2; long roots e_1 +- e_2.
inline RootData b2(const Q& k_short, const Q& k_long) {
  RootData rd;
  rd.dim = 2;
  rd.positive = {unit(2, 0), unit(2, 1), {Q(1), Q(1)}, {Q(1), Q(-1)}};
  rd.k = {k_short, k_short, k_long, k_long};
  return rd;
}

// ---------------------------------------------------------------------------
// Rank one closed forms.

/// V_k(x^n) = c_n x^n on Z2^1, c_n = n c_{n-1} / (n + 2k [n odd]).
inline Q rank_one_coefficient(int n, const Q& k) {
  Q c = 1;
  for (int m = 1; m <= n; ++m) c = c * m / (m + (m % 2 == 1 ? 2 * k : Q(0)));
  return c;
}

/// Normalized Bessel j_a(i t) = Gamma(a+1) sum_n (t/2)^{2n} / (n! Gamma(n+a+1)).
inline double bessel_j_imag(double a, double t) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < 400; ++n) {
    term *= (t / 2) * (t / 2) / (n * (n + a));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// E_k(x, y) on Z2^1: j_{k-1/2}(i x y) + x y / (2k+1) j_{k+1/2}(i x y).
inline double rank_one_kernel(double k, double x, double y) {
  const double t = x * y;
  return bessel_j_imag(k - 0.5, t) + t / (2 * k + 1) * bessel_j_imag(k + 0.5, t);
}

}  // namespace oracle
