// Verification suites over a configured context: exact identities, series
// agreement, quadrature identities, sign conventions and positivity.  Each
// check reports its largest residual, the tolerance it is held to, and for
// the sign questions which convention validated.
#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dunkl/kernel.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/sphere_norm.hpp"

namespace dunkl {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool skipped = false;
  std::string convention;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.skipped && !c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = pass();
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json e;
      e["name"] = c.name;
      e["max_residual"] = c.max_residual;
      e["tolerance"] = c.tolerance;
      e["pass"] = c.pass;
      if (c.skipped) e["skipped"] = true;
      if (!c.convention.empty()) e["convention"] = c.convention;
      if (!c.detail.empty()) e["detail"] = c.detail;
      arr.push_back(e);
    }
    j["checks"] = arr;
    return j;
  }
};

struct VerifyOptions {
  int degree = -1;          ///< truncation degree; -1 = the context's configured degree
  std::uint64_t seed = 42;
  int q = -1;               ///< points per axis; -1 = default for the dimension
  double radius = 1.5;      ///< sampling radius for random points
  double positivity_radius = -1;  ///< -1: 2 for d = 1, 1.5 otherwise
  double positivity_step = -1;    ///< -1: 0.1 for d = 1, 0.25 otherwise
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exact", "series", "quadrature", "signs", "positivity", "all"};
  return names;
}

namespace detail {

/// Deterministic points uniformly in the ball of radius r.
inline std::vector<std::vector<double>> random_points(int d, int count, double r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<std::vector<double>> pts;
  while (static_cast<int>(pts.size()) < count) {
    std::vector<double> p(d);
    double n2 = 0;
    for (int j = 0; j < d; ++j) {
      p[j] = u(rng);
      n2 += p[j] * p[j];
    }
    if (n2 <= r * r) pts.push_back(std::move(p));
  }
  return pts;
}

template <class T>
double max_coeff(const Polynomial<T>& p) {
  double m = 0;
  for (const auto& [nu, c] : p.terms()) m = std::max(m, ScalarTraits<T>::magnitude(c));
  return m;
}

inline std::vector<std::vector<double>> box_grid(int d, double R, double h) {
  std::vector<double> axis;
  int steps = static_cast<int>(std::llround(2 * R / h));
  for (int i = 0; i <= steps; ++i) axis.push_back(-R + i * h);
  std::vector<std::vector<double>> pts{{}};
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double a : axis) {
        auto q = p;
        q.push_back(a);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace detail

template <class T, class R>
class Verifier {
 public:
  using Context = DunklContext<T, R>;
  using Traits = ScalarTraits<T>;
  static constexpr double kExactTol = Traits::exact ? 0.0 : 1e-9;

  Verifier(Context& ctx, int N, VerifyOptions opt) : ctx_(ctx), N_(N), opt_(opt), ev_(ctx, N) {
    d_ = ctx.dimension();
    q_ = opt.q > 0 ? opt.q : default_points_per_axis(d_);
  }

  VerificationReport run(const std::string& suite) {
    VerificationReport rep;
    rep.suite = suite;
    bool all = suite == "all";
    if (all || suite == "exact") exact(rep);
    if (all || suite == "series") series(rep);
    if (all || suite == "quadrature") quadrature(rep);
    if (all || suite == "signs") signs(rep);
    if (all || suite == "positivity") positivity(rep);
    return rep;
  }

  const KernelEvaluator<T, R>& evaluator() const { return ev_; }

  // -------------------------------------------------------------------------
  void exact(VerificationReport& rep) {
    const int D = std::min(N_, 8);
    auto add = [&](std::string name, double res, std::string detail = {}) {
      rep.checks.push_back({std::move(name), res, kExactTol, res <= kExactTol, false, {}, std::move(detail)});
    };
    double r_int = 0, r_comm = 0, r_euler = 0, r_round = 0;
    for (const auto& nu : monomials_up_to(d_, D)) {
      auto p = Polynomial<T>::monomial(nu);
      auto v = ctx_.intertwine(p);
      for (int j = 0; j < d_; ++j)
        r_int = std::max(r_int, detail::max_coeff(ctx_.dunkl_j(j, v) - ctx_.intertwine(p.derivative(j))));
      if (nu.degree() <= 6)
        for (int i = 0; i < d_; ++i)
          for (int j = i + 1; j < d_; ++j)
            r_comm = std::max(r_comm, detail::max_coeff(ctx_.dunkl_j(i, ctx_.dunkl_j(j, p)) -
                                                        ctx_.dunkl_j(j, ctx_.dunkl_j(i, p))));
      r_euler = std::max(r_euler, detail::max_coeff(ctx_.euler_W(nu.degree(), p) -
                                                    ctx_.euler_W_via_dunkl(nu.degree(), p)));
      r_round = std::max(r_round, detail::max_coeff(ctx_.intertwine(ctx_.intertwine_inverse(p)) - p));
    }
    add("intertwining T_j V = V d_j", r_int, "monomials of degree <= " + std::to_string(D));
    add("commutativity T_i T_j = T_j T_i", r_comm);
    add("euler identity (n + gamma) - A = sum x_j T_j", r_euler);
    add("V_k o V_k^-1 = id", r_round);
    int bad = 0;
    for (int n = 1; n <= D; ++n) bad += ctx_.H_is_inverse(n) ? 0 : 1;
    add("W_n H_n = id", bad, "degrees 1.." + std::to_string(D));
    add("V_k(1) = 1",
        detail::max_coeff(ctx_.intertwine(Polynomial<T>::constant(d_, Traits::one())) -
                          Polynomial<T>::constant(d_, Traits::one())));
    if (ctx_.multiplicity().is_real()) {
      double im = 0;
      for (const auto& nu : monomials_up_to(d_, D))
        for (const auto& [mu, c] : ctx_.intertwine_monomial(nu).terms())
          im = std::max(im, std::abs(Traits::to_complex(c).imag()));
      add("real k gives real V_k", im);
    }
    auto pts = detail::random_points(d_, 4, 1.0, opt_.seed);
    int fails = 0, checks = 0;
    double dev = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      auto s = ev_.symmetry_scan(pts[i], pts[i + 1], 1.5, std::min(N_, 10));
      fails += s.failures;
      checks += s.checks;
      dev = std::max(dev, s.max_float_deviation);
    }
    add("equivariance, parity, E_n(x,0), homogeneity (per term)", fails,
        std::to_string(checks) + " exact term checks; summed-kernel float deviation " + std::to_string(dev));
  }

  // -------------------------------------------------------------------------
  void series(VerificationReport& rep) {
    auto xs = detail::random_points(d_, 25, opt_.radius, opt_.seed + 1);
    auto ys = detail::random_points(d_, 25, opt_.radius, opt_.seed + 2);
    double two = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto s = ev_.slice(xs[i]);
      two = std::max(two, std::abs(ev_.series_value(s, ys[i]) - ev_.hermite_value(s, ys[i])));
    }
    rep.checks.push_back({"two-path agreement (series vs hermite)", two, 1e-9, two <= 1e-9, false, {},
                          "25 random pairs, radius " + std::to_string(opt_.radius)});

    BoundReport b{};
    for (int i = 0; i < 10; ++i) {
      auto r = ev_.bound_consistency(xs[i], ys[i]);
      b.terms += r.terms;
      b.violations += r.violations;
      b.max_ratio = std::max(b.max_ratio, r.max_ratio);
    }
    std::string table;
    auto est = ctx_.estimate_delta(N_);
    for (auto [n, v] : est.table) table += std::to_string(n) + ":" + std::to_string(v) + " ";
    rep.checks.push_back({"per-term |Delta^m E_n| bounds with delta_hat", static_cast<double>(b.violations), 0.0,
                          b.violations == 0, false, {},
                          "max ratio " + std::to_string(b.max_ratio) + "; n*max|lambda_n|: " + table});

    // Tail bound: monotone in N and dominating the computed terms beyond N'.
    int mono_fail = 0, dom_fail = 0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double xn = euclidean_norm(xs[i]), yn = euclidean_norm(ys[i]);
      auto s = ev_.slice(xs[i]);
      std::vector<Complex> yc(ys[i].begin(), ys[i].end());
      std::vector<double> mags;
      for (const auto& t : s.terms) mags.push_back(std::abs(t.evaluate_complex(yc)));
      for (int M = 0; M < N_; ++M) {
        double tb = ev_.tail_bound(xn, yn, M).value, tb1 = ev_.tail_bound(xn, yn, M + 1).value;
        if (tb1 > tb * (1 + 1e-12) || tb1 < 0) ++mono_fail;
        double beyond = 0;
        for (int n = M + 1; n <= N_; ++n) beyond += mags[n];
        if (beyond > tb * (1 + 1e-9)) ++dom_fail;
      }
    }
    rep.checks.push_back({"tail bound monotone and dominating", static_cast<double>(mono_fail + dom_fail), 0.0,
                          mono_fail + dom_fail == 0});

    auto rule = gauss_rule(d_, std::max(q_, (N_ + 2) / 2 + 1));
    double mass = 0;
    for (int i = 0; i < 10; ++i) mass = std::max(mass, std::abs(ev_.lk_mass(xs[i], rule) - 1.0));
    rep.checks.push_back({"mass int L dgamma = 1", mass, 1e-12, mass <= 1e-12});

    double conv = 0;
    for (int i = 0; i < 10; ++i) conv = std::max(conv, ev_.convolution_check(xs[i], ys[i], rule).residual);
    rep.checks.push_back({"convolution E_k = L * gaussian (matching truncation)", conv, 1e-6, conv <= 1e-6});
  }

  // -------------------------------------------------------------------------
  void quadrature(VerificationReport& rep) {
    auto rule = gauss_rule(d_, q_);
    // monomial exactness sweep
    const int top = std::min(rule.exact_degree, d_ <= 2 ? 79 : 39);
    // pw[i][j][e] = z_{i,j}^e
    std::vector<double> pw(rule.size() * d_ * (top + 1));
    auto at = [&](std::size_t i, int j, int e) -> double& { return pw[(i * d_ + j) * (top + 1) + e]; };
    for (std::size_t i = 0; i < rule.size(); ++i)
      for (int j = 0; j < d_; ++j) {
        at(i, j, 0) = 1.0;
        for (int e = 1; e <= top; ++e) at(i, j, e) = at(i, j, e - 1) * rule.node(i)[j];
      }
    double sweep = 0;
    for (const auto& nu : monomials_up_to(d_, top)) {
      std::vector<int> e(d_);
      for (int j = 0; j < d_; ++j) e[j] = nu[j];
      double got = 0, scale = 0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        double v = rule.weights[i];
        for (int j = 0; j < d_; ++j) v *= at(i, j, e[j]);
        got += v;
        scale += std::abs(v);
      }
      // odd moments cancel across terms as large as the absolute moment
      sweep = std::max(sweep, std::abs(got - gaussian_moment(e)) / std::max(1.0, scale));
    }
    rep.checks.push_back({"rule monomial exactness", sweep, 1e-12, sweep <= 1e-12, false, {},
                          "q = " + std::to_string(q_) + ", degree <= " + std::to_string(rule.exact_degree)});

    const int F = d_ <= 2 ? 12 : 8;
    double mac = 0;
    auto mons = monomials_up_to(d_, F);
    std::vector<Polynomial<T>> mp;
    for (const auto& a : mons) mp.push_back(Polynomial<T>::monomial(a));
    auto gram_q = fischer_gram_via_gaussian(mp, rule);
    for (std::size_t a = 0; a < mp.size(); ++a)
      for (std::size_t b = 0; b < mp.size(); ++b) {
        if (mons[a].degree() + mons[b].degree() > F) continue;
        Complex exact = Traits::to_complex(fischer(mp[a], mp[b]));
        mac = std::max(mac, std::abs(exact - gram_q[a][b]) / std::max(1.0, std::abs(exact)));
      }
    // one pair of non-monomials through the direct route
    {
      std::size_t mid = 0;
      while (mons[mid].degree() < F / 2 - 1) ++mid;
      Polynomial<T> p = mp[mid] + mp[1], q = mp[mid] * mp[1] + mp[0];
      Complex exact = Traits::to_complex(fischer(p, q));
      mac = std::max(mac, std::abs(exact - fischer_via_gaussian(p, q, rule)) / std::max(1.0, std::abs(exact)));
    }
    rep.checks.push_back({"Macdonald formula [p,q] = int e^{-D/2}p e^{-D/2}q dgamma", mac, 1e-10, mac <= 1e-10});

    double gram = 0;
    auto hs = monomials_up_to(d_, 5);
    std::vector<std::vector<double>> hv(hs.size(), std::vector<double>(rule.size()));
    for (std::size_t a = 0; a < hs.size(); ++a) {
      auto h = hermite(hs[a]).polynomial();
      for (std::size_t i = 0; i < rule.size(); ++i) hv[a][i] = h.evaluate_real(rule.node(i));
    }
    for (std::size_t a = 0; a < hs.size(); ++a)
      for (std::size_t b = a; b < hs.size(); ++b) {
        double v = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) v += rule.weights[i] * hv[a][i] * hv[b][i];
        gram = std::max(gram, std::abs(v - (a == b ? 1.0 : 0.0)));
      }
    rep.checks.push_back({"Hermite Gram matrix = I (|nu| <= 5)", gram, 1e-10, gram <= 1e-10});

    auto xs = detail::random_points(d_, 5, 1.0, opt_.seed + 3);
    double rec = 0;
    bool rec_ok = true;
    const int P = std::min(8, N_);
    for (const auto& x : xs)
      for (const auto& nu : monomials_up_to(d_, P)) {
        auto r = ev_.reconstruction_check(x, Polynomial<T>::monomial(nu), rule);
        rec = std::max(rec, r.residual);
        rec_ok = rec_ok && r.residual <= r.bound + 1e-10;
      }
    rep.checks.push_back({"reconstruction Phi_x(p) = V_k(e^{D/2}p)(x)", rec, 1e-10, rec_ok, false, {},
                          "monomials of degree <= " + std::to_string(P) + ", 5 points"});

    double par = 0;
    auto big = gauss_rule(d_, std::max(q_, N_ + 1));
    for (const auto& x : xs) par = std::max(par, ev_.phi_x_norm(x, big).relative_gap());
    rep.checks.push_back({"Parseval: two routes of ||Phi_x||", par, 1e-6, par <= 1e-6});

    // e^{-i<y,z>} at |y| = 4 needs about 40 nodes per axis
    double four = 0;
    const int qf = std::pow(40.0, d_) <= 4e6 ? std::max(q_, 40) : q_;
    const double ymax = qf >= 32 ? 4.0 : 2.0;
    auto frule = gauss_rule(d_, qf);
    FourierIntegrand g;
    g.gaussian_factor = [](std::span<const double>) { return Complex(1.0); };
    for (double t = -ymax; t <= ymax; t += 0.5) {
      std::vector<double> y(d_, 0.0);
      y[0] = t;
      four = std::max(four, std::abs(fourier_quadrature(g, y, frule).value - std::exp(-t * t / 2)));
    }
    char fbuf[64];
    std::snprintf(fbuf, sizeof fbuf, "|y| <= %.0f, q = %d", ymax, qf);
    rep.checks.push_back({"Fourier transform of the Gaussian", four, 1e-10, four <= 1e-10, false, {}, fbuf});

    auto mc = monte_carlo([](std::span<const double> z) { return z[0] * z[0]; }, d_, 100000, opt_.seed);
    double dev = std::abs(mc.mean - 1.0);
    rep.checks.push_back({"Monte Carlo E[z1^2] = 1 within 4 SE", dev, 4 * mc.standard_error,
                          dev <= 4 * mc.standard_error});
  }

  // -------------------------------------------------------------------------
  /// Test point x = y = t e_1 with t = 1, 0.5, 0.35 for d = 1, 2, >= 3.  The k = 0 context on the same group decides
  /// which convention is right; the configured k must agree with it.
  void signs(VerificationReport& rep) {
    const int N = d_ == 1 ? std::max(N_, 40) : std::min(N_, 14);
    const double t = d_ == 1 ? 1.0 : d_ == 2 ? 0.5 : 0.35;
    std::vector<double> x(d_, 0.0), y(d_, 0.0);
    x[0] = t;
    y[0] = t;
    auto zero_k = ctx_.multiplicity();
    for (auto& v : zero_k.positive_values) v = Traits::zero();
    for (auto& v : zero_k.orbit_values) v = Traits::zero();
    zero_k.gamma = Traits::zero();
    Context ctx0(ctx_.group(), ctx_.positive_system(), zero_k);
    KernelEvaluator<T, R> ev0(ctx0, N);
    auto rule = gauss_rule(d_, q_);

    auto g0 = ev0.gaussian_image_check(x, y, N);
    auto gk = ev_.gaussian_image_check(x, y, N);
    push_sign(rep, "gaussian image V_k(e^{-|.+-y|^2/2})", g0.residual_plus, g0.residual_minus, gk.residual_plus,
              gk.residual_minus, "plus (u+y)", "minus (u-y)");

    auto f0 = ev0.fourier_check(x, y, rule, N);
    auto fk = ev_.fourier_check(x, y, rule, N);
    push_sign(rep, "Fourier F(e^{-|.|^2/2} E_k(+-ix,.))", f0.residual_minus_ix, f0.residual_plus_ix,
              fk.residual_minus_ix, fk.residual_plus_ix, "-ix", "+ix");

    double plus = 0, minus = 0;
    auto pts = detail::random_points(d_, 4, 1.0, opt_.seed + 4);
    const int M = std::min(N_, 12);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
      for (int j = 0; j < d_; ++j) {
        auto r = ev_.derivative_relation_check(pts[i], pts[i + 1], j, M);
        plus = std::max(plus, r.residual_plus);
        minus = std::max(minus, r.residual_minus);
      }
    CheckResult c{"derivative relation d_y(L e^{-|y|^2/2}) = -+ T_j^x(...)", minus, 1e-9, minus <= 1e-9};
    c.convention = minus <= 1e-9 && plus > 1e-9 ? "minus" : plus <= 1e-9 ? "plus (as displayed)" : "neither";
    char buf[128];
    std::snprintf(buf, sizeof buf, "residual with displayed sign %.3g, with minus sign %.3g", plus, minus);
    c.detail = buf;
    rep.checks.push_back(c);
  }

  // -------------------------------------------------------------------------
  void positivity(VerificationReport& rep) {
    if (!ctx_.multiplicity().is_real_nonnegative()) {
      CheckResult c{"positivity of L_k", 0.0, 1e-8, true, true};
      c.detail = "skipped: positivity is only asserted for real nonnegative k";
      rep.checks.push_back(c);
      return;
    }
    const double box = opt_.positivity_radius > 0 ? opt_.positivity_radius : (d_ == 1 ? 2.0 : 1.5);
    const double h = opt_.positivity_step > 0 ? opt_.positivity_step : (d_ == 1 ? 0.1 : d_ == 2 ? 0.25 : 0.5);
    auto grid = detail::box_grid(d_, box, h);
    // Only pairs whose tail bound is below 1e-8 are certified; the rest are reported.
    std::vector<std::vector<double>> xs;
    const double max_y = box * std::sqrt(static_cast<double>(d_));
    const double rc = ev_.certified_radius(max_y, 1e-8, N_);
    for (const auto& x : grid)
      if (euclidean_norm(x) <= rc) xs.push_back(x);
    auto p = ev_.positivity_scan(xs, grid);
    auto raw = ev_.positivity_scan(grid, grid);
    CheckResult c{"positivity of L_k (min Re L - tail)", std::max(0.0, -p.min_value), 1e-8,
                  !xs.empty() && p.min_value >= -1e-8};
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "grid [-%.3g,%.3g]^%d step %.3g; certified |x| <= %.4g (%zu of %zu x-points); min(L - tail) = %.6g; "
                  "uncertified min Re L over full grid = %.6g; max |Im L| = %.3g",
                  box, box, 2 * d_, h, rc, xs.size(), grid.size(), p.min_value, raw.min_raw, raw.max_imag);
    c.detail = buf;
    rep.checks.push_back(c);
    if (ctx_.multiplicity().is_real())
      rep.checks.push_back({"real k gives real L_k", raw.max_imag, 1e-12, raw.max_imag <= 1e-12});
  }

 private:
  /// `a` is the displayed convention, `b` the alternative.
  void push_sign(VerificationReport& rep, const std::string& name, double a0, double b0, double ak, double bk,
                 const std::string& a_name, const std::string& b_name) {
    CheckResult c;
    c.name = name;
    bool a_valid = a0 <= 1e-8 && b0 >= 0.1, b_valid = b0 <= 1e-8 && a0 >= 0.1;
    if (a_valid) c.convention = a_name;
    if (b_valid) c.convention = b_name;
    double k_res = a_valid ? ak : b_valid ? bk : std::max(ak, bk);
    c.max_residual = k_res;
    c.tolerance = 1e-6;
    c.pass = (a_valid || b_valid) && k_res <= 1e-6;
    char buf[256];
    std::snprintf(buf, sizeof buf, "k=0: %s %.3g, %s %.3g; configured k: %s %.3g, %s %.3g", a_name.c_str(), a0,
                  b_name.c_str(), b0, a_name.c_str(), ak, b_name.c_str(), bk);
    c.detail = buf;
    rep.checks.push_back(c);
  }

  Context& ctx_;
  int N_;
  VerifyOptions opt_;
  KernelEvaluator<T, R> ev_;
  int d_ = 0;
  int q_ = 0;
};

}  // namespace dunkl
