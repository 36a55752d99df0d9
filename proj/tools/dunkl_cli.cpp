// dunkl: batch front end for contexts, V_k, lambda tables, kernel grids and
// the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.
// Cache directory: $DUNKL_CACHE_DIR (context files are skipped when unset).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "dunkl/config.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/poly_io.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/verify.hpp"

namespace fs = std::filesystem;
using namespace dunkl;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  int degree = -1;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string grid;
  std::string polynomial;
  bool inverse = false;
  std::string suite = "all";
  std::string x, y;
  int dim = 1, q = -1;
  bool uncertified = false;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string show(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    std::ostringstream os;
    os << v;
    return os.str();
  } else {
    Complex c = ScalarTraits<T>::to_complex(v);
    if (c.imag() == 0.0) return fmt17(c.real());
    return fmt17(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt17(std::abs(c.imag())) + "i";
  }
}

std::optional<fs::path> cache_path(const ContextConfig& c) {
  const char* dir = std::getenv("DUNKL_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir) / ("context-" + config_key(c) + ".json");
}

/// Parses "1.5", "-2", "1+0.5i", "0.5i" into a complex number.
Complex parse_complex_token(const std::string& tok) {
  static const std::regex full(R"(^\s*([+-]?[0-9.eE]+(?:[eE][+-]?[0-9]+)?)?\s*(?:([+-])\s*([0-9.eE]*)i)?\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?[0-9.eE]*)i\s*$)");
  std::smatch m;
  if (std::regex_match(tok, m, imag_only)) {
    std::string s = m[1];
    double im = s.empty() || s == "+" ? 1.0 : s == "-" ? -1.0 : std::stod(s);
    return {0.0, im};
  }
  if (std::regex_match(tok, m, full) && m[1].matched) {
    double re = std::stod(m[1]);
    double im = 0.0;
    if (m[2].matched) {
      std::string mag = m[3];
      im = mag.empty() ? 1.0 : std::stod(mag);
      if (m[2] == "-") im = -im;
    }
    return {re, im};
  }
  throw ConfigError("bad coordinate '" + tok + "'");
}

std::vector<Complex> parse_point(const std::string& s, int d) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_complex_token(tok));
  if (static_cast<int>(out.size()) != d)
    throw ConfigError("point '" + s + "' has " + std::to_string(out.size()) + " coordinates, expected " +
                      std::to_string(d));
  return out;
}

struct Axis {
  double lo = 0, hi = 0, step = 1;
  std::vector<double> values() const {
    std::vector<double> v;
    if (step <= 0) throw ConfigError("grid step must be positive");
    int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) v.push_back(lo + i * step);
    return v;
  }
};

/// "x1:lo:hi:step,...,y2:lo:hi:step"; unspecified coordinates are fixed at 0.
std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>> parse_grid(const std::string& text,
                                                                                          int d) {
  std::vector<Axis> xa(d), ya(d);
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::vector<std::string> f;
    std::stringstream ps(part);
    std::string t;
    while (std::getline(ps, t, ':')) f.push_back(t);
    if (f.size() != 4) throw ConfigError("grid axis '" + part + "' is not name:lo:hi:step");
    const std::string& name = f[0];
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) throw ConfigError("unknown grid axis " + name);
    int idx = std::stoi(name.substr(1)) - 1;
    if (idx < 0 || idx >= d) throw ConfigError("grid axis " + name + " out of range");
    Axis a{std::stod(f[1]), std::stod(f[2]), std::stod(f[3])};
    (name[0] == 'x' ? xa : ya)[idx] = a;
  }
  auto product = [](const std::vector<Axis>& axes) {
    std::vector<std::vector<double>> pts{{}};
    for (const auto& a : axes) {
      std::vector<std::vector<double>> next;
      for (const auto& p : pts)
        for (double v : a.values()) {
          auto q = p;
          q.push_back(v);
          next.push_back(std::move(q));
        }
      pts = std::move(next);
    }
    return pts;
  };
  return {product(xa), product(ya)};
}

template <class T, class R>
int prepare_context(DunklContext<T, R>& ctx, const ContextConfig& cfg, int N) {
  int installed = 0;
  auto path = cache_path(cfg);
  if (path && fs::exists(*path)) {
    std::ifstream in(*path);
    nlohmann::json j;
    try {
      in >> j;
      installed = apply_context_cache(ctx, j);
    } catch (const std::exception&) {
      installed = 0;  // stale or unreadable cache: recompute
    }
  }
  ctx.prepare(N);
  return installed;
}

template <class T, class R>
void store_cache(const DunklContext<T, R>& ctx, const ContextConfig& cfg) {
  auto path = cache_path(cfg);
  if (!path) return;
  fs::create_directories(path->parent_path());
  std::ofstream out(*path);
  out << context_cache(ctx, cfg).dump(1) << "\n";
}

template <class T, class R>
int cmd_build(const ContextConfig& cfg, int N) {
  auto ctx = build_context<T, R>(cfg);
  const auto& G = ctx.group();
  std::cout << "family: " << family_name(cfg.family) << "\n";
  std::cout << "mode: " << (ScalarTraits<T>::exact ? "exact" : "floating") << "\n";
  std::cout << "|G| = " << G.order() << "\n";
  std::cout << "positive roots: " << ctx.positive_system().size() << "\n";
  auto orbits = root_orbits(G, ctx.positive_system().base);
  for (std::size_t i = 0; i < orbits.names.size(); ++i)
    std::cout << "k(" << orbits.names[i] << ") = " << show(ctx.multiplicity().orbit_values[i]) << "\n";
  std::cout << "gamma = " << show(ctx.gamma()) << "\n";
  for (int n = 1; n <= N; ++n) {
    try {
      ctx.prepare(n);
    } catch (const NotInMStar& e) {
      std::cout << "degree " << n << ": singular\n";
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
    std::cout << "degree " << n << ": invertible (" << (ctx.H(n).fallback() ? "P_n matrix" : "group algebra")
              << ")\n";
  }
  if (N >= 1) {
    try {
      auto est = ctx.estimate_delta(N);
      std::cout << "delta_hat = " << fmt17(est.delta_hat) << " (n <= " << N << ")\n";
      for (auto [n, v] : est.table) std::cout << "  n = " << n << ": n max|lambda_n| = " << fmt17(v) << "\n";
      for (int n : est.excluded) std::cout << "  n = " << n << ": excluded (no lambda_n)\n";
    } catch (const std::runtime_error& e) {
      std::cout << "delta_hat unavailable: " << e.what() << "\n";
    }
  }
  store_cache(ctx, cfg);
  if (auto p = cache_path(cfg)) std::cout << "cache: " << p->string() << "\n";
  return 0;
}

template <class T, class R>
int cmd_intertwine(const ContextConfig& cfg, const Options& o) {
  auto ctx = build_context<T, R>(cfg);
  Polynomial<CRational> p;
  try {
    p = parse_polynomial(o.polynomial, ctx.dimension());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad polynomial: ") + e.what());
  }
  prepare_context(ctx, cfg, std::max(p.degree(), 0));
  Polynomial<T> pt = p.template cast<T>();
  auto r = o.inverse ? ctx.intertwine_inverse(pt) : ctx.intertwine(pt);
  std::cout << to_literal(r) << "\n";
  return 0;
}

template <class T, class R>
int cmd_lambda_table(const ContextConfig& cfg, int N) {
  auto ctx = build_context<T, R>(cfg);
  prepare_context(ctx, cfg, N);
  std::cout << "n,g,re,im\n";
  for (int n = 1; n <= N; ++n) {
    const auto& h = ctx.H(n);
    if (!h.lambda) continue;
    for (std::size_t g = 0; g < h.lambda->coefficients.size(); ++g) {
      Complex c = ScalarTraits<T>::to_complex(h.lambda->coefficients[g]);
      std::cout << n << "," << g << "," << fmt17(c.real()) << "," << fmt17(c.imag()) << "\n";
    }
  }
  store_cache(ctx, cfg);
  return 0;
}

template <class T, class R>
int cmd_kernel_grid(const ContextConfig& cfg, const Options& o, int N) {
  auto ctx = build_context<T, R>(cfg);
  prepare_context(ctx, cfg, N);
  KernelEvaluator<T, R> ev(ctx, N);
  auto [xs, ys] = parse_grid(o.grid, ctx.dimension());
  if (!o.uncertified) {
    for (const auto& x : xs)
      for (const auto& y : ys) {
        auto tb = ev.tail_bound(euclidean_norm(x), euclidean_norm(y), N);
        if (tb.value >= o.tol) {
          std::cerr << "error: tail bound " << tb.value << " >= tol " << o.tol << " at |x| = " << tb.x_norm
                    << ", |y| = " << tb.y_norm << "; certified radius for this |y| at N = " << N << " is "
                    << ev.certified_radius(tb.y_norm, o.tol, N) << " (use --uncertified to export anyway)\n";
          return kExitConfig;
        }
      }
  }
  ev.write_grid_csv(std::cout, xs, ys, N);
  store_cache(ctx, cfg);
  return 0;
}

template <class T, class R>
int cmd_ek_eval(const ContextConfig& cfg, const Options& o, int N) {
  auto ctx = build_context<T, R>(cfg);
  prepare_context(ctx, cfg, N);
  ctx.estimate_delta(std::max(N, 1));
  auto x = parse_point(o.x, ctx.dimension());
  auto y = parse_point(o.y, ctx.dimension());
  auto kv = ctx.dunkl_kernel(x, y, o.tol);
  std::cout << "re,im,tail_bound,last_term,degree\n";
  std::cout << fmt17(kv.value.real()) << "," << fmt17(kv.value.imag()) << "," << fmt17(kv.tail_bound) << ","
            << fmt17(kv.last_term) << "," << kv.degree << "\n";
  return 0;
}

template <class T, class R>
int cmd_verify(const ContextConfig& cfg, const Options& o, int N) {
  if (std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
    throw ConfigError("unknown suite '" + o.suite + "'");
  auto ctx = build_context<T, R>(cfg);
  prepare_context(ctx, cfg, N);
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.q = o.q;
  Verifier<T, R> v(ctx, N, vo);
  auto rep = v.run(o.suite);
  std::cout << rep.to_json().dump(2) << "\n";
  store_cache(ctx, cfg);
  return rep.pass() ? 0 : kExitFail;
}

template <class T, class R>
int dispatch(const std::string& cmd, const ContextConfig& cfg, const Options& o) {
  const int N = o.degree >= 0 ? o.degree : cfg.degree;
  if (cmd == "build") return cmd_build<T, R>(cfg, N);
  if (cmd == "intertwine") return cmd_intertwine<T, R>(cfg, o);
  if (cmd == "lambda-table") return cmd_lambda_table<T, R>(cfg, N);
  if (cmd == "kernel-grid") return cmd_kernel_grid<T, R>(cfg, o, N);
  if (cmd == "ek-eval") return cmd_ek_eval<T, R>(cfg, o, N);
  if (cmd == "verify") return cmd_verify<T, R>(cfg, o, N);
  throw ConfigError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl intertwining operator and kernel toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "context config (JSON)")->required();
    sub->add_option("--degree", o.degree, "truncation / preparation degree (default: config N)");
  };
  auto* build = app.add_subcommand("build", "build a context and report |G|, gamma, M* status, delta_hat");
  add_common(build);
  auto* inter = app.add_subcommand("intertwine", "apply V_k (or its inverse) to a polynomial literal");
  add_common(inter);
  inter->add_option("polynomial", o.polynomial, "e.g. \"x1^2 x2 - 3/2 * x1\"")->required();
  inter->add_flag("--inverse", o.inverse, "apply V_k^-1");
  auto* lam = app.add_subcommand("lambda-table", "CSV of lambda_n(g)");
  add_common(lam);
  auto* grid = app.add_subcommand("kernel-grid", "CSV of L_k over a grid");
  add_common(grid);
  grid->add_option("--grid", o.grid, "x1:lo:hi:step,...,y1:lo:hi:step")->required();
  grid->add_option("--tol", o.tol, "required tail bound");
  grid->add_flag("--uncertified", o.uncertified, "export points whose tail bound exceeds --tol");
  auto* ek = app.add_subcommand("ek-eval", "E_k(x, y) with certified truncation");
  add_common(ek);
  ek->add_option("--x", o.x, "comma-separated coordinates (a, a+bi, bi)")->required();
  ek->add_option("--y", o.y, "comma-separated coordinates")->required();
  ek->add_option("--tol", o.tol, "tail bound tolerance");
  auto* ver = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  add_common(ver);
  ver->add_option("--suite", o.suite, "exact | series | quadrature | signs | positivity | all");
  ver->add_option("--seed", o.seed, "seed for random points");
  ver->add_option("--q", o.q, "quadrature points per axis");
  auto* quad = app.add_subcommand("export-quadrature", "CSV of a tensor Gauss-Hermite rule for dgamma");
  quad->add_option("--dim", o.dim, "dimension")->required();
  quad->add_option("--q", o.q, "points per axis")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (quad->parsed()) {
      gauss_rule(o.dim, o.q).write_csv(std::cout);
      return 0;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    auto cfg = load_config(o.config);
    if (cfg.exact()) return dispatch<CRational, Rational>(cmd, cfg, o);
    return dispatch<Complex, double>(cmd, cfg, o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotInMStar& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
