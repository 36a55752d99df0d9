// JSON context configuration:
//   { "family": "B", "d": 2, "k": {"long": "3/2", "short": "1/2"}, "N": 14 }
// "m" replaces "d" for I2(m); "roots" (list of rational-string vectors) for
// "custom".  k is a single scalar for every orbit, a list in orbit order, or
// an object keyed by orbit name.  Scalars are rational strings ("3/2",
// "0.25"), JSON numbers (read through their decimal text), or complex
// {"re": ..., "im": ...}.
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/dunkl.hpp"

namespace dunkl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContextConfig {
  Family family = Family::B;
  int parameter = 2;  ///< d, or m for I2
  std::vector<std::vector<std::string>> custom_roots;
  nlohmann::json k;
  int degree = 14;
  nlohmann::json raw;

  /// Irrational dihedral groups need the floating layer.
  bool exact() const {
    if (family == Family::I2) return parameter == 1 || parameter == 2 || parameter == 4;
    if (family == Family::Custom)
      for (const auto& r : custom_roots)
        for (const auto& c : r)
          try {
            parse_rational(c);
          } catch (const std::exception&) {
            return false;
          }
    return true;
  }
  int dimension() const {
    if (family == Family::I2) return 2;
    if (family == Family::Custom) return custom_roots.empty() ? 0 : static_cast<int>(custom_roots.front().size());
    return parameter;
  }
};

/// Default truncation degree: 14 for d <= 2, 10 for d = 3, 8 beyond.
inline int default_degree(int d) { return d <= 2 ? 14 : d == 3 ? 10 : 8; }

namespace detail {

inline std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw ConfigError("expected a scalar, got " + v.dump());
}

}  // namespace detail

template <class T>
T parse_config_scalar(const nlohmann::json& v) {
  try {
    if (v.is_object()) {
      if (!v.contains("re")) throw ConfigError("complex scalar needs \"re\"");
      Rational re = parse_rational(detail::scalar_text(v.at("re")));
      Rational im = v.contains("im") ? parse_rational(detail::scalar_text(v.at("im"))) : Rational(0);
      if constexpr (std::is_same_v<T, CRational>)
        return CRational(re, im);
      else
        return Complex(re.get_d(), im.get_d());
    }
    Rational r = parse_rational(detail::scalar_text(v));
    return ScalarTraits<T>::from_rational(r);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad scalar ") + v.dump() + ": " + e.what());
  }
}

inline ContextConfig parse_config(const nlohmann::json& j) {
  ContextConfig c;
  c.raw = j;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("family")) throw ConfigError("config needs \"family\"");
  try {
    c.family = parse_family(j.at("family").get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (c.family == Family::I2) {
    if (!j.contains("m")) throw ConfigError("I2 config needs \"m\"");
    c.parameter = j.at("m").get<int>();
    if (c.parameter < 2) throw ConfigError("I2(m) needs m >= 2");
  } else if (c.family == Family::Custom) {
    if (!j.contains("roots")) throw ConfigError("custom config needs \"roots\"");
    for (const auto& r : j.at("roots")) {
      std::vector<std::string> row;
      for (const auto& v : r) row.push_back(detail::scalar_text(v));
      c.custom_roots.push_back(std::move(row));
    }
    c.parameter = c.dimension();
  } else {
    if (!j.contains("d")) throw ConfigError("config needs \"d\"");
    c.parameter = j.at("d").get<int>();
    if (c.parameter < 1 || c.parameter > kMaxDim) throw ConfigError("unsupported dimension " + std::to_string(c.parameter));
  }
  c.k = j.contains("k") ? j.at("k") : nlohmann::json("0");
  c.degree = j.contains("N") ? j.at("N").get<int>() : default_degree(c.dimension());
  if (c.degree < 0) throw ConfigError("N must be nonnegative");
  return c;
}

inline ContextConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(j);
}

template <class R>
RootSystem<R> config_root_system(const ContextConfig& c) {
  try {
    if (c.family != Family::Custom) return build_root_system<R>(c.family, c.parameter);
    std::vector<Vec<R>> roots;
    for (const auto& row : c.custom_roots) {
      Vec<R> v;
      for (const auto& s : row) {
        if constexpr (std::is_same_v<R, Rational>)
          v.push_back(parse_rational(s));
        else
          v.push_back(std::stod(s));
      }
      roots.push_back(std::move(v));
    }
    return custom_root_system<R>(c.dimension(), std::move(roots));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

/// Builds the context (group, positive system, validated k); does not prepare it.
template <class T, class R>
DunklContext<T, R> build_context(const ContextConfig& c) {
  auto rs = config_root_system<R>(c);
  auto ps = select_positive(rs);
  ReflectionGroup<R> G;
  try {
    G = generate_group(ps);
  } catch (const GroupClosureError& e) {
    throw ConfigError(e.what());
  }
  auto orbits = root_orbits(G, ps.base);
  std::vector<T> values(orbits.members.size(), ScalarTraits<T>::zero());
  try {
    if (c.k.is_array()) {
      if (c.k.size() != values.size())
        throw ConfigError("k lists " + std::to_string(c.k.size()) + " values for " + std::to_string(values.size()) +
                          " root orbits");
      for (std::size_t i = 0; i < values.size(); ++i) values[i] = parse_config_scalar<T>(c.k[i]);
    } else if (c.k.is_object() && !c.k.contains("re")) {
      for (auto it = c.k.begin(); it != c.k.end(); ++it) {
        auto pos = std::find(orbits.names.begin(), orbits.names.end(), it.key());
        if (pos == orbits.names.end()) throw ConfigError("unknown root orbit '" + it.key() + "'");
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!c.k.contains(orbits.names[i])) throw ConfigError("no k value for root orbit '" + orbits.names[i] + "'");
        values[i] = parse_config_scalar<T>(c.k.at(orbits.names[i]));
      }
    } else {
      T v = parse_config_scalar<T>(c.k);
      for (auto& x : values) x = v;
    }
    auto k = multiplicity_from_orbits<T>(G, ps, values);
    return DunklContext<T, R>(std::move(G), std::move(ps), std::move(k));
  } catch (const InvalidMultiplicity& e) {
    throw ConfigError(e.what());
  }
}

/// Stable 64-bit FNV-1a of the canonical config text, used as the cache key.
inline std::string config_key(const ContextConfig& c) {
  nlohmann::json j = c.raw;
  j.erase("N");
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Context cache: lambda_n tables as exact rational strings.

template <class T>
nlohmann::json scalar_to_json(const T& v) {
  if constexpr (std::is_same_v<T, CRational>) {
    if (v.is_real()) return to_string(v.re());
    return {{"re", to_string(v.re())}, {"im", to_string(v.im())}};
  } else {
    Complex c = ScalarTraits<T>::to_complex(v);
    return {{"re", c.real()}, {"im", c.imag()}};
  }
}

template <class T, class R>
nlohmann::json context_cache(const DunklContext<T, R>& ctx, const ContextConfig& c) {
  nlohmann::json j;
  j["config"] = c.raw;
  j["order"] = ctx.group().order();
  j["prepared_degree"] = ctx.prepared_degree();
  j["exact"] = ScalarTraits<T>::exact;
  nlohmann::json tables = nlohmann::json::array();
  for (int n = 1; n <= ctx.prepared_degree(); ++n) {
    const auto& h = ctx.H(n);
    nlohmann::json row;
    row["n"] = n;
    if (h.lambda) {
      nlohmann::json lam = nlohmann::json::array();
      for (const auto& v : h.lambda->coefficients) lam.push_back(scalar_to_json(v));
      row["lambda"] = lam;
    } else {
      row["lambda"] = nullptr;
    }
    tables.push_back(row);
  }
  j["lambda"] = tables;
  return j;
}

/// Installs cached lambda_n tables (exact mode only) before preparation.
/// Returns the number of degrees installed.
template <class T, class R>
int apply_context_cache(DunklContext<T, R>& ctx, const nlohmann::json& cache) {
  if constexpr (!ScalarTraits<T>::exact) {
    return 0;
  } else {
    if (!cache.value("exact", false) || cache.value("order", -1) != ctx.group().order()) return 0;
    int installed = 0;
    for (const auto& row : cache.at("lambda")) {
      if (row.at("lambda").is_null()) continue;
      GroupAlgebraElement<T> lam;
      for (const auto& v : row.at("lambda")) lam.coefficients.push_back(parse_config_scalar<T>(v));
      ctx.preset_lambda(row.at("n").get<int>(), std::move(lam));
      ++installed;
    }
    return installed;
  }
}

}  // namespace dunkl
