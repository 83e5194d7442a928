#pragma once

// Run configuration, read from a JSON document:
//
//   {
//     "module":   { "prime": 2, "variable": "x", "matrix": [["1", "0"], ["0", "1/(2x)"]] }
//              or { "prime": 2, "catalog": "exp", "params": { "alpha": "1" } },
//     "interval": { "log_radii": ["0", "2"] }  or  { "radii": ["1", "4"] },
//     "run":      { "depth": 256, "grid": 17, "max_denominator": 32, "mode": "exact",
//                   "method": "tail-min", "normalization": "factorial",
//                   "tolerance": 0.02, "fit_tolerance": 0.05, "window_start": 0.5,
//                   "rho": "0", "log_radius": "-1", "frobenius_order": 1,
//                   "seed": 1, "threads": 1, "max_bits": 2147483648 },
//     "output":   { "json": "...", "csv": "...", "svg": "...", "module": "..." }
//   }
//
// Every section but "module" is optional, and so is every key in "run" and
// "output". Unknown keys are rejected. Rationals are strings ("1/4", "0.25")
// or integers. A radius r that is an exact power of p maps to its exact
// exponent; any other radius maps to log_p r rounded to 12 significant
// digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicdm/catalog.hpp"
#include "padicdm/radius.hpp"

namespace padicdm {

struct ModuleSpec {
  long prime = 0;
  std::string variable = "x";
  std::vector<std::vector<std::string>> matrix;
  std::optional<std::string> catalog;
  std::map<std::string, std::string> params;
};

struct OutputSpec {
  std::optional<std::string> json;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::optional<std::string> module;
};

struct RunConfig {
  ModuleSpec module;
  std::optional<Interval> interval;  // catalog default when absent
  std::size_t depth = kDefaultDepth;
  std::size_t grid = 17;
  long max_denominator = 32;
  Mode mode = Mode::exact;
  Method method = Method::tail_min;
  Normalization normalization = Normalization::factorial;
  double tolerance = 0.02;      // boundedness slope tolerance
  double fit_tolerance = 0.05;  // polygon concavity and residual threshold
  double window_start = 0.5;
  std::optional<Rational> rho;
  std::optional<Rational> log_radius;
  unsigned frobenius_order = 1;
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
  std::size_t max_bits = RecursionOptions{}.max_bits;
  OutputSpec output;

  RecursionOptions recursion_options() const { return {.keep_numerators = false, .max_bits = max_bits}; }

  RadiusOptions radius_options() const {
    RadiusOptions o;
    o.depth = depth;
    o.method = method;
    o.mode = mode;
    o.normalization = normalization;
    o.window_start = window_start;
    o.recursion = recursion_options();
    return o;
  }
};

namespace detail {

using ConfigJson = nlohmann::json;

inline void reject_unknown(const ConfigJson& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw InvalidInput("config: \"" + where + "\" must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw InvalidInput("config: unknown key \"" + where + "." + it.key() + "\"");
  }
}

inline std::string config_string(const ConfigJson& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InvalidInput("config: \"" + key + "\" must be a string or an integer");
}

inline Rational config_rational(const ConfigJson& v, const std::string& key) {
  const std::string s = config_string(v, key);
  RationalFunction f = parse_rational_function(s).reduced();
  if (!(f.den() == LaurentPoly(1)) || f.num().span() > 1 || (!f.num().is_zero() && f.num().low() != 0))
    throw InvalidInput("config: \"" + key + "\" must be a rational number, got \"" + s + "\"");
  return f.num().coeff(0);
}

template <class T>
T config_unsigned(const ConfigJson& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InvalidInput("config: \"" + key + "\" must be a nonnegative integer");
  return static_cast<T>(v.get<long long>());
}

inline double config_double(const ConfigJson& v, const std::string& key) {
  if (!v.is_number()) throw InvalidInput("config: \"" + key + "\" must be a number");
  return v.get<double>();
}

inline std::pair<ConfigJson, ConfigJson> config_pair(const ConfigJson& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) throw InvalidInput("config: \"" + key + "\" must be a pair");
  return {v[0], v[1]};
}

}  // namespace detail

// log_p r, exact when r = p^k.
inline Rational log_radius_of(const Rational& r, long p) {
  if (r <= 0) throw InvalidInput("radius must be positive, got " + r.get_str());
  const long v = valuation(r, p);
  if (r == rational_pow(p, -v)) return Rational(-v);
  const double lg = std::log(r.get_d()) / std::log(static_cast<double>(p));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", lg);
  return detail::config_rational(std::string(buf), "radius");
}

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw InvalidInput("mode must be exact or float, got \"" + s + "\"");
}

inline Method parse_method(const std::string& s) {
  if (s == "tail-min") return Method::tail_min;
  if (s == "tail-slope") return Method::tail_slope;
  throw InvalidInput("method must be tail-min or tail-slope, got \"" + s + "\"");
}

inline Normalization parse_normalization(const std::string& s) {
  if (s == "factorial") return Normalization::factorial;
  if (s == "raw") return Normalization::raw;
  throw InvalidInput("normalization must be factorial or raw, got \"" + s + "\"");
}

inline void validate(const RunConfig& cfg) {
  if (cfg.mode == Mode::exact && cfg.method == Method::tail_slope)
    throw InvalidInput("tail-slope is a floating estimate; use mode float with it");
  if (cfg.depth < 16) throw InvalidInput("depth must be at least 16");
  if (cfg.grid < 3) throw InvalidInput("grid must be at least 3");
  if (cfg.max_denominator < 1) throw InvalidInput("max_denominator must be positive");
  if (!(cfg.tolerance > 0) || !(cfg.fit_tolerance > 0)) throw InvalidInput("tolerances must be positive");
  if (!(cfg.window_start > 0 && cfg.window_start < 1)) throw InvalidInput("window_start must be in (0, 1)");
  if (cfg.frobenius_order < 1) throw InvalidInput("frobenius_order must be at least 1");
}

inline RunConfig parse_config(std::string_view text) {
  detail::ConfigJson doc;
  try {
    doc = detail::ConfigJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  detail::reject_unknown(doc, "config", {"module", "interval", "run", "output"});
  if (!doc.contains("module")) throw InvalidInput("config: missing \"module\" section");

  RunConfig cfg;
  const auto& m = doc["module"];
  detail::reject_unknown(m, "module", {"prime", "variable", "matrix", "catalog", "params"});
  if (!m.contains("prime") || !m["prime"].is_number_integer()) throw InvalidInput("config: module.prime must be an integer");
  cfg.module.prime = Prime(m["prime"].get<long>());
  if (m.contains("variable")) cfg.module.variable = detail::config_string(m["variable"], "module.variable");
  if (m.contains("catalog")) cfg.module.catalog = detail::config_string(m["catalog"], "module.catalog");
  if (m.contains("params")) {
    if (!m["params"].is_object()) throw InvalidInput("config: module.params must be an object");
    for (auto it = m["params"].begin(); it != m["params"].end(); ++it)
      cfg.module.params[it.key()] = detail::config_string(it.value(), "module.params." + it.key());
  }
  if (m.contains("matrix")) {
    if (!m["matrix"].is_array()) throw InvalidInput("config: module.matrix must be a list of rows");
    for (const auto& row : m["matrix"]) {
      if (!row.is_array()) throw InvalidInput("config: every matrix row must be a list");
      std::vector<std::string> r;
      for (const auto& e : row) r.push_back(detail::config_string(e, "module.matrix"));
      cfg.module.matrix.push_back(std::move(r));
    }
  }
  if (cfg.module.catalog.has_value() == !cfg.module.matrix.empty())
    throw InvalidInput("config: module needs exactly one of \"matrix\" and \"catalog\"");
  if (!cfg.module.catalog && !cfg.module.params.empty())
    throw InvalidInput("config: module.params only applies to catalog modules");

  if (doc.contains("interval")) {
    const auto& iv = doc["interval"];
    detail::reject_unknown(iv, "interval", {"radii", "log_radii"});
    if (iv.contains("radii") == iv.contains("log_radii"))
      throw InvalidInput("config: interval needs exactly one of \"radii\" and \"log_radii\"");
    if (iv.contains("log_radii")) {
      auto [a, b] = detail::config_pair(iv["log_radii"], "interval.log_radii");
      cfg.interval = Interval(detail::config_rational(a, "interval.log_radii"),
                              detail::config_rational(b, "interval.log_radii"));
    } else {
      auto [a, b] = detail::config_pair(iv["radii"], "interval.radii");
      cfg.interval = Interval(log_radius_of(detail::config_rational(a, "interval.radii"), cfg.module.prime),
                              log_radius_of(detail::config_rational(b, "interval.radii"), cfg.module.prime));
    }
  }

  if (doc.contains("run")) {
    const auto& r = doc["run"];
    detail::reject_unknown(r, "run",
                           {"depth", "grid", "max_denominator", "mode", "method", "normalization", "tolerance",
                            "fit_tolerance", "window_start", "rho", "log_radius", "frobenius_order", "seed",
                            "threads", "max_bits"});
    if (r.contains("depth")) cfg.depth = detail::config_unsigned<std::size_t>(r["depth"], "run.depth");
    if (r.contains("grid")) cfg.grid = detail::config_unsigned<std::size_t>(r["grid"], "run.grid");
    if (r.contains("max_denominator"))
      cfg.max_denominator = detail::config_unsigned<long>(r["max_denominator"], "run.max_denominator");
    if (r.contains("mode")) cfg.mode = parse_mode(detail::config_string(r["mode"], "run.mode"));
    if (r.contains("method")) cfg.method = parse_method(detail::config_string(r["method"], "run.method"));
    if (r.contains("normalization"))
      cfg.normalization = parse_normalization(detail::config_string(r["normalization"], "run.normalization"));
    if (r.contains("tolerance")) cfg.tolerance = detail::config_double(r["tolerance"], "run.tolerance");
    if (r.contains("fit_tolerance")) cfg.fit_tolerance = detail::config_double(r["fit_tolerance"], "run.fit_tolerance");
    if (r.contains("window_start")) cfg.window_start = detail::config_double(r["window_start"], "run.window_start");
    if (r.contains("rho")) cfg.rho = detail::config_rational(r["rho"], "run.rho");
    if (r.contains("log_radius")) cfg.log_radius = detail::config_rational(r["log_radius"], "run.log_radius");
    if (r.contains("frobenius_order"))
      cfg.frobenius_order = detail::config_unsigned<unsigned>(r["frobenius_order"], "run.frobenius_order");
    if (r.contains("seed")) cfg.seed = detail::config_unsigned<std::uint64_t>(r["seed"], "run.seed");
    if (r.contains("max_bits")) cfg.max_bits = detail::config_unsigned<std::size_t>(r["max_bits"], "run.max_bits");
    if (r.contains("threads")) cfg.threads = detail::config_unsigned<unsigned>(r["threads"], "run.threads");
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    detail::reject_unknown(o, "output", {"json", "csv", "svg", "module"});
    if (o.contains("json")) cfg.output.json = detail::config_string(o["json"], "output.json");
    if (o.contains("csv")) cfg.output.csv = detail::config_string(o["csv"], "output.csv");
    if (o.contains("svg")) cfg.output.svg = detail::config_string(o["svg"], "output.svg");
    if (o.contains("module")) cfg.output.module = detail::config_string(o["module"], "output.module");
  }
  validate(cfg);
  return cfg;
}

inline RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// The module a config describes, and its catalog entry if it names one.
struct ResolvedModule {
  DiffModule module;
  std::optional<CatalogEntry> entry;
};

inline ResolvedModule build_module(const RunConfig& cfg) {
  if (cfg.module.catalog) {
    auto e = catalog_get(*cfg.module.catalog, cfg.module.prime, cfg.module.params, cfg.interval);
    DiffModule M = e.module;
    return {std::move(M), std::move(e)};
  }
  if (!cfg.interval) throw InvalidInput("config: a matrix module needs an \"interval\" section");
  const std::size_t mu = cfg.module.matrix.size();
  RationalFunctionMatrix G(mu, mu);
  for (std::size_t i = 0; i < mu; ++i) {
    if (cfg.module.matrix[i].size() != mu) throw InvalidInput("config: module.matrix must be square");
    for (std::size_t j = 0; j < mu; ++j) G(i, j) = parse_rational_function(cfg.module.matrix[i][j], cfg.module.variable).reduced();
  }
  return {DiffModule(Prime(cfg.module.prime), std::move(G), *cfg.interval), std::nullopt};
}

// A config document that rebuilds M exactly.
inline nlohmann::ordered_json module_config(const DiffModule& M, std::string_view var = "x") {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < M.rank(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < M.rank(); ++j) row.push_back(to_string(M.matrix()(i, j), var));
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["module"] = {{"prime", M.prime().value()}, {"variable", std::string(var)}, {"matrix", std::move(rows)}};
  doc["interval"] = {{"log_radii", {M.interval().lo.get_str(), M.interval().hi.get_str()}}};
  return doc;
}

}  // namespace padicdm
