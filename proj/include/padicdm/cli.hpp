#pragma once

// Command-line front end. run_cli is the whole program; the executable only
// forwards argv and the standard streams.
//
// Exit status: 0 success, 1 input or validation error, 2 completed with an
// inconclusive or numerically unclear verdict, 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padicdm/config.hpp"
#include "padicdm/serialize.hpp"
#include "padicdm/svg.hpp"

namespace padicdm {

inline constexpr const char* kThreadsEnv = "PADICDM_THREADS";

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_unclear = 2, exit_budget = 3 };

namespace detail {

struct CliFlags {
  std::string config;
  std::optional<long> prime;
  std::optional<std::string> catalog;
  std::vector<std::string> params;
  std::optional<std::string> matrix;
  std::optional<std::string> variable;
  std::vector<std::string> log_radii;
  std::vector<std::string> radii;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> grid;
  std::optional<long> max_denominator;
  std::optional<std::string> mode;
  std::optional<std::string> method;
  std::optional<std::string> normalization;
  std::optional<double> tolerance;
  std::optional<std::string> rho;
  std::optional<std::string> log_radius;
  std::optional<unsigned> order;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> max_bits;
  std::optional<std::string> json_out;
  std::optional<std::string> csv_out;
  std::optional<std::string> svg_out;
  std::optional<std::string> module_out;
};

inline void add_common_options(CLI::App& cmd, CliFlags& f) {
  cmd.add_option("-c,--config", f.config, "JSON run configuration");
  cmd.add_option("-p,--prime", f.prime, "the prime p");
  cmd.add_option("--catalog", f.catalog, "catalog entry name");
  cmd.add_option("--param", f.params, "catalog parameter key=value (repeatable)");
  cmd.add_option("--matrix", f.matrix, "matrix rows separated by ';', entries by ','");
  cmd.add_option("--variable", f.variable, "variable name in --matrix");
  cmd.add_option("--log-radii", f.log_radii, "interval as log_p radii: LO HI")->expected(2);
  cmd.add_option("--radii", f.radii, "interval as radii: LO HI")->expected(2);
  cmd.add_option("-N,--depth", f.depth, "number of Taylor terms");
  cmd.add_option("--grid", f.grid, "number of interior grid points");
  cmd.add_option("--max-denominator", f.max_denominator, "slope snapping denominator bound");
  cmd.add_option("--mode", f.mode, "exact or float");
  cmd.add_option("--method", f.method, "tail-min or tail-slope");
  cmd.add_option("--normalization", f.normalization, "factorial or raw");
  cmd.add_option("--tolerance", f.tolerance, "boundedness slope tolerance");
  cmd.add_option("--rho", f.rho, "log-radius for single-point commands");
  cmd.add_option("--log-radius", f.log_radius, "log R for the bounded command");
  cmd.add_option("--order", f.order, "Frobenius order h");
  cmd.add_option("--seed", f.seed, "cyclic vector search seed");
  cmd.add_option("-j,--threads", f.threads, std::string("worker threads (overrides ") + kThreadsEnv + ")");
  cmd.add_option("--max-bits", f.max_bits, "abort when the recursion state exceeds this many bits");
  cmd.add_option("--json", f.json_out, "write JSON here instead of standard output");
  cmd.add_option("--csv", f.csv_out, "write CSV here instead of standard output");
  cmd.add_option("--svg", f.svg_out, "write an SVG plot here");
  cmd.add_option("--out-module", f.module_out, "write the transformed module config here");
}

inline std::vector<std::string> split_trim(const std::string& s, char sep) {
  std::vector<std::string> out;
  for (auto& part : split_list(s, sep)) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
  }
  return out;
}

// Flags override the config file key by key.
inline RunConfig resolve_config(const CliFlags& f) {
  nlohmann::json doc = nlohmann::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw InvalidInput("cannot read config file " + f.config);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput(std::string("config: ") + e.what());
    }
  }
  auto& m = doc["module"];
  if (f.prime) m["prime"] = *f.prime;
  if (f.variable) m["variable"] = *f.variable;
  if (f.catalog) {
    m.erase("matrix");
    m["catalog"] = *f.catalog;
  }
  if (f.matrix) {
    m.erase("catalog");
    m.erase("params");
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : split_trim(*f.matrix, ';')) rows.push_back(split_trim(row, ','));
    m["matrix"] = rows;
  }
  for (const auto& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("--param expects key=value, got \"" + kv + "\"");
    m["params"][kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (!f.log_radii.empty()) doc["interval"] = {{"log_radii", f.log_radii}};
  if (!f.radii.empty()) doc["interval"] = {{"radii", f.radii}};
  auto set_run = [&](const char* key, const auto& v) {
    if (v) doc["run"][key] = *v;
  };
  set_run("depth", f.depth);
  set_run("grid", f.grid);
  set_run("max_denominator", f.max_denominator);
  set_run("mode", f.mode);
  set_run("method", f.method);
  set_run("normalization", f.normalization);
  set_run("tolerance", f.tolerance);
  set_run("rho", f.rho);
  set_run("log_radius", f.log_radius);
  set_run("frobenius_order", f.order);
  set_run("seed", f.seed);
  set_run("max_bits", f.max_bits);
  auto set_out = [&](const char* key, const auto& v) {
    if (v) doc["output"][key] = *v;
  };
  set_out("json", f.json_out);
  set_out("csv", f.csv_out);
  set_out("svg", f.svg_out);
  set_out("module", f.module_out);

  RunConfig cfg = parse_config(doc.dump());
  if (f.threads) {
    cfg.threads = *f.threads;
  } else if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw InvalidInput(std::string(kThreadsEnv) + " must be a nonnegative integer");
    cfg.threads = static_cast<unsigned>(v);
  }
  return cfg;
}

inline unsigned thread_count(const RunConfig& cfg) { return cfg.threads.value_or(1); }

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

inline void emit(const std::optional<std::string>& path, std::ostream& out, const std::string& text) {
  if (path) {
    write_text(*path, text);
  } else {
    out << text;
  }
}

inline void emit_json(const RunConfig& cfg, std::ostream& out, std::string_view command, Json payload) {
  emit(cfg.output.json, out, envelope(command, std::move(payload)).dump(2) + "\n");
}

inline PolygonOptions polygon_options(const RunConfig& cfg) {
  PolygonOptions o;
  o.grid = cfg.grid;
  o.max_denominator = cfg.max_denominator;
  o.radius = cfg.radius_options();
  o.tolerance = cfg.fit_tolerance;
  o.threads = thread_count(cfg);
  return o;
}

inline Rational point_of(const RunConfig& cfg, const DiffModule& M) {
  return cfg.rho ? *cfg.rho : M.interval().midpoint();
}

inline std::string csv_double(double v) {
  if (!std::isfinite(v)) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  const Rational rho = point_of(cfg, M);
  const auto state = gn_sequence(M, cfg.depth, cfg.recursion_options());
  std::ostringstream csv;
  csv << "n,log_norm,exact\n";
  if (cfg.mode == Mode::exact) {
    const auto seq = norm_sequence(M, state, rho, cfg.normalization);
    for (std::size_t n = 0; n < seq.entries.size(); ++n) {
      const auto& e = seq.entries[n];
      csv << n << "," << csv_double(e.to_double()) << "," << (e.is_bottom() ? "" : e.value().get_str()) << "\n";
    }
  } else {
    check_closure(M, rho);
    const auto seq = norm_sequence_float(M, state, rho.get_d(), cfg.normalization);
    for (std::size_t n = 0; n < seq.size(); ++n) csv << n << "," << csv_double(seq[n]) << ",\n";
  }
  emit(cfg.output.csv, out, csv.str());
  return exit_ok;
}

inline int cmd_radius(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  const auto opts = cfg.radius_options();
  const auto state = gn_sequence(M, cfg.depth, cfg.recursion_options());
  std::vector<Rational> pts = cfg.rho ? std::vector<Rational>{*cfg.rho} : sample_grid(M.interval(), cfg.grid);
  const auto est = radius_samples(M, state, pts, opts, thread_count(cfg));
  Json arr = Json::array();
  for (const auto& e : est) arr.push_back(to_json(e));
  emit_json(cfg, out, "radius", {{"module", json_module(M, cfg.module.variable)}, {"estimates", std::move(arr)}});
  return exit_ok;
}

inline int cmd_polygon(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  const auto poly = polygon_estimate(M, polygon_options(cfg));
  const auto robba = is_non_robba(poly);
  Json j = to_json(poly);
  j["one_slope"] = one_slope(poly);
  j["robba"] = to_json(robba);
  emit_json(cfg, out, "polygon", {{"module", json_module(M, cfg.module.variable)}, {"polygon", std::move(j)}});
  if (cfg.output.svg) write_text(*cfg.output.svg, polygon_svg(poly));
  return exit_ok;
}

inline int cmd_bounded(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  const Rational rho = point_of(cfg, M);
  const auto state = gn_sequence(M, cfg.depth, cfg.recursion_options());
  BoundednessReport rep;
  if (cfg.log_radius) {
    rep = bounded_report(M, state, rho, cfg.depth, *cfg.log_radius, cfg.tolerance, cfg.window_start);
  } else {
    const auto est = radius_estimate(M, state, rho, cfg.radius_options());
    rep = est.log_radius_exact
              ? bounded_report(M, state, rho, cfg.depth, *est.log_radius_exact, cfg.tolerance, cfg.window_start)
              : bounded_report(M, state, rho, cfg.depth, est.log_radius, cfg.tolerance, cfg.window_start);
  }
  emit_json(cfg, out, "bounded", {{"module", json_module(M, cfg.module.variable)}, {"report", to_json(rep)}});
  if (cfg.output.svg) write_text(*cfg.output.svg, bounded_svg(rep));
  return rep.classification == Boundedness::inconclusive ? exit_unclear : exit_ok;
}

inline int cmd_theorem(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  TheoremOptions opts;
  opts.polygon = polygon_options(cfg);
  opts.tolerance = cfg.tolerance;
  const auto rep = theorem_check(M, opts);
  emit_json(cfg, out, "theorem", {{"module", json_module(M, cfg.module.variable)}, {"theorem", to_json(rep)}});
  if (cfg.output.svg) write_text(*cfg.output.svg, polygon_svg(rep.polygon));
  return rep.verdict == Verdict::numerically_unclear ? exit_unclear : exit_ok;
}

inline int cmd_cyclic(const RunConfig& cfg, std::ostream& out) {
  const auto M = build_module(cfg).module;
  const auto red = cyclic_vector(M, {.seed = cfg.seed});
  Json j = to_json(red, cfg.module.variable);
  if (cfg.rho) {
    const auto y = young_radius(red.op, *cfg.rho);
    j["young"] = {{"rho", json_rational(*cfg.rho)},
                  {"log_radius", y.log_radius ? json_rational(*y.log_radius) : Json(nullptr)},
                  {"applicable", y.applicable}};
  }
  emit_json(cfg, out, "cyclic", {{"module", json_module(M, cfg.module.variable)}, {"cyclic", std::move(j)}});
  return exit_ok;
}

inline int cmd_pullback(const RunConfig& cfg, std::ostream& out) {
  const auto M = frobenius_pullback(build_module(cfg).module, cfg.frobenius_order);
  const std::string text = module_config(M, cfg.module.variable).dump(2) + "\n";
  emit(cfg.output.module ? cfg.output.module : cfg.output.json, out, text);
  return exit_ok;
}

inline int cmd_frobenius(const RunConfig& cfg, std::ostream& out) {
  const auto N = build_module(cfg).module;
  const auto rep =
      frobenius_radius_check(N, cfg.frobenius_order, cfg.grid, cfg.radius_options(), cfg.fit_tolerance, thread_count(cfg));
  emit_json(cfg, out, "frobenius", {{"module", json_module(N, cfg.module.variable)}, {"frobenius", to_json(rep)}});
  return exit_ok;
}

inline int cmd_catalog(const CliFlags& f, std::ostream& out) {
  if (!f.catalog) {
    Json arr = Json::array();
    for (const auto& c : catalog_list())
      arr.push_back({{"name", c.name}, {"params", c.params}, {"description", c.description}});
    out << envelope("catalog", std::move(arr)).dump(2) << "\n";
    return exit_ok;
  }
  const RunConfig cfg = resolve_config(f);
  const auto entry = build_module(cfg).entry;
  emit_json(cfg, out, "catalog", to_json(*entry));
  return exit_ok;
}

inline void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << nlohmann::ordered_json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-adic differential module toolkit: Taylor norms, generic radius, convergence polygon"};
  app.require_subcommand(1);
  detail::CliFlags flags;
  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands{
      {"norms", "CSV of log_p ||G_n/n!|| at --rho"},
      {"radius", "radius estimates on the grid (or at --rho)"},
      {"polygon", "fitted convergence polygon, JSON and optional SVG"},
      {"bounded", "boundedness report at --rho for --log-radius (default: the estimate)"},
      {"theorem", "one-slope and non-Robba check, then boundedness on the grid"},
      {"cyclic", "cyclic vector, scalar operator and gauge"},
      {"pullback", "write the --order fold Frobenius pullback as a config"},
      {"frobenius", "check the pullback radius relation on the grid"},
      {"catalog", "list catalog entries, or show one with --catalog"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) {
    subs[c.name] = app.add_subcommand(c.name, c.help);
    detail::add_common_options(*subs[c.name], flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    detail::report_error(err, "invalid-input", e.what());
    return exit_input;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "catalog") return detail::cmd_catalog(flags, out);
    const RunConfig cfg = detail::resolve_config(flags);
    if (cmd == "norms") return detail::cmd_norms(cfg, out);
    if (cmd == "radius") return detail::cmd_radius(cfg, out);
    if (cmd == "polygon") return detail::cmd_polygon(cfg, out);
    if (cmd == "bounded") return detail::cmd_bounded(cfg, out);
    if (cmd == "theorem") return detail::cmd_theorem(cfg, out);
    if (cmd == "cyclic") return detail::cmd_cyclic(cfg, out);
    if (cmd == "pullback") return detail::cmd_pullback(cfg, out);
    return detail::cmd_frobenius(cfg, out);
  } catch (const BudgetExceeded& e) {
    detail::report_error(err, e.kind(), e.what());
    return exit_budget;
  } catch (const Error& e) {
    detail::report_error(err, e.kind(), e.what());
    return exit_input;
  } catch (const std::exception& e) {
    detail::report_error(err, "internal", e.what());
    return exit_input;
  }
}

}  // namespace padicdm
