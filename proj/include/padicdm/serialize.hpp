#pragma once

// JSON form of every report. Field order is fixed; rationals are strings;
// doubles carry 12 significant digits; bottom and non-finite values are null.

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "padicdm/catalog.hpp"
#include "padicdm/diagnostics.hpp"
#include "padicdm/spectral.hpp"

namespace padicdm {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline Json json_rational(const Rational& q) { return q.get_str(); }

inline Json json_log(const LogMagnitude& m) { return m.is_bottom() ? Json(nullptr) : json_rational(m.value()); }

inline Json json_interval(const Interval& I) { return {{"lo", json_rational(I.lo)}, {"hi", json_rational(I.hi)}}; }

inline Json json_matrix(const RationalFunctionMatrix& m, std::string_view var = "x") {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j), var));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json json_module(const DiffModule& M, std::string_view var = "x") {
  return {{"prime", M.prime().value()}, {"rank", M.rank()}, {"interval", json_interval(M.interval())},
          {"matrix", json_matrix(M.matrix(), var)}};
}

template <class T, class F>
Json json_sequence(const std::vector<T>& v, F&& f) {
  Json out = Json::array();
  for (std::size_t n = 0; n < v.size(); ++n) out.push_back({{"n", n}, {"value", f(v[n])}});
  return out;
}

inline Json to_json(const RadiusEstimate& e) {
  Json j;
  j["rho"] = json_rational(e.rho);
  j["log_radius"] = json_double(e.log_radius);
  j["log_radius_exact"] = e.log_radius_exact ? json_rational(*e.log_radius_exact) : Json(nullptr);
  j["method"] = to_string(e.method);
  j["mode"] = to_string(e.mode);
  j["depth"] = e.depth;
  j["tail_min"] = json_double(e.tail_min);
  j["tail_slope"] = json_double(e.tail_slope);
  j["discrepancy"] = json_double(e.discrepancy);
  j["capped"] = e.capped;
  return j;
}

inline Json to_json(const ConvergencePolygon& poly) {
  Json segs = Json::array();
  for (const auto& s : poly.segments) {
    segs.push_back({{"from", json_rational(s.from)},
                    {"to", json_rational(s.to)},
                    {"slope", json_rational(s.slope)},
                    {"raw_slope", json_double(s.raw_slope)},
                    {"intercept", json_rational(s.intercept)},
                    {"raw_intercept", json_double(s.raw_intercept)}});
  }
  Json samples = Json::array();
  for (const auto& s : poly.samples) samples.push_back(to_json(s));
  Json j;
  j["domain"] = json_interval(poly.domain);
  j["max_denominator"] = poly.max_denominator;
  j["segments"] = std::move(segs);
  j["concavity_defect"] = json_double(poly.concavity_defect);
  j["fit_residual"] = json_double(poly.fit_residual);
  j["warnings"] = poly.warnings;
  j["samples"] = std::move(samples);
  return j;
}

inline Json to_json(const RobbaCheck& r) {
  return {{"non_robba", r.non_robba}, {"margin", json_rational(r.margin)}, {"at", json_rational(r.at)}};
}

inline Json to_json(const BoundednessReport& r) {
  Json j;
  j["rho"] = json_rational(r.rho);
  j["depth"] = r.depth;
  j["log_radius"] = json_double(r.log_radius);
  j["log_radius_exact"] = r.log_radius_exact ? json_rational(*r.log_radius_exact) : Json(nullptr);
  j["classification"] = to_string(r.classification);
  j["tolerance"] = json_double(r.tolerance);
  j["max_b"] = json_double(r.max_b);
  j["argmax"] = r.argmax;
  j["tail_slope"] = json_double(r.tail_slope);
  j["slope_stderr"] = json_double(r.slope_stderr);
  j["b"] = r.b_exact.empty() ? json_sequence(r.b, json_double) : json_sequence(r.b_exact, json_log);
  return j;
}

inline Json to_json(const TheoremReport& t) {
  Json reports = Json::array();
  for (const auto& r : t.reports) reports.push_back(to_json(r));
  Json j;
  j["verdict"] = to_string(t.verdict);
  j["one_slope"] = t.one_slope;
  j["robba"] = to_json(t.robba);
  j["polygon"] = to_json(t.polygon);
  j["reports"] = std::move(reports);
  return j;
}

inline Json to_json(const FrobeniusReport& f) {
  Json pts = Json::array();
  for (const auto& p : f.points) {
    pts.push_back({{"rho", json_rational(p.rho)},
                   {"log_radius_pullback", json_double(p.log_radius_pullback)},
                   {"log_radius_antecedent", json_double(p.log_radius_antecedent)},
                   {"residual", json_double(p.residual)},
                   {"excluded", p.excluded}});
  }
  return {{"order", f.order}, {"holds", f.holds}, {"max_residual", json_double(f.max_residual)},
          {"tolerance", json_double(f.tolerance)}, {"points", std::move(pts)}};
}

inline Json to_json(const CyclicReduction& c, std::string_view var = "x") {
  Json q = Json::array();
  for (const auto& f : c.op.q) q.push_back(to_string(f, var));
  Json v = Json::array();
  for (const auto& f : c.vector) v.push_back(to_string(f, var));
  Json pieces = Json::array();
  for (const auto& J : c.validity) pieces.push_back(json_interval(J));
  Json j;
  j["order"] = c.op.order();
  j["q"] = std::move(q);
  j["vector"] = std::move(v);
  j["gauge"] = json_matrix(c.gauge, var);
  j["cyclic_basis"] = json_matrix(c.cyclic_basis, var);
  j["validity"] = std::move(pieces);
  j["attempts"] = c.attempts;
  j["seed"] = c.seed;
  return j;
}

inline Json to_json(const CatalogEntry& e) {
  Json lines = Json::array();
  for (const auto& l : e.lines) lines.push_back({{"slope", json_rational(l.slope)}, {"intercept", json_rational(l.intercept)}});
  Json j;
  j["name"] = e.name;
  j["params"] = e.params;
  j["module"] = json_module(e.module);
  j["expected_lines"] = std::move(lines);
  j["robba"] = e.robba;
  j["boundedness"] = e.boundedness;
  j["basis"] = to_string(e.basis);
  j["note"] = e.note;
  return j;
}

// Wraps a payload with the schema version and the command that produced it.
inline Json envelope(std::string_view command, Json payload) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["result"] = std::move(payload);
  return j;
}

}  // namespace padicdm
