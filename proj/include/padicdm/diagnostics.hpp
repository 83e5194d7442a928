#pragma once

// Numerical verification that the generic solution matrix is bounded on the
// open disk of radius R: sup_n ||G_n/n!||_r R^n < infinity, read as a trend
// of b_n = log_p ||G_n/n!||_r + n log_p R over a finite depth.

#include <optional>
#include <variant>
#include <vector>

#include "padicdm/radius.hpp"

namespace padicdm {

enum class Boundedness { bounded_decaying, bounded_plateau, suspected_unbounded, inconclusive };

inline const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded_decaying:
      return "bounded-decaying";
    case Boundedness::bounded_plateau:
      return "bounded-plateau";
    case Boundedness::suspected_unbounded:
      return "suspected-unbounded";
    case Boundedness::inconclusive:
      break;
  }
  return "inconclusive";
}

inline bool is_bounded(Boundedness b) {
  return b == Boundedness::bounded_decaying || b == Boundedness::bounded_plateau;
}

inline constexpr double kDefaultBoundednessTolerance = 0.02;
// b_n beyond this many log_p units is treated as numerically unbounded.
inline constexpr double kHugeGuard = 1e6;

// The fit is too noisy to resolve the tolerance when the slope's standard
// error exceeds half of it.
inline Boundedness classify(double max_b, double tail_slope, double slope_stderr, double tol) {
  if (slope_stderr > tol / 2) return Boundedness::inconclusive;
  if (tail_slope < -tol) return Boundedness::bounded_decaying;
  if (tail_slope <= tol) return max_b < kHugeGuard ? Boundedness::bounded_plateau : Boundedness::inconclusive;
  return Boundedness::suspected_unbounded;
}

struct BoundednessReport {
  Rational rho;
  std::size_t depth = 0;
  double log_radius = 0;
  std::optional<Rational> log_radius_exact;
  std::vector<double> b;
  std::vector<LogMagnitude> b_exact;  // filled when log R is exact
  double max_b = 0;
  std::size_t argmax = 0;
  double tail_slope = 0;
  double slope_stderr = 0;
  double tolerance = kDefaultBoundednessTolerance;
  Boundedness classification = Boundedness::inconclusive;
};

namespace detail {

inline void finish_report(BoundednessReport& rep, double window_start) {
  rep.max_b = rep.b.front();
  rep.argmax = 0;
  for (std::size_t n = 1; n < rep.b.size(); ++n) {
    if (rep.b[n] > rep.max_b) {
      rep.max_b = rep.b[n];
      rep.argmax = n;
    }
  }
  std::vector<double> xs, ys;
  for (std::size_t n = window_begin(rep.depth, window_start); n <= rep.depth; ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(rep.b[n]);
  }
  LinearFit fit = least_squares(xs, ys);
  // Fewer than two nonzero G_n in the window: nothing grows.
  rep.tail_slope = fit.points >= 2 ? fit.slope : 0.0;
  rep.slope_stderr = fit.points >= 2 ? fit.slope_stderr : 0.0;
  rep.classification = classify(rep.max_b, rep.tail_slope, rep.slope_stderr, rep.tolerance);
}

inline void check_bounded_args(const DiffModule& M, const RecursionState& state, const Rational& rho, std::size_t depth,
                               double log_radius) {
  if (!M.interval().contains(rho))
    throw DomainError("log-radius " + rho.get_str() + " outside the open interval " + M.describe_interval());
  if (depth < 2) throw InvalidInput("boundedness check needs depth >= 2");
  if (state.depth() < depth) throw InvalidInput("recursion state is shallower than the requested depth");
  if (log_radius > rho.get_d()) throw InvalidInput("log R must not exceed rho");
}

}  // namespace detail

// Exact log R: every b_n is an exact rational.
inline BoundednessReport bounded_report(const DiffModule& M, const RecursionState& state, const Rational& rho,
                                        std::size_t depth, const Rational& log_radius,
                                        double tol = kDefaultBoundednessTolerance, double window_start = 0.5) {
  detail::check_bounded_args(M, state, rho, depth, log_radius.get_d());
  if (log_radius > rho) throw InvalidInput("log R must not exceed rho");
  BoundednessReport rep;
  rep.rho = rho;
  rep.depth = depth;
  rep.log_radius = log_radius.get_d();
  rep.log_radius_exact = log_radius;
  rep.tolerance = tol;
  const long p = M.prime();
  for (std::size_t n = 0; n <= depth; ++n) {
    LogMagnitude b = state.matrix_norm(n, rho) - log_factorial(n, p) + Rational(log_radius * static_cast<long>(n));
    rep.b.push_back(b.to_double());
    rep.b_exact.push_back(std::move(b));
  }
  detail::finish_report(rep, window_start);
  return rep;
}

// Float log R.
inline BoundednessReport bounded_report(const DiffModule& M, const RecursionState& state, const Rational& rho,
                                        std::size_t depth, double log_radius, double tol = kDefaultBoundednessTolerance,
                                        double window_start = 0.5) {
  detail::check_bounded_args(M, state, rho, depth, log_radius);
  BoundednessReport rep;
  rep.rho = rho;
  rep.depth = depth;
  rep.log_radius = log_radius;
  rep.tolerance = tol;
  const long p = M.prime();
  const double r = rho.get_d();
  for (std::size_t n = 0; n <= depth; ++n) {
    rep.b.push_back(state.matrix_norm(n, r) - log_factorial(n, p).get_d() + static_cast<double>(n) * log_radius);
  }
  rep.b.front() = 0.0;
  detail::finish_report(rep, window_start);
  return rep;
}

enum class Verdict { verified, numerically_unclear, hypotheses_fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "theorem-applies-and-verified";
    case Verdict::numerically_unclear:
      return "theorem-applies-numerically-unclear";
    case Verdict::hypotheses_fail:
      break;
  }
  return "hypotheses-fail";
}

struct TheoremReport {
  ConvergencePolygon polygon;
  bool one_slope = false;
  RobbaCheck robba;
  std::vector<BoundednessReport> reports;
  Verdict verdict = Verdict::hypotheses_fail;
};

struct TheoremOptions {
  PolygonOptions polygon{.grid = 9};
  double tolerance = kDefaultBoundednessTolerance;
};

// Polygon -> one slope and non-Robba -> boundedness at every grid point with
// log R taken from the fitted polygon (the single-slope form |alpha| r^beta).
inline TheoremReport theorem_check(const DiffModule& M, const TheoremOptions& opts = {}) {
  const auto& ropts = opts.polygon.radius;
  const auto state = gn_sequence(M, ropts.depth, ropts.recursion);
  TheoremReport rep{polygon_estimate(M, state, opts.polygon), false, {}, {}, Verdict::hypotheses_fail};
  rep.one_slope = one_slope(rep.polygon);
  rep.robba = is_non_robba(rep.polygon);
  if (!rep.one_slope || !rep.robba.non_robba) return rep;

  rep.reports.resize(rep.polygon.samples.size());
  parallel_for(rep.reports.size(), opts.polygon.threads, [&](std::size_t i) {
    const Rational& rho = rep.polygon.samples[i].rho;
    if (ropts.mode == Mode::exact) {
      rep.reports[i] = bounded_report(M, state, rho, ropts.depth, rep.polygon.evaluate(rho), opts.tolerance,
                                      ropts.window_start);
    } else {
      rep.reports[i] = bounded_report(M, state, rho, ropts.depth, rep.polygon.evaluate(rho.get_d()), opts.tolerance,
                                      ropts.window_start);
    }
  });
  bool all_bounded = true;
  for (const auto& r : rep.reports) all_bounded = all_bounded && is_bounded(r.classification);
  rep.verdict = all_bounded ? Verdict::verified : Verdict::numerically_unclear;
  return rep;
}

}  // namespace padicdm
