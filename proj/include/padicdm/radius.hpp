#pragma once

// Generic radius of convergence R(M, r) from the tail of the normalized
// Taylor norms, and the concave convergence polygon rho -> log_p R.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "padicdm/diffmod.hpp"
#include "padicdm/fit.hpp"
#include "padicdm/parallel.hpp"
#include "padicdm/rational_approx.hpp"

namespace padicdm {

enum class Method { tail_min, tail_slope };
enum class Mode { exact, floating };

inline const char* to_string(Method m) { return m == Method::tail_min ? "tail-min" : "tail-slope"; }
inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

struct RadiusOptions {
  std::size_t depth = kDefaultDepth;
  Method method = Method::tail_min;
  Mode mode = Mode::exact;
  // factorial: ||G_n/n!||, the solution-matrix coefficients. raw: ||G_n||.
  Normalization normalization = Normalization::factorial;
  // The liminf is read off the window [window_start * N, N].
  double window_start = 0.5;
  RecursionOptions recursion{};
};

struct RadiusEstimate {
  Rational rho;
  double log_radius = 0;                    // selected method, capped at rho
  std::optional<Rational> log_radius_exact;  // exact-mode tail-min, capped
  Method method = Method::tail_min;
  Mode mode = Mode::exact;
  std::size_t depth = 0;
  double tail_min = 0;
  double tail_slope = 0;
  double discrepancy = 0;
  bool capped = false;
};

namespace detail {

inline std::size_t window_begin(std::size_t depth, double start) {
  auto b = static_cast<std::size_t>(std::ceil(start * static_cast<double>(depth)));
  return std::max<std::size_t>(1, std::min(b, depth));
}

inline void check_radius_args(const DiffModule& M, const Rational& rho, const RadiusOptions& opts) {
  if (opts.depth < 16) throw InvalidInput("radius estimation needs depth >= 16");
  if (!(opts.window_start > 0 && opts.window_start < 1)) throw InvalidInput("tail window start must be in (0, 1)");
  if (!M.interval().contains(rho))
    throw DomainError("log-radius " + rho.get_str() + " outside the open interval " + M.describe_interval());
}

}  // namespace detail

inline RadiusEstimate radius_estimate(const DiffModule& M, const RecursionState& state, const Rational& rho,
                                      const RadiusOptions& opts = {}) {
  detail::check_radius_args(M, rho, opts);
  if (state.depth() < opts.depth) throw InvalidInput("recursion state is shallower than the requested depth");
  const std::size_t N = opts.depth;
  const std::size_t begin = detail::window_begin(N, opts.window_start);
  const double rho_d = rho.get_d();
  const long p = M.prime();

  RadiusEstimate est;
  est.rho = rho;
  est.method = opts.method;
  est.mode = opts.mode;
  est.depth = N;

  std::vector<double> xs, ys;
  double tail_min = std::numeric_limits<double>::infinity();
  if (opts.mode == Mode::exact) {
    std::optional<Rational> best;
    for (std::size_t n = begin; n <= N; ++n) {
      LogMagnitude b = state.matrix_norm(n, rho);
      if (opts.normalization == Normalization::factorial) b = b - log_factorial(n, p);
      xs.push_back(static_cast<double>(n));
      ys.push_back(b.to_double());
      if (b.is_bottom()) continue;
      Rational cand = -b.value() / static_cast<long>(n);
      if (!best || cand < *best) best = cand;
    }
    Rational capped = (best && *best < rho) ? *best : rho;
    est.log_radius_exact = capped;
    tail_min = capped.get_d();
  } else {
    for (std::size_t n = begin; n <= N; ++n) {
      double b = state.matrix_norm(n, rho_d);
      if (opts.normalization == Normalization::factorial) b -= log_factorial(n, p).get_d();
      xs.push_back(static_cast<double>(n));
      ys.push_back(b);
      if (std::isfinite(b)) tail_min = std::min(tail_min, -b / static_cast<double>(n));
    }
    tail_min = std::min(tail_min, rho_d);
  }
  LinearFit fit = least_squares(xs, ys);
  est.tail_slope = fit.points >= 2 ? std::min(rho_d, -fit.slope) : rho_d;
  est.tail_min = tail_min;
  est.discrepancy = std::abs(est.tail_min - est.tail_slope);
  if (opts.method == Method::tail_min) {
    est.log_radius = est.tail_min;
    est.capped = est.log_radius_exact ? *est.log_radius_exact == rho : est.tail_min >= rho_d;
  } else {
    est.log_radius = est.tail_slope;
    est.capped = est.tail_slope >= rho_d;
  }
  return est;
}

inline RadiusEstimate radius_estimate(const DiffModule& M, const Rational& rho, const RadiusOptions& opts = {}) {
  detail::check_radius_args(M, rho, opts);
  return radius_estimate(M, gn_sequence(M, opts.depth, opts.recursion), rho, opts);
}

// One affine piece log R = slope * rho + intercept on [from, to].
struct PolygonSegment {
  Rational from;
  Rational to;
  Rational slope;      // snapped
  double raw_slope;    // before snapping
  Rational intercept;  // snapped, log_p |alpha|
  double raw_intercept;
};

struct ConvergencePolygon {
  Interval domain;
  std::vector<PolygonSegment> segments;
  std::vector<RadiusEstimate> samples;
  long max_denominator = 32;
  double concavity_defect = 0;  // max gap between the samples' concave majorant and the samples
  double fit_residual = 0;      // max |polygon - sample|
  std::vector<std::string> warnings;

  const PolygonSegment& segment_at(const Rational& rho) const {
    for (const auto& s : segments)
      if (rho <= s.to) return s;
    return segments.back();
  }

  Rational evaluate(const Rational& rho) const {
    const auto& s = segment_at(rho);
    return s.slope * rho + s.intercept;
  }

  double evaluate(double rho) const {
    for (const auto& s : segments)
      if (rho <= s.to.get_d()) return s.slope.get_d() * rho + s.intercept.get_d();
    return segments.back().slope.get_d() * rho + segments.back().intercept.get_d();
  }
};

struct PolygonOptions {
  std::size_t grid = 17;
  long max_denominator = 32;
  RadiusOptions radius{};
  double tolerance = 0.05;  // concavity and fit quality threshold, log_p units
  unsigned threads = 1;
};

namespace detail {

struct HullSegment {
  std::size_t first;  // sample index of the left end
  std::size_t last;   // sample index of the right end
  Rational slope;
  double raw_slope;
};

}  // namespace detail

// Fits a concave polygon with rational slopes to radius samples on an
// equispaced interior grid.
//
// The upper concave hull of the samples is taken first. Each hull edge gets
// its slope snapped to the nearest rational with bounded denominator, and
// neighbouring edges with the same snapped slope are merged. An interior
// piece spanning a single grid step is the chord across a breakpoint that
// fell between two samples; it is dropped and the breakpoint recomputed as
// the intersection of its neighbours. Intercepts are the median of
// sample - slope * rho over each piece.
inline ConvergencePolygon fit_polygon(const Interval& domain, std::vector<RadiusEstimate> samples, long max_denominator,
                                      double tolerance) {
  if (samples.size() < 3) throw InvalidInput("polygon fitting needs at least 3 samples");
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    xs.push_back(s.rho.get_d());
    ys.push_back(s.log_radius);
  }
  const auto hull = upper_hull(xs, ys);

  ConvergencePolygon poly{domain, {}, std::move(samples), max_denominator, 0, 0, {}};

  // concavity defect of the raw samples
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    for (std::size_t i = hull[k]; i <= hull[k + 1]; ++i) {
      double t = (xs[i] - xs[hull[k]]) / (xs[hull[k + 1]] - xs[hull[k]]);
      double chord = ys[hull[k]] + t * (ys[hull[k + 1]] - ys[hull[k]]);
      poly.concavity_defect = std::max(poly.concavity_defect, chord - ys[i]);
    }
  }

  auto raw_slope = [&](std::size_t a, std::size_t b) { return (ys[b] - ys[a]) / (xs[b] - xs[a]); };
  auto make_piece = [&](std::size_t a, std::size_t b) {
    double s = raw_slope(a, b);
    return detail::HullSegment{a, b, best_rational_approximation(s, max_denominator), s};
  };
  auto merge_equal = [&](std::vector<detail::HullSegment> in) {
    std::vector<detail::HullSegment> out;
    for (auto& s : in) {
      if (!out.empty() && out.back().slope == s.slope) {
        out.back() = make_piece(out.back().first, s.last);
        out.back().slope = s.slope;
      } else {
        out.push_back(std::move(s));
      }
    }
    return out;
  };

  std::vector<detail::HullSegment> pieces;
  if (hull.size() == 1) {
    pieces.push_back(make_piece(0, xs.size() - 1));
  } else {
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) pieces.push_back(make_piece(hull[k], hull[k + 1]));
  }
  pieces = merge_equal(std::move(pieces));

  // Drop single-step chords across breakpoints.
  for (bool changed = true; changed && pieces.size() > 2;) {
    changed = false;
    for (std::size_t k = 1; k + 1 < pieces.size(); ++k) {
      if (pieces[k].last - pieces[k].first == 1) {
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(k));
        pieces = merge_equal(std::move(pieces));
        changed = true;
        break;
      }
    }
  }
  // A badly snapped single-step piece at either end is treated the same way.
  auto badly_snapped = [&](const detail::HullSegment& s) {
    return s.last - s.first == 1 && std::abs(s.raw_slope - s.slope.get_d()) > tolerance;
  };
  if (pieces.size() > 1 && badly_snapped(pieces.back())) pieces.pop_back();
  if (pieces.size() > 1 && badly_snapped(pieces.front())) pieces.erase(pieces.begin());

  // Intercepts by median residual over the samples each piece covers; the
  // end pieces also own the samples beyond them.
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::size_t a = k == 0 ? 0 : pieces[k].first;
    std::size_t b = k + 1 == pieces.size() ? xs.size() - 1 : pieces[k].last;
    std::vector<double> res;
    const double q = pieces[k].slope.get_d();
    for (std::size_t i = a; i <= b; ++i) res.push_back(ys[i] - q * xs[i]);
    double c = median(res);
    poly.segments.push_back({domain.lo, domain.hi, pieces[k].slope, pieces[k].raw_slope,
                             best_rational_approximation(c, max_denominator), c});
  }

  // Breakpoints: intersections of consecutive lines, kept inside the gap
  // between the samples the two pieces own.
  for (std::size_t k = 0; k + 1 < poly.segments.size(); ++k) {
    auto& L = poly.segments[k];
    auto& R = poly.segments[k + 1];
    Rational x = (R.intercept - L.intercept) / (L.slope - R.slope);
    const Rational& lo_bound = poly.samples[pieces[k].first].rho;
    const Rational& hi_bound = poly.samples[pieces[k + 1].last].rho;
    if (x < lo_bound || x > hi_bound) {
      poly.warnings.push_back("breakpoint " + std::to_string(k) + " fell outside its sample range and was clamped");
      x = x < lo_bound ? lo_bound : hi_bound;
    }
    L.to = x;
    R.from = x;
  }

  for (std::size_t i = 0; i < xs.size(); ++i)
    poly.fit_residual = std::max(poly.fit_residual, std::abs(poly.evaluate(poly.samples[i].rho).get_d() - ys[i]));
  if (poly.concavity_defect > tolerance)
    poly.warnings.push_back("samples are not concave within tolerance (defect " + std::to_string(poly.concavity_defect) + ")");
  if (poly.fit_residual > tolerance)
    poly.warnings.push_back("fitted polygon misses a sample by " + std::to_string(poly.fit_residual));
  return poly;
}

inline std::vector<Rational> sample_grid(const Interval& I, std::size_t grid) {
  std::vector<Rational> pts;
  for (std::size_t i = 0; i < grid; ++i) pts.push_back(I.grid_point(i, grid));
  return pts;
}

inline std::vector<RadiusEstimate> radius_samples(const DiffModule& M, const RecursionState& state,
                                                  const std::vector<Rational>& grid, const RadiusOptions& opts,
                                                  unsigned threads) {
  std::vector<std::optional<RadiusEstimate>> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { out[i] = radius_estimate(M, state, grid[i], opts); });
  std::vector<RadiusEstimate> samples;
  for (auto& o : out) samples.push_back(std::move(*o));
  return samples;
}

inline ConvergencePolygon polygon_estimate(const DiffModule& M, const RecursionState& state,
                                           const PolygonOptions& opts = {}) {
  if (opts.grid < 3) throw InvalidInput("polygon estimation needs a grid of at least 3 points");
  auto samples = radius_samples(M, state, sample_grid(M.interval(), opts.grid), opts.radius, opts.threads);
  return fit_polygon(M.interval(), std::move(samples), opts.max_denominator, opts.tolerance);
}

inline ConvergencePolygon polygon_estimate(const DiffModule& M, const PolygonOptions& opts = {}) {
  if (opts.grid < 3) throw InvalidInput("polygon estimation needs a grid of at least 3 points");
  return polygon_estimate(M, gn_sequence(M, opts.radius.depth, opts.radius.recursion), opts);
}

struct RobbaCheck {
  bool non_robba = false;
  Rational margin;  // min over the polygon's vertices of rho - log R
  Rational at;      // where the minimum is attained
};

// Decided exactly on the fitted polygon. rho - log R is convex and piecewise
// linear, so it is positive on the open interval iff it is positive at every
// interior vertex and no piece is identically zero.
inline RobbaCheck is_non_robba(const ConvergencePolygon& poly) {
  std::vector<Rational> vertices{poly.domain.lo};
  for (const auto& s : poly.segments) vertices.push_back(s.to);
  vertices.back() = poly.domain.hi;
  std::vector<Rational> gaps;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& seg = poly.segments[k == 0 ? 0 : k - 1];
    gaps.push_back(vertices[k] - (seg.slope * vertices[k] + seg.intercept));
  }
  RobbaCheck out{true, gaps.front(), vertices.front()};
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    if (gaps[k] < out.margin) {
      out.margin = gaps[k];
      out.at = vertices[k];
    }
    const bool interior = k > 0 && k + 1 < gaps.size();
    if (gaps[k] < 0 || (interior && gaps[k] == 0)) out.non_robba = false;
    if (k + 1 < gaps.size() && gaps[k] == 0 && gaps[k + 1] == 0) out.non_robba = false;
  }
  return out;
}

inline bool one_slope(const ConvergencePolygon& poly) { return poly.segments.size() == 1; }

struct FrobeniusPoint {
  Rational rho;                    // log-radius on the pulled-back annulus
  double log_radius_pullback = 0;  // log R(M, r)
  double log_radius_antecedent = 0;  // log R(N, r^(p^h))
  double residual = 0;             // |p^h log R(M, r) - log R(N, r^(p^h))|
  bool excluded = false;           // outside R(M, r) > r pi^(1/p^(h-1))
};

struct FrobeniusReport {
  unsigned order = 1;
  std::vector<FrobeniusPoint> points;
  double max_residual = 0;
  double tolerance = 0;
  bool holds = true;
};

// Checks R(M, r)^(p^h) = R(N, r^(p^h)) for M the h-fold Frobenius pullback
// of N, on an interior grid of M's annulus.
inline FrobeniusReport frobenius_radius_check(const DiffModule& antecedent, unsigned h, std::size_t grid,
                                              const RadiusOptions& opts, double tol, unsigned threads = 1) {
  if (grid < 1) throw InvalidInput("frobenius check needs at least one grid point");
  const DiffModule M = frobenius_pullback(antecedent, h);
  const long p = M.prime();
  Integer ph_int;
  mpz_ui_pow_ui(ph_int.get_mpz_t(), static_cast<unsigned long>(p), h);
  const Rational ph(ph_int);
  const Rational threshold_scale = rational_pow(p, -static_cast<long>(h - 1)) * log_pi(M.prime());

  const auto state_m = gn_sequence(M, opts.depth, opts.recursion);
  const auto state_n = gn_sequence(antecedent, opts.depth, opts.recursion);
  const auto pts = sample_grid(M.interval(), grid);

  FrobeniusReport rep;
  rep.order = h;
  rep.tolerance = tol;
  rep.points.resize(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    const Rational& rho = pts[i];
    auto em = radius_estimate(M, state_m, rho, opts);
    auto en = radius_estimate(antecedent, state_n, Rational(rho * ph), opts);
    FrobeniusPoint fp;
    fp.rho = rho;
    fp.log_radius_pullback = em.log_radius;
    fp.log_radius_antecedent = en.log_radius;
    fp.excluded = !(em.log_radius > Rational(rho + threshold_scale).get_d());
    fp.residual = std::abs(ph.get_d() * em.log_radius - en.log_radius);
    rep.points[i] = fp;
  });
  std::size_t used = 0;
  for (const auto& fp : rep.points) {
    if (fp.excluded) continue;
    ++used;
    rep.max_residual = std::max(rep.max_residual, fp.residual);
    if (fp.residual > tol) rep.holds = false;
  }
  if (used == 0) throw HypothesisViolated("every grid point violates R(M, r) > r pi^(1/p^(h-1))");
  return rep;
}

}  // namespace padicdm
