#pragma once

// Small numerical helpers shared by the radius and diagnostics modules.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace padicdm {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  double slope_stderr = 0;
  std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept over finite points.
inline LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  LinearFit fit;
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    sx += xs[i];
    sy += ys[i];
    ++n;
  }
  fit.points = n;
  if (n < 2) return fit;
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
  fit.slope_stderr = n > 2 ? std::sqrt(ss / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Indices of the vertices of the upper concave hull of (xs[i], ys[i]), xs
// strictly increasing. Points within `eps` of a hull chord are dropped.
inline std::vector<std::size_t> upper_hull(const std::vector<double>& xs, const std::vector<double>& ys,
                                           double eps = 1e-9) {
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      // height of b above the chord a-k
      double t = (xs[b] - xs[a]) / (xs[k] - xs[a]);
      double chord = ys[a] + t * (ys[k] - ys[a]);
      if (ys[b] <= chord + eps) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  return hull;
}

}  // namespace padicdm
