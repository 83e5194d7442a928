#pragma once

// Lower convex hulls of (exponent, valuation) point sets. The same hull
// serves two purposes: the Newton polygon of a polynomial (root magnitudes)
// and the tropical profile rho -> max_e (e*rho - v_e) that gives the Gauss
// norm of a Laurent polynomial at every log-radius at once.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "padicdm/arith.hpp"

namespace padicdm {

struct ValuationPoint {
  long exponent;
  long valuation;
  friend bool operator==(const ValuationPoint&, const ValuationPoint&) = default;
};

// Lower convex hull, sorted by exponent. Duplicate exponents keep the
// smallest valuation.
inline std::vector<ValuationPoint> lower_hull(std::vector<ValuationPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.exponent != b.exponent ? a.exponent < b.exponent : a.valuation < b.valuation;
  });
  std::vector<ValuationPoint> hull;
  for (const auto& q : pts) {
    if (!hull.empty() && hull.back().exponent == q.exponent) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b unless it lies strictly below segment a-q.
      __int128 cross = static_cast<__int128>(b.exponent - a.exponent) * (q.valuation - a.valuation) -
                       static_cast<__int128>(b.valuation - a.valuation) * (q.exponent - a.exponent);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  return hull;
}

// A segment of a Newton polygon: `length` roots share the log-magnitude
// `slope` (roots of valuation -slope).
struct NewtonSegment {
  Rational slope;
  long length;
};

inline std::vector<NewtonSegment> newton_segments(const std::vector<ValuationPoint>& pts) {
  auto hull = lower_hull(pts);
  std::vector<NewtonSegment> out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    long dx = hull[i].exponent - hull[i - 1].exponent;
    out.push_back({make_rational(hull[i].valuation - hull[i - 1].valuation, dx), dx});
  }
  return out;
}

// rho -> max over points of (e*rho - v), i.e. the log Gauss norm of a
// Laurent polynomial whose coefficient valuations are the points. An empty
// profile is the zero polynomial (bottom everywhere).
class NormProfile {
 public:
  NormProfile() = default;
  explicit NormProfile(std::vector<ValuationPoint> pts) : hull_(lower_hull(std::move(pts))) {}

  bool is_zero() const noexcept { return hull_.empty(); }
  const std::vector<ValuationPoint>& vertices() const noexcept { return hull_; }

  LogMagnitude evaluate(const Rational& rho) const {
    if (hull_.empty()) return LogMagnitude::bottom();
    Rational best = hull_.front().exponent * rho - hull_.front().valuation;
    for (std::size_t i = 1; i < hull_.size(); ++i) {
      Rational v = hull_[i].exponent * rho - hull_[i].valuation;
      if (v > best) best = v;
    }
    return LogMagnitude(best);
  }

  double evaluate(double rho) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : hull_) best = std::max(best, static_cast<double>(v.exponent) * rho - static_cast<double>(v.valuation));
    return best;
  }

  // Pointwise max of two profiles.
  NormProfile merged(const NormProfile& other) const {
    std::vector<ValuationPoint> pts = hull_;
    pts.insert(pts.end(), other.hull_.begin(), other.hull_.end());
    return NormProfile(std::move(pts));
  }

 private:
  std::vector<ValuationPoint> hull_;
};

}  // namespace padicdm
