#pragma once

// Minimal SVG plots: the convergence polygon over its samples, and the b_n
// sequence of a boundedness report.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "padicdm/diagnostics.hpp"

namespace padicdm {

namespace detail {

struct PlotFrame {
  double x0, x1, y0, y1;
  double width = 640, height = 420, margin = 56;

  double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
  double sy(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline void pad_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 1;
    hi += 1;
  }
  const double d = 0.05 * (hi - lo);
  lo -= d;
  hi += d;
}

inline void axes(std::ostringstream& os, const PlotFrame& f, const std::string& xlabel, const std::string& ylabel) {
  const double L = f.margin, R = f.width - f.margin, T = f.margin, B = f.height - f.margin;
  os << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(R - L) << "\" height=\"" << num(B - T)
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4, yv = f.y0 + (f.y1 - f.y0) * i / 4;
    os << "<text x=\"" << num(f.sx(xv)) << "\" y=\"" << num(B + 16) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << label(xv) << "</text>\n";
    os << "<text x=\"" << num(L - 6) << "\" y=\"" << num(f.sy(yv) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
       << label(yv) << "</text>\n";
  }
  os << "<text x=\"" << num((L + R) / 2) << "\" y=\"" << num(f.height - 12)
     << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << num((T + B) / 2) << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num((T + B) / 2) << ")\">" << ylabel << "</text>\n";
}

inline std::string header(const PlotFrame& f) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
     << "\" viewBox=\"0 0 " << f.width << " " << f.height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace detail

// rho horizontal, log_p R vertical; dashed diagonal is log R = rho.
inline std::string polygon_svg(const ConvergencePolygon& poly) {
  const double lo = poly.domain.lo.get_d(), hi = poly.domain.hi.get_d();
  double ymin = lo, ymax = hi;
  for (const auto& s : poly.samples) {
    ymin = std::min(ymin, s.log_radius);
    ymax = std::max(ymax, s.log_radius);
  }
  for (const auto& s : poly.segments) {
    ymin = std::min({ymin, poly.evaluate(lo), poly.evaluate(hi), s.slope.get_d() * s.to.get_d() + s.intercept.get_d()});
  }
  detail::PlotFrame f{lo, hi, ymin, ymax};
  detail::pad_range(f.y0, f.y1);

  std::ostringstream os;
  os << detail::header(f);
  detail::axes(os, f, "rho = log_p r", "log_p R(M, r)");
  os << "<line x1=\"" << detail::num(f.sx(lo)) << "\" y1=\"" << detail::num(f.sy(lo)) << "\" x2=\""
     << detail::num(f.sx(hi)) << "\" y2=\"" << detail::num(f.sy(hi))
     << "\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
  std::vector<double> xs{lo};
  for (std::size_t k = 0; k + 1 < poly.segments.size(); ++k) xs.push_back(poly.segments[k].to.get_d());
  xs.push_back(hi);
  for (double x : xs) os << detail::num(f.sx(x)) << "," << detail::num(f.sy(poly.evaluate(x))) << " ";
  os << "\"/>\n";
  for (const auto& s : poly.samples) {
    os << "<circle cx=\"" << detail::num(f.sx(s.rho.get_d())) << "\" cy=\"" << detail::num(f.sy(s.log_radius))
       << "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string bounded_svg(const BoundednessReport& rep) {
  double ymin = 0, ymax = 0;
  for (double b : rep.b) {
    if (!std::isfinite(b)) continue;
    ymin = std::min(ymin, b);
    ymax = std::max(ymax, b);
  }
  detail::PlotFrame f{0, static_cast<double>(std::max<std::size_t>(rep.depth, 1)), ymin, ymax};
  detail::pad_range(f.y0, f.y1);
  std::ostringstream os;
  os << detail::header(f);
  detail::axes(os, f, "n", "b_n");
  os << "<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" points=\"";
  for (std::size_t n = 0; n < rep.b.size(); ++n)
    if (std::isfinite(rep.b[n])) os << detail::num(f.sx(static_cast<double>(n))) << "," << detail::num(f.sy(rep.b[n])) << " ";
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace padicdm
