#include "effrate/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace effrate {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// "Nice" tick step covering span with roughly `target` ticks.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

}  // namespace

std::string palette(std::size_t i) {
  static constexpr std::array<const char*, 10> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kColors[i % kColors.size()];
}

void render_svg(std::ostream& out, const Plot& plot) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double e = s.err.empty() ? 0.0 : s.err[i];
      ymin = std::min(ymin, s.y[i] - e);
      ymax = std::max(ymax, s.y[i] + e);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  ymin = std::min(ymin, 0.0);
  if (ymax == ymin) ymax = ymin + 1;
  const double ystep = tick_step(ymax - ymin, 6);
  ymax = std::ceil(ymax / ystep) * ystep;
  const double xstep = tick_step(xmax - xmin, 8);

  const double left = 70, right = 20, top = 40, bottom = 60;
  const double pw = plot.width - left - right;
  const double ph = plot.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";

  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep; t += xstep) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(t)) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(left + pw) << "\" y2=\""
        << num(py(t)) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(plot.height - 15.0) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << "</text>\n";

  for (const auto& s : plot.series) {
    if (s.markers_only) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!s.err.empty()) {
          out << "<line x1=\"" << num(px(s.x[i])) << "\" y1=\"" << num(py(s.y[i] - s.err[i])) << "\" x2=\""
              << num(px(s.x[i])) << "\" y2=\"" << num(py(s.y[i] + s.err[i])) << "\" stroke=\"" << s.color << "\"/>\n";
        }
        out << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"3.5\" fill=\"none\" stroke=\""
            << s.color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
      if (s.dashed) out << " stroke-dasharray=\"6,4\"";
      out << " points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (std::isfinite(s.y[i])) out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      out << "\"/>\n";
    }
  }

  double ly = top + 16;
  for (const auto& s : plot.series) {
    const double lx = left + 12;
    if (s.markers_only) {
      out << "<circle cx=\"" << num(lx + 12) << "\" cy=\"" << num(ly - 4) << "\" r=\"3.5\" fill=\"none\" stroke=\""
          << s.color << "\"/>\n";
    } else {
      out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
          << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\""
          << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
    out << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

}  // namespace effrate
