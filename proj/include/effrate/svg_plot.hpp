#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace effrate {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Optional symmetric error bars (same length as y, or empty).
  std::vector<double> err;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers_only = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 800;
  int height = 560;
};

/// Static SVG: framed axes with ticks, one polyline (or marker set) per
/// series, legend in the upper-left corner.
void render_svg(std::ostream& out, const Plot& plot);

/// Colour for series i from a fixed 10-colour cycle.
std::string palette(std::size_t i);

}  // namespace effrate
