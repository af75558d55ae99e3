#pragma once

#include <string>
#include <vector>

namespace pscfr::plot {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
};

// Self-contained SVG: axes, decade ticks on the log y-axis, one polyline per
// series, and a legend. No timestamps or external assets; output is
// byte-stable for fixed inputs.
std::string render_svg(const std::vector<Series>& series, const PlotOptions& options);

void write_svg_file(const std::string& path, const std::vector<Series>& series,
                    const PlotOptions& options);

}  // namespace pscfr::plot
