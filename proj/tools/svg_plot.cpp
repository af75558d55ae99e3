#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pscfr::plot {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 90;
constexpr double kMarginRight = 160;
constexpr double kMarginTop = 48;
constexpr double kMarginBottom = 64;

std::string fmt(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotOptions& options) {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = options.log_y ? 1e300 : 0.0;
  double y_max = options.log_y ? 1e-300 : 1.0;
  bool any = false;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (options.log_y && y <= 0.0) continue;
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!any) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = options.log_y ? 1e-3 : 0.0;
    y_max = 1.0;
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (options.log_y) {
    y_min = std::pow(10.0, std::floor(std::log10(y_min)));
    y_max = std::pow(10.0, std::ceil(std::log10(y_max)));
    if (y_max <= y_min) y_max = y_min * 10.0;
  } else if (y_max <= y_min) {
    y_max = y_min + 1.0;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_pos = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto y_pos = [&](double y) {
    double t;
    if (options.log_y) {
      t = (std::log10(y) - std::log10(y_min)) / (std::log10(y_max) - std::log10(y_min));
    } else {
      t = (y - y_min) / (y_max - y_min);
    }
    return kMarginTop + (1.0 - t) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << options.title << "</text>\n";

  // frame
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks (decades when log-scaled, five linear ticks otherwise)
  if (options.log_y) {
    const int lo = static_cast<int>(std::llround(std::log10(y_min)));
    const int hi = static_cast<int>(std::llround(std::log10(y_max)));
    for (int e = lo; e <= hi; ++e) {
      const double y = std::pow(10.0, e);
      const double py = y_pos(y);
      out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(py) << "\" x2=\""
          << kMarginLeft + plot_w << "\" y2=\"" << fmt(py)
          << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
      out << "<text x=\"" << kMarginLeft - 9 << "\" y=\"" << fmt(py + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
          << "</text>\n";
    }
  } else {
    for (int k = 0; k <= 4; ++k) {
      const double y = y_min + (y_max - y_min) * k / 4.0;
      const double py = y_pos(y);
      out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(py) << "\" x2=\""
          << kMarginLeft + plot_w << "\" y2=\"" << fmt(py)
          << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
      out << "<text x=\"" << kMarginLeft - 9 << "\" y=\"" << fmt(py + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y)
          << "</text>\n";
    }
  }
  // x ticks
  for (int k = 0; k <= 4; ++k) {
    const double x = x_min + (x_max - x_min) * k / 4.0;
    const double px = x_pos(x);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x)
        << "</text>\n";
  }
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << options.x_label << "</text>\n";
  out << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 20 "
      << kMarginTop + plot_h / 2 << ")\">" << options.y_label << "</text>\n";

  for (const Series& s : series) {
    std::ostringstream pts;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (options.log_y && y <= 0.0) continue;
      if (!first) pts << ' ';
      pts << fmt(x_pos(x)) << ',' << fmt(y_pos(y));
      first = false;
    }
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
  }

  double ly = kMarginTop + 10;
  for (const Series& s : series) {
    const double lx = kMarginLeft + plot_w + 14;
    out << "<line x1=\"" << lx << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << lx + 24 << "\" y2=\""
        << fmt(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg_file(const std::string& path, const std::vector<Series>& series,
                    const PlotOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(series, options);
}

}  // namespace pscfr::plot
