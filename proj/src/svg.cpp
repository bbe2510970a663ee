#include "mtm/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mtm {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 90.0;
constexpr double kMarginRight = 40.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 70.0;

const char* const kPalette[] = {"#1b6ca8", "#c23b22", "#2e8540",
                                "#8a4fbf", "#b8860b", "#444444"};
constexpr int kPaletteSize = 6;

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded_range(double lo, double hi) {
  if (lo > hi) {
    return {0.0, 1.0};
  }
  double span = hi - lo;
  if (span == 0.0) {
    span = std::max(std::abs(lo), 1e-12);
  }
  return {lo - 0.1 * span, hi + 0.1 * span};
}

std::string num(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

std::string tick_label(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.4g", value);
  return buffer;
}

std::string escape_text(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
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
  const Range xr = any ? padded_range(x_min, x_max) : Range{};
  const Range yr = any ? padded_range(y_min, y_max) : Range{};

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto to_px_x = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto to_px_y = [&](double y) {
    return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::invalid_argument("cannot open '" + path + "' for writing");
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\""
      << "middle\" font-family=\"sans-serif\" font-size=\"18\">"
      << escape_text(title) << "</text>\n";

  // Frame and ticks.
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop)
      << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = static_cast<double>(i) / kTicks;
    const double x_value = xr.lo + fx * (xr.hi - xr.lo);
    const double px = to_px_x(x_value);
    out << "<line x1=\"" << num(px) << "\" y1=\""
        << num(kMarginTop + plot_h) << "\" x2=\"" << num(px) << "\" y2=\""
        << num(kMarginTop + plot_h + 6) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\""
        << num(kMarginTop + plot_h + 22)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << tick_label(x_value) << "</text>\n";

    const double y_value = yr.lo + fx * (yr.hi - yr.lo);
    const double py = to_px_y(y_value);
    out << "<line x1=\"" << num(kMarginLeft - 6) << "\" y1=\"" << num(py)
        << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(py)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kMarginLeft - 10) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << tick_label(y_value) << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape_text(x_label) << "</text>\n";
  out << "<text x=\"22\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\" transform=\"rotate(-90 22 "
      << num(kMarginTop + plot_h / 2) << ")\">" << escape_text(y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const PlotSeries& plot = series[s];
    const char* color = kPalette[s % kPaletteSize];
    if (plot.draw_line && plot.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : plot.points) {
        out << num(to_px_x(x)) << ',' << num(to_px_y(y)) << ' ';
      }
      out << "\"/>\n";
    }
    if (plot.draw_markers) {
      for (const auto& [x, y] : plot.points) {
        out << "<circle cx=\"" << num(to_px_x(x)) << "\" cy=\""
            << num(to_px_y(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    // Legend entry, top left inside the frame.
    const double ly = kMarginTop + 18.0 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(kMarginLeft + 12) << "\" y1=\"" << num(ly)
        << "\" x2=\"" << num(kMarginLeft + 40) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(kMarginLeft + 46) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_text(plot.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace mtm
