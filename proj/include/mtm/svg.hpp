#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mtm {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
  bool draw_line = true;
  bool draw_markers = false;
};

/// Static SVG scatter/line plot. Axis ranges are the data extent padded by
/// 10% on each side; output is fully deterministic for identical input.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace mtm
