#pragma once

// Minimal SVG line charts (log-scale y) for the per-metric report plots.
// Data also ships as CSV, so this stays deliberately small.

#include <string>
#include <vector>

namespace greedyrb::detail {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // non-positive values are skipped on the log axis
};

std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::vector<Series>& series);

}  // namespace greedyrb::detail
