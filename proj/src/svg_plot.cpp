#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace greedyrb::detail {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::vector<Series>& series) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 0;
  bool any = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0)) continue;
      const double ly = std::log10(s.y[i]);
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = ly;
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
    }
  }
  if (!any) {
    xmin = 0;
    xmax = 1;
    ymin = -1;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  auto py = [&](double logy) {
    return kMarginTop + (ymax - logy) / (ymax - ymin) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // y grid at integer powers of ten
  for (int e = static_cast<int>(std::floor(ymin));
       e <= static_cast<int>(std::ceil(ymax)); ++e) {
    if (e < ymin - 1e-9 || e > ymax + 1e-9) continue;
    const double y = py(e);
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << num(y) << "\" x2=\""
        << kWidth - kMarginRight << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << e << "</text>\n";
  }
  // x ticks at the data points of the first series
  if (!series.empty()) {
    for (std::size_t i = 0; i < series[0].x.size(); ++i) {
      const double x = px(series[0].x[i]);
      svg << "<text x=\"" << num(x) << "\" y=\"" << kHeight - kMarginBottom + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << num(series[0].x[i]) << "</text>\n";
    }
  }
  svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  int color = 0;
  double legend_y = kMarginTop + 14;
  for (const auto& s : series) {
    const char* stroke = kColors[color % 6];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0)) continue;
      pts << num(px(s.x[i])) << ',' << num(py(std::log10(s.y[i]))) << ' ';
    }
    svg << "<polyline points=\"" << pts.str()
        << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.6\"/>\n"
        << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
        << num(legend_y)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\""
        << stroke << "\">" << s.name << "</text>\n";
    legend_y += 15;
    ++color;
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << x_label << "</text>\n</svg>\n";
  return svg.str();
}

}  // namespace greedyrb::detail
