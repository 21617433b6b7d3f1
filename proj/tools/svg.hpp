#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logasm::cli {

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  double opacity = 1.0;
};

// Static line chart: axes box, zero line, one polyline per series. Ranges
// cover all series with a small margin.
void write_line_chart(std::ostream& out, const std::string& title,
                      const std::vector<SvgSeries>& series);

}  // namespace logasm::cli
