#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logasm/csv.hpp"

namespace logasm::cli {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_line_chart(std::ostream& out, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  constexpr double width = 720;
  constexpr double height = 480;
  constexpr double pad = 48;
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series) {
    for (double v : s.x) x_lo = std::min(x_lo, v), x_hi = std::max(x_hi, v);
    for (double v : s.y) y_lo = std::min(y_lo, v), y_hi = std::max(y_hi, v);
  }
  if (!(x_hi > x_lo)) x_lo = 0, x_hi = 1;
  if (!(y_hi > y_lo)) y_lo = -1, y_hi = 1;
  const double margin = 0.05 * (y_hi - y_lo);
  y_lo -= margin;
  y_hi += margin;
  const auto px = [&](double x) { return pad + (x - x_lo) / (x_hi - x_lo) * (width - 2 * pad); };
  const auto py = [&](double y) { return height - pad - (y - y_lo) / (y_hi - y_lo) * (height - 2 * pad); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\" font-family=\"sans-serif\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  out << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width - 2 * pad << "\" height=\""
      << height - 2 * pad << "\" fill=\"none\" stroke=\"#444\"/>\n";
  if (y_lo < 0 && y_hi > 0) {
    out << "<line x1=\"" << pad << "\" x2=\"" << width - pad << "\" y1=\"" << py(0) << "\" y2=\""
        << py(0) << "\" stroke=\"#bbb\"/>\n";
  }
  for (const char* label : {"lo", "hi"}) {
    const bool lo = label[0] == 'l';
    out << "<text x=\"4\" y=\"" << py(lo ? y_lo : y_hi) + 4
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << format_double(lo ? y_lo : y_hi)
        << "</text>\n";
  }
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-opacity=\"" << s.opacity << '"';
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      out << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace logasm::cli
