#include "hcs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hcs/error.hpp"

namespace hcs::svg {

namespace {
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};
}

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y) {
  const int W = 720, H = 480;
  const int ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double y = s.y[i];
      if (log_y) {
        if (y <= 0) continue;
        y = std::log10(y);
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double y) {
    if (log_y) y = std::log10(std::max(y, 1e-300));
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::ofstream out(path);
  if (!out) raise(ErrorCode::InvalidArgument, "cannot open " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << H << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << W / 2 << "' y='24' text-anchor='middle' "
         "font-family='sans-serif' font-size='16'>" << title << "</text>\n";

  // axes
  out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr
      << "' y2='" << H - mb << "' stroke='black'/>\n"
      << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << H - mb << "' stroke='black'/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 5.0;
    const double fy = ymin + (ymax - ymin) * t / 5.0;
    char buf[64];
    snprintf(buf, sizeof buf, "%.3g", fx);
    out << "<text x='" << px(fx) << "' y='" << H - mb + 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << buf << "</text>\n";
    snprintf(buf, sizeof buf, "%.3g", log_y ? std::pow(10.0, fy) : fy);
    out << "<text x='" << ml - 6 << "' y='"
        << H - mb - (H - mt - mb) * t / 5.0 + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
        << buf << "</text>\n";
  }
  out << "<text x='" << (ml + W - mr) / 2 << "' y='" << H - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
      << xlabel << "</text>\n"
      << "<text x='16' y='" << (mt + H - mb) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
         "transform='rotate(-90 16 " << (mt + H - mb) / 2 << ")'>"
      << ylabel << (log_y ? " (log)" : "") << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* col = kColors[ci % 6];
    out << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0) continue;
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "'/>\n";
    out << "<text x='" << W - mr - 8 << "' y='" << mt + 16 * (ci + 1)
        << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='"
        << col << "'>" << s.label << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace hcs::svg
