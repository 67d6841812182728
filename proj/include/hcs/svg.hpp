#pragma once

#include <string>
#include <vector>

namespace hcs::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal static line plot (axes, ticks, legend, optional log-y).
void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y = false);

}  // namespace hcs::svg
