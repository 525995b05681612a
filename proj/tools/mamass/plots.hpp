#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mamass::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// SVG 1.1 line plot with one polyline per series, axes and a legend.
void write_svg(std::ostream& os, const std::string& title, const std::string& x_label,
               const std::vector<Series>& series);

// CSV with a header row; numbers use shortest round-trip formatting.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_number(double v);

}  // namespace mamass::cli
