#pragma once

#include <string>
#include <vector>

namespace ssc::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  double width = 640;
  double height = 420;
};

/// Self-contained SVG document: axes with ticks, one polyline + markers per
/// series, and a legend. Output depends only on the inputs.
std::string line_chart(const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace ssc::svg
