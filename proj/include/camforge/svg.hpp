#pragma once

#include <string>
#include <utility>
#include <vector>

namespace camforge::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> x_markers;  // dashed verticals, e.g. domain ends
  std::vector<double> y_markers;  // dashed horizontals, e.g. the travel limit
};

/// Polyline chart with axes, ticks, legend and markers. Output depends only
/// on the input, so identical plots are byte-identical.
std::string render(const Plot& plot);

}  // namespace camforge::svg
