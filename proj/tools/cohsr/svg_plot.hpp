#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cohsr::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  /// File the plotted numbers came from, recorded in the SVG <desc>.
  std::string data_path;
};

/// Static SVG line plot, axes scaled to the data with a few ticks.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec,
               const std::vector<Series>& series);

}  // namespace cohsr::cli
