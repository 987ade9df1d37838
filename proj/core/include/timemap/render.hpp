#pragma once

#include <string>
#include <vector>

#include "timemap/map.hpp"

namespace timemap {

enum class PlotMode { Scatter, Heatmap };

struct PlotSpec {
    PlotMode mode = PlotMode::Scatter;
    std::string title;
    std::string x_label;  // empty = mode default
    std::string y_label;
    std::string point_color = "#0000ff";
    std::vector<std::string> palette;  // max mass first; empty = default ramp
    int width = 480;
    int height = 480;
};

// Red through the heat sequence to near-white, 11 stops, strongest first.
const std::vector<std::string>& default_heat_palette();

// Log-log scatter with decade ticks, one filled circle per plottable point.
// An empty map renders an axes frame with a warning annotation. Byte output
// is deterministic for a given (map, spec).
std::string scatter_svg(const TimeMap& map, const PlotSpec& spec);

// One filled rectangle per nonzero cell, colored by mass along the palette.
std::string heatmap_svg(const LogGrid& grid, const PlotSpec& spec);

// Arranges child documents row-major under a shared banner. Throws
// LayoutOverflow when the documents do not fit rows*cols.
std::string panel(const std::vector<std::string>& documents, std::size_t rows,
                  std::size_t cols, const std::string& banner);

}  // namespace timemap
