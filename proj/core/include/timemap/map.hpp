#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "timemap/events.hpp"

namespace timemap {

// One interior event: the gap before it (x) and the gap after it (y).
struct TimeMapPoint {
    double t_before;
    double t_after;
    std::size_t event_index;  // ordinal of the middle event, 1-based
};

struct TimeMap {
    std::vector<TimeMapPoint> points;  // ordered by event_index
    std::size_t dropped_nonpositive = 0;
    DeltaUnit unit = DeltaUnit::Seconds;

    std::size_t size() const { return points.size(); }
};

struct Interval {
    double lo;
    double hi;
    double width() const { return hi - lo; }
};

// 2D histogram of time-map points in log10 space.
struct LogGrid {
    std::size_t bins_x = 0;
    std::size_t bins_y = 0;
    Interval x_range{0, 1};
    Interval y_range{0, 1};
    std::vector<double> cells;  // row-major, row = y bin from the bottom
    double total_mass = 0;
    std::size_t excluded = 0;

    double& at(std::size_t ix, std::size_t iy) { return cells[iy * bins_x + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return cells[iy * bins_x + ix]; }
};

// For deltas d_1..d_m, point k is (d_k, d_{k+1}); m < 2 yields an empty map.
// Nonpositive coordinates are kept here and removed by plottable_points.
TimeMap build_map(const InterarrivalSeries& series);

// Drops points with a nonpositive coordinate, bumping dropped_nonpositive.
TimeMap plottable_points(const TimeMap& map);

// Histogram in log10 space. Default ranges are the data min/max per axis
// padded by 5% of the span (a zero span is padded by 0.5 per side). The
// right/top edge is inclusive on the last cell. Points outside explicit
// ranges, and any nonpositive stragglers, land in `excluded`.
LogGrid bin(const TimeMap& map, std::size_t bins_x, std::size_t bins_y,
            std::optional<Interval> x_range = std::nullopt,
            std::optional<Interval> y_range = std::nullopt);

// Gaussian blur with std dev in bin units, truncated at 4 sd, kernel
// renormalized at the boundary so total_mass is conserved. sd below 0.05
// returns the grid unchanged.
LogGrid smooth(const LogGrid& grid, double kernel_sd_bins);

}  // namespace timemap
