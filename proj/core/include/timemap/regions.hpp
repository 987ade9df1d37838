#pragma once

#include <array>
#include <string>

#include "timemap/map.hpp"

namespace timemap {

// 4x4 behavioral taxonomy over the log-log map. Rows are y bands from the
// bottom, columns x bands from the left; three cuts per axis bound the bands
// with half-open intervals [low, high), the top band closed above.
struct RegionTaxonomy {
    std::array<double, 3> x_cuts;  // log10 seconds, strictly ascending
    std::array<double, 3> y_cuts;
    std::array<std::array<std::string, 4>, 4> labels;  // labels[y_band][x_band]
};

inline constexpr const char* kUnannotated = "unannotated";

// Cuts at 1 minute / 1 hour / 10 hours on both axes; labels laid out with
// rapid bursts bottom-left, mundane events center, first-of-day right column,
// last-of-day top row. Blank cells carry "unannotated".
RegionTaxonomy default_taxonomy();

std::size_t band_index(double coordinate, const std::array<double, 3>& cuts);

// Throws NonpositivePoint for coordinates the log map cannot place.
const std::string& classify_point(const TimeMapPoint& p, const RegionTaxonomy& tax);

// Fraction of plottable points per region, row-major (y band * 4 + x band).
// Sums to 1 for a map with at least one plottable point, else all zeros.
std::array<double, 16> occupancy(const TimeMap& map, const RegionTaxonomy& tax);

}  // namespace timemap
