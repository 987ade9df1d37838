#include "timemap/regions.hpp"

#include <cmath>

#include "timemap/errors.hpp"

namespace timemap {

RegionTaxonomy default_taxonomy() {
    RegionTaxonomy tax;
    const double minute = std::log10(60.0);
    const double hour = std::log10(3600.0);
    const double ten_hours = std::log10(36000.0);
    tax.x_cuts = {minute, hour, ten_hours};
    tax.y_cuts = {minute, hour, ten_hours};
    const std::string u = kUnannotated;
    tax.labels = {{
        {{"Extremely rapid bursts", "Lulls followed by bursts", "Lulls followed by bursts", u}},
        {{"Bursts followed by lulls", "Major events", u, "First tweets of the day"}},
        {{"Bursts followed by lulls", u, "Mundane events", "First tweets of the day"}},
        {{u, "Last tweets of the day", "Last tweets of the day", u}},
    }};
    return tax;
}

std::size_t band_index(double coordinate, const std::array<double, 3>& cuts) {
    const double v = std::log10(coordinate);
    std::size_t band = 0;
    for (double cut : cuts)
        if (v >= cut) ++band;
    return band;
}

const std::string& classify_point(const TimeMapPoint& p, const RegionTaxonomy& tax) {
    if (!(p.t_before > 0 && p.t_after > 0))
        throw NonpositivePoint("cannot classify a point with nonpositive coordinates");
    return tax.labels[band_index(p.t_after, tax.y_cuts)][band_index(p.t_before, tax.x_cuts)];
}

std::array<double, 16> occupancy(const TimeMap& map, const RegionTaxonomy& tax) {
    std::array<double, 16> counts{};
    std::size_t total = 0;
    for (const auto& p : map.points) {
        if (!(p.t_before > 0 && p.t_after > 0)) continue;
        counts[band_index(p.t_after, tax.y_cuts) * 4 + band_index(p.t_before, tax.x_cuts)] += 1.0;
        ++total;
    }
    if (total > 0)
        for (auto& c : counts) c /= static_cast<double>(total);
    return counts;
}

}  // namespace timemap
