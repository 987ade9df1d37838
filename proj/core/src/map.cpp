#include "timemap/map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "timemap/errors.hpp"

namespace timemap {

TimeMap build_map(const InterarrivalSeries& series) {
    TimeMap map;
    map.unit = series.unit;
    const auto& d = series.deltas;
    if (d.size() >= 2) {
        map.points.reserve(d.size() - 1);
        for (std::size_t k = 0; k + 1 < d.size(); ++k)
            map.points.push_back({d[k], d[k + 1], k + 2});
    }
    return map;
}

TimeMap plottable_points(const TimeMap& map) {
    TimeMap out;
    out.unit = map.unit;
    out.dropped_nonpositive = map.dropped_nonpositive;
    out.points.reserve(map.points.size());
    for (const auto& p : map.points) {
        if (p.t_before > 0 && p.t_after > 0)
            out.points.push_back(p);
        else
            ++out.dropped_nonpositive;
    }
    return out;
}

namespace {

Interval default_range(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 1.0};
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it, hi = *hi_it;
    const double span = hi - lo;
    const double pad = span > 0 ? 0.05 * span : 0.5;
    return {lo - pad, hi + pad};
}

std::size_t cell_index(double v, const Interval& range, std::size_t bins) {
    // caller guarantees v within [lo, hi]; top edge maps into the last cell
    const double t = (v - range.lo) / range.width();
    auto i = static_cast<std::size_t>(t * static_cast<double>(bins));
    return std::min(i, bins - 1);
}

}  // namespace

LogGrid bin(const TimeMap& map, std::size_t bins_x, std::size_t bins_y,
            std::optional<Interval> x_range, std::optional<Interval> y_range) {
    if (bins_x < 1 || bins_y < 1) throw EmptyRange("bins must be >= 1");
    if ((x_range && x_range->width() <= 0) || (y_range && y_range->width() <= 0))
        throw EmptyRange("explicit range has nonpositive width");

    std::vector<double> lx, ly;
    lx.reserve(map.points.size());
    ly.reserve(map.points.size());
    std::size_t nonpositive = 0;
    for (const auto& p : map.points) {
        if (p.t_before > 0 && p.t_after > 0) {
            lx.push_back(std::log10(p.t_before));
            ly.push_back(std::log10(p.t_after));
        } else {
            ++nonpositive;
        }
    }

    LogGrid grid;
    grid.bins_x = bins_x;
    grid.bins_y = bins_y;
    grid.x_range = x_range ? *x_range : default_range(lx);
    grid.y_range = y_range ? *y_range : default_range(ly);
    grid.cells.assign(bins_x * bins_y, 0.0);
    grid.excluded = nonpositive;

    for (std::size_t i = 0; i < lx.size(); ++i) {
        if (lx[i] < grid.x_range.lo || lx[i] > grid.x_range.hi || ly[i] < grid.y_range.lo ||
            ly[i] > grid.y_range.hi) {
            ++grid.excluded;
            continue;
        }
        grid.at(cell_index(lx[i], grid.x_range, bins_x),
                cell_index(ly[i], grid.y_range, bins_y)) += 1.0;
        grid.total_mass += 1.0;
    }
    return grid;
}

LogGrid smooth(const LogGrid& grid, double kernel_sd_bins) {
    if (!(kernel_sd_bins > 0)) throw InvalidKernel("kernel sd must be > 0");
    if (kernel_sd_bins < 0.05) return grid;

    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(4.0 * kernel_sd_bins));
    const double inv2s2 = 1.0 / (2.0 * kernel_sd_bins * kernel_sd_bins);

    LogGrid out = grid;
    out.cells.assign(grid.cells.size(), 0.0);

    const auto w = static_cast<std::ptrdiff_t>(grid.bins_x);
    const auto h = static_cast<std::ptrdiff_t>(grid.bins_y);
    std::vector<double> kernel;
    kernel.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
    for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy)
        for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx)
            kernel.push_back(std::exp(-static_cast<double>(dx * dx + dy * dy) * inv2s2));

    for (std::ptrdiff_t sy = 0; sy < h; ++sy) {
        for (std::ptrdiff_t sx = 0; sx < w; ++sx) {
            const double mass = grid.at(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
            if (mass == 0.0) continue;
            // renormalize over the in-bounds window so every unit of mass lands
            double wsum = 0.0;
            std::size_t ki = 0;
            for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy)
                for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx, ++ki) {
                    const std::ptrdiff_t tx = sx + dx, ty = sy + dy;
                    if (tx >= 0 && tx < w && ty >= 0 && ty < h) wsum += kernel[ki];
                }
            const double scale = mass / wsum;
            ki = 0;
            for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy)
                for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx, ++ki) {
                    const std::ptrdiff_t tx = sx + dx, ty = sy + dy;
                    if (tx >= 0 && tx < w && ty >= 0 && ty < h)
                        out.at(static_cast<std::size_t>(tx), static_cast<std::size_t>(ty)) +=
                            scale * kernel[ki];
                }
        }
    }
    return out;
}

}  // namespace timemap
