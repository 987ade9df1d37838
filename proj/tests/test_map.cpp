#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "timemap/dgp.hpp"
#include "timemap/errors.hpp"
#include "timemap/map.hpp"
#include "timemap/rng.hpp"

using namespace timemap;

namespace {

InterarrivalSeries series_of(std::vector<double> deltas, DeltaUnit unit = DeltaUnit::Seconds) {
    InterarrivalSeries s;
    s.deltas = std::move(deltas);
    s.unit = unit;
    return s;
}

}  // namespace

TEST_CASE("map pairs consecutive deltas") {
    const auto map = build_map(series_of({10, 20, 70}));
    REQUIRE(map.size() == 2);
    CHECK(map.points[0].t_before == 10);
    CHECK(map.points[0].t_after == 20);
    CHECK(map.points[0].event_index == 2);
    CHECK(map.points[1].t_before == 20);
    CHECK(map.points[1].t_after == 70);
}

TEST_CASE("constant deltas collapse to one visual point") {
    const auto map = build_map(series_of({5, 5, 5, 5}));
    REQUIRE(map.size() == 3);
    for (const auto& p : map.points) {
        CHECK(p.t_before == 5);
        CHECK(p.t_after == 5);
    }
}

TEST_CASE("degenerate series yield empty maps") {
    CHECK(build_map(series_of({3})).size() == 0);
    CHECK(build_map(series_of({})).size() == 0);
}

TEST_CASE("pair-count law over random streams") {
    Xoshiro256pp rng(2024);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 3 + rng.next_below(300);  // events
        std::vector<double> deltas(n - 1);
        for (auto& d : deltas) d = rng.next_double() * 1000.0;
        CHECK(build_map(series_of(std::move(deltas))).size() == n - 2);
    }
}

TEST_CASE("consecutive points share a coordinate") {
    const auto series = sample(default_specs().at("exponential"), 200, 11);
    const auto map = build_map(series);
    for (std::size_t k = 0; k + 1 < map.size(); ++k)
        CHECK(map.points[k].t_after == map.points[k + 1].t_before);
}

TEST_CASE("time reversal reflects the point set across the diagonal") {
    auto series = sample(default_specs().at("mixture"), 500, 13);
    auto reversed = series;
    std::reverse(reversed.deltas.begin(), reversed.deltas.end());
    const auto fwd = build_map(series);
    const auto bwd = build_map(reversed);
    REQUIRE(fwd.size() == bwd.size());
    for (std::size_t k = 0; k < fwd.size(); ++k) {
        CHECK(fwd.points[k].t_before == bwd.points[fwd.size() - 1 - k].t_after);
        CHECK(fwd.points[k].t_after == bwd.points[fwd.size() - 1 - k].t_before);
    }
}

TEST_CASE("plottable filter drops nonpositive coordinates") {
    TimeMap map;
    map.points = {{10, 0, 2}, {0, 20, 3}, {4, 4, 4}};
    const auto out = plottable_points(map);
    REQUIRE(out.size() == 1);
    CHECK(out.points[0].t_before == 4);
    CHECK(out.dropped_nonpositive == 2);

    const auto all_positive = build_map(series_of({1, 2, 3}));
    CHECK(plottable_points(all_positive).dropped_nonpositive == 0);
    CHECK(plottable_points(all_positive).size() == 2);
}

TEST_CASE("mixture dropped fraction tracks the nonpositive rate") {
    // each nonpositive delta can kill up to two points; Monte Carlo band
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto series = sample(default_specs().at("mixture"), 10000, seed);
        const auto map = build_map(series);
        const auto plottable = plottable_points(map);
        const double frac =
            static_cast<double>(plottable.dropped_nonpositive) / static_cast<double>(map.size());
        lo = std::min(lo, frac);
        hi = std::max(hi, frac);
    }
    CHECK(lo >= 0.13);
    CHECK(hi <= 0.19);
}

TEST_CASE("binning a single point") {
    TimeMap map;
    const double v = std::pow(10.0, 0.25);
    map.points = {{v, v, 2}};
    const auto grid = bin(map, 2, 2, Interval{0, 1}, Interval{0, 1});
    CHECK(grid.at(0, 0) == 1.0);
    CHECK(grid.total_mass == 1.0);
    CHECK(grid.excluded == 0);
}

TEST_CASE("binning conserves mass") {
    const auto series = sample(default_specs().at("exponential"), 1001, 3);
    const auto map = plottable_points(build_map(series));
    const auto grid = bin(map, 50, 50);
    CHECK(grid.total_mass == static_cast<double>(map.size()));
    CHECK(grid.excluded == 0);
    CHECK(std::accumulate(grid.cells.begin(), grid.cells.end(), 0.0) ==
          doctest::Approx(grid.total_mass).epsilon(1e-12));
}

TEST_CASE("explicit ranges exclude outside points exactly") {
    TimeMap map;
    map.points = {{1, 1, 2}, {10, 10, 3}, {1000, 1000, 4}, {-1, 5, 5}};
    const auto grid = bin(map, 4, 4, Interval{-0.5, 1.5}, Interval{-0.5, 1.5});
    CHECK(grid.total_mass == 2.0);
    CHECK(grid.excluded == 2);  // the 1000s point and the nonpositive one
    CHECK(grid.total_mass + static_cast<double>(grid.excluded) == 4.0);
}

TEST_CASE("top edge lands in the last cell") {
    TimeMap map;
    map.points = {{10, 10, 2}};
    const auto grid = bin(map, 5, 5, Interval{0, 1}, Interval{0, 1});
    CHECK(grid.at(4, 4) == 1.0);
    CHECK(grid.excluded == 0);
}

TEST_CASE("uniform independence puts a quarter of points above the midpoint") {
    const auto series = sample(default_specs().at("uniform"), 10001, 42);
    const auto map = plottable_points(build_map(series));
    std::size_t both_high = 0;
    for (const auto& p : map.points)
        if (p.t_before > 12.0 && p.t_after > 12.0) ++both_high;
    const double frac = static_cast<double>(both_high) / static_cast<double>(map.size());
    CHECK(frac >= 0.235);
    CHECK(frac <= 0.265);
}

TEST_CASE("exponential marginals at n = 10000") {
    const auto series = sample(default_specs().at("exponential"), 10000, 42);
    const auto map = plottable_points(build_map(series));
    double sx = 0, sy = 0;
    for (const auto& p : map.points) {
        sx += p.t_before;
        sy += p.t_after;
    }
    const auto n = static_cast<double>(map.size());
    CHECK(sx / n > 0.97);
    CHECK(sx / n < 1.03);
    CHECK(sy / n > 0.97);
    CHECK(sy / n < 1.03);
}

TEST_CASE("bin argument validation") {
    TimeMap map;
    map.points = {{1, 1, 2}};
    CHECK_THROWS_AS(bin(map, 10, 10, Interval{1, 1}, std::nullopt), EmptyRange);
    CHECK_THROWS_AS(bin(map, 10, 10, std::nullopt, Interval{2, 1}), EmptyRange);
    CHECK_THROWS_AS(bin(map, 0, 10), EmptyRange);
}

namespace {

// independent brute-force convolution with per-source boundary renormalization
LogGrid smooth_oracle(const LogGrid& grid, double sd) {
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(4.0 * sd));
    LogGrid out = grid;
    out.cells.assign(grid.cells.size(), 0.0);
    const auto w = static_cast<std::ptrdiff_t>(grid.bins_x);
    const auto h = static_cast<std::ptrdiff_t>(grid.bins_y);
    for (std::ptrdiff_t sy = 0; sy < h; ++sy)
        for (std::ptrdiff_t sx = 0; sx < w; ++sx) {
            const double mass =
                grid.cells[static_cast<std::size_t>(sy) * grid.bins_x +
                           static_cast<std::size_t>(sx)];
            if (mass == 0) continue;
            double total = 0;
            for (std::ptrdiff_t ty = 0; ty < h; ++ty)
                for (std::ptrdiff_t tx = 0; tx < w; ++tx) {
                    if (std::abs(tx - sx) > radius || std::abs(ty - sy) > radius) continue;
                    total += std::exp(-(std::pow(double(tx - sx), 2) +
                                        std::pow(double(ty - sy), 2)) /
                                      (2 * sd * sd));
                }
            for (std::ptrdiff_t ty = 0; ty < h; ++ty)
                for (std::ptrdiff_t tx = 0; tx < w; ++tx) {
                    if (std::abs(tx - sx) > radius || std::abs(ty - sy) > radius) continue;
                    out.cells[static_cast<std::size_t>(ty) * grid.bins_x +
                              static_cast<std::size_t>(tx)] +=
                        mass *
                        std::exp(-(std::pow(double(tx - sx), 2) +
                                   std::pow(double(ty - sy), 2)) /
                                 (2 * sd * sd)) /
                        total;
                }
        }
    return out;
}

}  // namespace

TEST_CASE("smoothing spreads symmetrically and keeps the peak") {
    LogGrid grid;
    grid.bins_x = grid.bins_y = 9;
    grid.cells.assign(81, 0.0);
    grid.at(4, 4) = 10.0;
    grid.total_mass = 10.0;
    const auto out = smooth(grid, 1.0);
    CHECK(out.at(4, 4) > out.at(3, 4));
    CHECK(out.at(3, 4) == doctest::Approx(out.at(5, 4)).epsilon(1e-12));
    CHECK(out.at(4, 3) == doctest::Approx(out.at(4, 5)).epsilon(1e-12));
    const double argmax = *std::max_element(out.cells.begin(), out.cells.end());
    CHECK(argmax == out.at(4, 4));
    CHECK(std::accumulate(out.cells.begin(), out.cells.end(), 0.0) ==
          doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("corner delta against the brute-force oracle") {
    LogGrid grid;
    grid.bins_x = grid.bins_y = 5;
    grid.cells.assign(25, 0.0);
    grid.at(0, 0) = 3.0;
    grid.total_mass = 3.0;
    const auto fast = smooth(grid, 1.0);
    const auto oracle = smooth_oracle(grid, 1.0);
    for (std::size_t i = 0; i < 25; ++i)
        CHECK(fast.cells[i] == doctest::Approx(oracle.cells[i]).epsilon(1e-10));
    CHECK(*std::max_element(fast.cells.begin(), fast.cells.end()) == fast.at(0, 0));
    CHECK(std::accumulate(fast.cells.begin(), fast.cells.end(), 0.0) ==
          doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("random grids conserve mass under smoothing") {
    Xoshiro256pp rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        LogGrid grid;
        grid.bins_x = 3 + rng.next_below(12);
        grid.bins_y = 3 + rng.next_below(12);
        grid.cells.assign(grid.bins_x * grid.bins_y, 0.0);
        double total = 0;
        for (auto& c : grid.cells)
            if (rng.next_double() < 0.3) {
                c = rng.next_double() * 10;
                total += c;
            }
        grid.total_mass = total;
        const double sd = 0.2 + rng.next_double() * 2.5;
        const auto out = smooth(grid, sd);
        const double sum = std::accumulate(out.cells.begin(), out.cells.end(), 0.0);
        CHECK(sum == doctest::Approx(total).epsilon(1e-6));
    }
}

TEST_CASE("tiny sd is the identity, nonpositive sd throws") {
    LogGrid grid;
    grid.bins_x = grid.bins_y = 4;
    grid.cells.assign(16, 1.0);
    grid.total_mass = 16.0;
    const auto out = smooth(grid, 0.01);
    for (std::size_t i = 0; i < 16; ++i) CHECK(out.cells[i] == grid.cells[i]);
    CHECK_THROWS_AS(smooth(grid, 0.0), InvalidKernel);
    CHECK_THROWS_AS(smooth(grid, -1.0), InvalidKernel);
}
