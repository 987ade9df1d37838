#include <benchmark/benchmark.h>

#include "timemap/dgp.hpp"
#include "timemap/features.hpp"
#include "timemap/map.hpp"
#include "timemap/render.hpp"

using namespace timemap;

static void BM_Sample(benchmark::State& state) {
    const auto spec = default_specs().at("mixture");
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample(spec, n, 42));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000);

static void BM_BuildAndBin(benchmark::State& state) {
    const auto series = sample(default_specs().at("exponential"),
                               static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        const auto map = plottable_points(build_map(series));
        benchmark::DoNotOptimize(bin(map, 50, 50));
    }
}
BENCHMARK(BM_BuildAndBin)->Arg(1000)->Arg(10000);

static void BM_Smooth(benchmark::State& state) {
    const auto series = sample(default_specs().at("exponential"), 10000, 42);
    const auto grid = bin(plottable_points(build_map(series)), 50, 50);
    for (auto _ : state) benchmark::DoNotOptimize(smooth(grid, 1.0));
}
BENCHMARK(BM_Smooth);

static void BM_Profile(benchmark::State& state) {
    const auto series = sample(default_specs().at("mixture"), 10000, 42);
    const auto taxonomy = default_taxonomy();
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_profile(series, 50, 50, FeatureThresholds{}, taxonomy));
}
BENCHMARK(BM_Profile);

static void BM_ScatterSvg(benchmark::State& state) {
    const auto series = sample(default_specs().at("exponential"), 10000, 42);
    const auto map = plottable_points(build_map(series));
    for (auto _ : state) benchmark::DoNotOptimize(scatter_svg(map, PlotSpec{}));
}
BENCHMARK(BM_ScatterSvg);

BENCHMARK_MAIN();
