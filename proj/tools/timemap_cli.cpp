// timemap: build, render and analyze time maps of event interarrival times.
//
// Subcommands: simulate, map, analyze, render, resample.
// Exit codes: 0 success, 1 usage/argument error, 2 data or I/O error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "timemap/dgp.hpp"
#include "timemap/errors.hpp"
#include "timemap/features.hpp"
#include "timemap/io.hpp"
#include "timemap/map.hpp"
#include "timemap/render.hpp"

namespace {

using namespace timemap;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TIMEMAP_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

struct CommonConfig {
    std::string config_path;
    std::size_t bins_x = 50;
    std::size_t bins_y = 50;
    double smoothing_sd = 1.0;
    FeatureThresholds thresholds;

    // flags override file values, so remember which flags the user set
    void apply_file(const CLI::App& cmd) {
        if (config_path.empty()) return;
        const auto kv = parse_config(read_file(config_path));
        auto get = [&](const char* key, auto& target, const char* flag) {
            auto it = kv.find(key);
            if (it != kv.end() && cmd.count(flag) == 0)
                target = static_cast<std::decay_t<decltype(target)>>(std::stod(it->second));
        };
        get("bins_x", bins_x, "--bins-x");
        get("bins_y", bins_y, "--bins-y");
        get("smoothing_sd", smoothing_sd, "--smoothing-sd");
        get("mass_threshold", thresholds.mass_threshold, "--mass-threshold");
        get("span_threshold", thresholds.span_threshold, "--span-threshold");
        get("gap_threshold", thresholds.gap_threshold, "--gap-threshold");
        get("coverage_threshold", thresholds.coverage_threshold, "--coverage-threshold");
    }
};

void add_common_options(CLI::App& cmd, CommonConfig& cfg) {
    cmd.add_option("--config", cfg.config_path, "flat key=value config file");
    cmd.add_option("--bins-x", cfg.bins_x, "grid columns")->capture_default_str();
    cmd.add_option("--bins-y", cfg.bins_y, "grid rows")->capture_default_str();
    cmd.add_option("--smoothing-sd", cfg.smoothing_sd, "heatmap kernel sd in bins")
        ->capture_default_str();
    cmd.add_option("--mass-threshold", cfg.thresholds.mass_threshold,
                   "line-feature column/row mass fraction")
        ->capture_default_str();
    cmd.add_option("--span-threshold", cfg.thresholds.span_threshold,
                   "line-feature occupied-extent fraction")
        ->capture_default_str();
    cmd.add_option("--gap-threshold", cfg.thresholds.gap_threshold,
                   "diurnal gap width in log10 units")
        ->capture_default_str();
    cmd.add_option("--coverage-threshold", cfg.thresholds.coverage_threshold,
                   "limited-variability coverage bound")
        ->capture_default_str();
}

std::optional<InputKind> parse_kind_flag(const std::string& kind) {
    if (kind.empty()) return std::nullopt;
    if (kind == "events-csv") return InputKind::EventsCsv;
    if (kind == "events-jsonl") return InputKind::EventsJsonl;
    if (kind == "deltas") return InputKind::DeltaCsv;
    throw CLI::ValidationError("--kind", "expected events-csv, events-jsonl or deltas");
}

int run(int argc, char** argv) {
    CLI::App app{"Time maps of discrete-event interarrival times"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "draw interarrival times from an idealized DGP");
    std::string sim_dgp, sim_out = "-";
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = default_seed();
    sim->add_option("--dgp", sim_dgp,
                    "one of: exponential, uniform, gaussian, lognormal, mixture")
        ->required();
    sim->add_option("--n", sim_n, "number of draws")->capture_default_str();
    sim->add_option("--seed", sim_seed, "PRNG seed")->capture_default_str();
    sim->add_option("--out", sim_out, "delta CSV path, '-' for stdout")->capture_default_str();

    // map
    auto* mapcmd = app.add_subcommand("map", "events or deltas -> time-map points and grid");
    std::string map_in, map_points_out, map_grid_out, map_kind;
    CommonConfig map_cfg;
    double map_xlo = 0, map_xhi = 0, map_ylo = 0, map_yhi = 0;
    mapcmd->add_option("input", map_in, "events CSV/JSONL or delta CSV")->required();
    mapcmd->add_option("--points-out", map_points_out, "points CSV path");
    mapcmd->add_option("--grid-out", map_grid_out, "grid JSON path");
    mapcmd->add_option("--kind", map_kind, "events-csv | events-jsonl | deltas");
    auto* xr = mapcmd->add_option("--x-range", "explicit log10 x range")
                   ->expected(2)
                   ->check(CLI::Number);
    auto* yr = mapcmd->add_option("--y-range", "explicit log10 y range")
                   ->expected(2)
                   ->check(CLI::Number);
    add_common_options(*mapcmd, map_cfg);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "feature profile + rule verdict as JSON");
    std::string an_in, an_out = "-", an_kind;
    CommonConfig an_cfg;
    analyze->add_option("input", an_in, "events CSV/JSONL or delta CSV")->required();
    analyze->add_option("--out", an_out, "report JSON path, '-' for stdout")
        ->capture_default_str();
    analyze->add_option("--kind", an_kind, "events-csv | events-jsonl | deltas");
    add_common_options(*analyze, an_cfg);

    // render
    auto* render = app.add_subcommand("render", "points CSV / grid JSON -> SVG");
    std::vector<std::string> r_inputs;
    std::string r_out, r_layout, r_banner, r_mode, r_title;
    bool r_smooth = false;
    CommonConfig r_cfg;
    render->add_option("inputs", r_inputs, "points CSV (scatter) or grid JSON (heatmap)")
        ->required();
    render->add_option("--out", r_out, "output SVG path")->required();
    render->add_option("--layout", r_layout, "RxC panel layout for multiple inputs");
    render->add_option("--banner", r_banner, "panel banner text");
    render->add_option("--mode", r_mode, "force scatter|heatmap instead of per-file detection");
    render->add_option("--title", r_title, "plot title (single input)");
    std::vector<std::string> r_titles;
    render->add_option("--titles", r_titles, "per-input titles for panel layouts");
    render->add_flag("--smooth", r_smooth, "apply Gaussian smoothing to heatmap grids");
    add_common_options(*render, r_cfg);

    // resample
    auto* resample = app.add_subcommand("resample", "subsample an event stream");
    std::string rs_in, rs_out;
    std::size_t rs_n = 0;
    std::uint64_t rs_seed = default_seed();
    std::string rs_mode = "uniform_events";
    resample->add_option("input", rs_in, "events CSV/JSONL")->required();
    resample->add_option("--n", rs_n, "sample size")->required();
    resample->add_option("--mode", rs_mode, "uniform_events | contiguous_window")
        ->capture_default_str();
    resample->add_option("--seed", rs_seed, "PRNG seed")->capture_default_str();
    resample->add_option("--out", rs_out, "events CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    auto emit = [](const std::string& path, const std::string& content) {
        if (path == "-")
            std::cout << content;
        else
            write_file(path, content);
    };

    if (sim->parsed()) {
        auto specs = default_specs();
        auto it = specs.find(sim_dgp);
        if (it == specs.end()) {
            std::cerr << "unknown dgp '" << sim_dgp
                      << "'; expected exponential, uniform, gaussian, lognormal or mixture\n"
                      << sim->help();
            return 1;
        }
        const auto series = sample(it->second, sim_n, sim_seed);
        emit(sim_out, serialize_deltas_csv(series));
        std::cerr << "simulate: " << it->second.describe() << " n=" << sim_n
                  << " seed=" << sim_seed << "\n";
        return 0;
    }

    if (mapcmd->parsed()) {
        map_cfg.apply_file(*mapcmd);
        const auto series = load_series(map_in, parse_kind_flag(map_kind));
        const TimeMap plottable = plottable_points(build_map(series));
        std::optional<Interval> xrange, yrange;
        if (xr->count()) {
            const auto v = xr->as<std::vector<double>>();
            map_xlo = v[0]; map_xhi = v[1];
            xrange = Interval{map_xlo, map_xhi};
        }
        if (yr->count()) {
            const auto v = yr->as<std::vector<double>>();
            map_ylo = v[0]; map_yhi = v[1];
            yrange = Interval{map_ylo, map_yhi};
        }
        if (!map_points_out.empty()) emit(map_points_out, serialize_points_csv(plottable));
        if (!map_grid_out.empty())
            emit(map_grid_out, serialize_grid_json(
                                   bin(plottable, map_cfg.bins_x, map_cfg.bins_y, xrange, yrange)));
        std::cerr << "map: " << plottable.size() << " points, dropped_nonpositive="
                  << plottable.dropped_nonpositive << "\n";
        return 0;
    }

    if (analyze->parsed()) {
        an_cfg.apply_file(*analyze);
        std::string source_id = an_in;
        std::size_t n_events = 0;
        const auto series = load_series(an_in, parse_kind_flag(an_kind), &source_id, &n_events);
        const auto taxonomy = default_taxonomy();
        auto profile =
            compute_profile(series, an_cfg.bins_x, an_cfg.bins_y, an_cfg.thresholds, taxonomy);
        profile.n_events = n_events;
        const Verdict verdict = classify(profile, default_rules());
        ReportParams params;
        params.bins_x = an_cfg.bins_x;
        params.bins_y = an_cfg.bins_y;
        params.smoothing_sd = an_cfg.smoothing_sd;
        params.thresholds = an_cfg.thresholds;
        emit(an_out, serialize_report_json(source_id, verdict, params, taxonomy));
        return 0;
    }

    if (render->parsed()) {
        r_cfg.apply_file(*render);
        std::vector<std::string> docs;
        for (std::size_t i = 0; i < r_inputs.size(); ++i) {
            const auto& path = r_inputs[i];
            const std::string content = read_file(path);
            const bool heatmap = r_mode == "heatmap" ||
                                 (r_mode.empty() && !content.empty() && content.front() == '{');
            PlotSpec spec;
            if (r_inputs.size() == 1) spec.title = r_title;
            if (i < r_titles.size()) spec.title = r_titles[i];
            if (heatmap) {
                spec.mode = PlotMode::Heatmap;
                LogGrid grid = parse_grid_json(content);
                if (r_smooth) grid = smooth(grid, r_cfg.smoothing_sd);
                docs.push_back(heatmap_svg(grid, spec));
            } else {
                docs.push_back(scatter_svg(parse_points_csv(content), spec));
            }
        }
        if (docs.size() == 1 && r_layout.empty()) {
            emit(r_out, docs.front());
        } else {
            std::size_t rows = 1, cols = docs.size();
            if (!r_layout.empty()) {
                const auto x = r_layout.find('x');
                if (x == std::string::npos) {
                    std::cerr << "bad --layout, expected RxC\n";
                    return 1;
                }
                rows = std::stoul(r_layout.substr(0, x));
                cols = std::stoul(r_layout.substr(x + 1));
            }
            emit(r_out, panel(docs, rows, cols, r_banner));
        }
        return 0;
    }

    if (resample->parsed()) {
        const std::string content = read_file(rs_in);
        const InputKind kind = detect_input_kind(content);
        if (kind == InputKind::DeltaCsv) {
            std::cerr << "resample expects an events file\n";
            return 1;
        }
        const EventStream stream = parse_events(
            content, kind == InputKind::EventsCsv ? EventFormat::Csv : EventFormat::Jsonl);
        const EventStream out = resample_events(
            stream, rs_n,
            rs_mode == "contiguous_window" ? ResampleMode::ContiguousWindow
                                           : ResampleMode::UniformEvents,
            rs_seed);
        emit(rs_out, serialize_events_csv(out));
        std::cerr << "resample: n=" << rs_n << " mode=" << rs_mode << " seed=" << rs_seed
                  << "\n";
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SampleTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidN& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const LayoutOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const timemap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
