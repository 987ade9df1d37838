#pragma once

#include <map>
#include <optional>
#include <string>

#include "timemap/events.hpp"
#include "timemap/features.hpp"
#include "timemap/map.hpp"

namespace timemap {

enum class InputKind { EventsCsv, EventsJsonl, DeltaCsv };

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// `created_at` header -> events CSV, `delta` header -> delta CSV, a leading
// '{' -> events JSONL.
InputKind detect_input_kind(std::string_view content);

const char* unit_name(DeltaUnit unit);
DeltaUnit unit_from_name(std::string_view name);

// Single-column `delta` CSV with a `# unit=...` comment line.
std::string serialize_deltas_csv(const InterarrivalSeries& series);
InterarrivalSeries parse_deltas_csv(std::string_view content);

// `event_index,t_before,t_after` with a `# unit=...` comment line.
std::string serialize_points_csv(const TimeMap& map);
TimeMap parse_points_csv(std::string_view content);

std::string serialize_grid_json(const LogGrid& grid);
LogGrid parse_grid_json(std::string_view content);

std::string serialize_events_csv(const EventStream& stream);
std::string serialize_events_jsonl(const EventStream& stream);

// Loads any supported input and reduces it to an interarrival series.
// Events inputs go through interarrivals(); delta inputs are taken verbatim.
InterarrivalSeries load_series(const std::string& path,
                               std::optional<InputKind> kind = std::nullopt,
                               std::string* source_id = nullptr,
                               std::size_t* n_events = nullptr);

// Flat `key = value` grammar with `#` comments; later keys win.
std::map<std::string, std::string> parse_config(std::string_view content);

struct ReportParams {
    std::size_t bins_x = 50;
    std::size_t bins_y = 50;
    double smoothing_sd = 1.0;
    FeatureThresholds thresholds;
    std::uint64_t seed = 0;
    std::string resample_mode;  // informational, empty when unused
};

std::string serialize_report_json(const std::string& source_id, const Verdict& verdict,
                                  const ReportParams& params, const RegionTaxonomy& taxonomy);

}  // namespace timemap
