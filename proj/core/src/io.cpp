#include "timemap/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "timemap/errors.hpp"

namespace timemap {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, std::size_t row) {
    double v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw MalformedTimestamp(row, std::string(s));
    return v;
}

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
    std::size_t pos = 0, row = 0;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string_view line = strip(content.substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty()) fn(line, row++);
        if (pos > content.size()) break;
    }
}

std::string fmt_double(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
}

InputKind detect_input_kind(std::string_view content) {
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string_view line = strip(content.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '{') return InputKind::EventsJsonl;
        if (line.find("created_at") != std::string_view::npos) return InputKind::EventsCsv;
        if (line.substr(0, 5) == "delta") return InputKind::DeltaCsv;
        break;
    }
    throw Error("cannot detect input kind (expected created_at/delta header or JSONL)");
}

const char* unit_name(DeltaUnit unit) {
    switch (unit) {
        case DeltaUnit::Seconds: return "seconds";
        case DeltaUnit::Hours: return "hours";
        case DeltaUnit::Unitless: return "unitless";
    }
    return "seconds";
}

DeltaUnit unit_from_name(std::string_view name) {
    if (name == "hours") return DeltaUnit::Hours;
    if (name == "unitless") return DeltaUnit::Unitless;
    return DeltaUnit::Seconds;
}

std::string serialize_deltas_csv(const InterarrivalSeries& series) {
    std::string out = "# unit=";
    out += unit_name(series.unit);
    out += "\ndelta\n";
    for (double d : series.deltas) {
        out += fmt_double(d);
        out += '\n';
    }
    return out;
}

InterarrivalSeries parse_deltas_csv(std::string_view content) {
    InterarrivalSeries series;
    bool header_seen = false;
    for_each_line(content, [&](std::string_view line, std::size_t) {
        if (line.front() == '#') {
            const auto pos = line.find("unit=");
            if (pos != std::string_view::npos)
                series.unit = unit_from_name(strip(line.substr(pos + 5)));
            return;
        }
        if (!header_seen) {
            if (line.substr(0, 5) != "delta") throw Error("delta CSV must start with 'delta'");
            header_seen = true;
            return;
        }
        series.deltas.push_back(parse_double(line, series.deltas.size() + 1));
    });
    return series;
}

std::string serialize_points_csv(const TimeMap& map) {
    std::string out = "# unit=";
    out += unit_name(map.unit);
    out += "\n# dropped_nonpositive=" + std::to_string(map.dropped_nonpositive);
    out += "\nevent_index,t_before,t_after\n";
    for (const auto& p : map.points) {
        out += std::to_string(p.event_index);
        out += ',';
        out += fmt_double(p.t_before);
        out += ',';
        out += fmt_double(p.t_after);
        out += '\n';
    }
    return out;
}

TimeMap parse_points_csv(std::string_view content) {
    TimeMap map;
    bool header_seen = false;
    for_each_line(content, [&](std::string_view line, std::size_t) {
        if (line.front() == '#') {
            auto pos = line.find("unit=");
            if (pos != std::string_view::npos) map.unit = unit_from_name(strip(line.substr(pos + 5)));
            pos = line.find("dropped_nonpositive=");
            if (pos != std::string_view::npos)
                map.dropped_nonpositive =
                    static_cast<std::size_t>(std::atoll(line.data() + pos + 20));
            return;
        }
        if (!header_seen) {
            header_seen = true;
            return;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw Error("bad points row: " + std::string(line));
        const std::size_t row = map.points.size() + 1;
        map.points.push_back(
            {parse_double(strip(line.substr(c1 + 1, c2 - c1 - 1)), row),
             parse_double(strip(line.substr(c2 + 1)), row),
             static_cast<std::size_t>(std::atoll(std::string(line.substr(0, c1)).c_str()))});
    });
    return map;
}

std::string serialize_grid_json(const LogGrid& grid) {
    nlohmann::json j;
    j["bins_x"] = grid.bins_x;
    j["bins_y"] = grid.bins_y;
    j["x_range"] = {grid.x_range.lo, grid.x_range.hi};
    j["y_range"] = {grid.y_range.lo, grid.y_range.hi};
    j["cells"] = grid.cells;
    j["total_mass"] = grid.total_mass;
    j["excluded"] = grid.excluded;
    return j.dump(2) + "\n";
}

LogGrid parse_grid_json(std::string_view content) {
    const auto j = nlohmann::json::parse(content);
    LogGrid grid;
    grid.bins_x = j.at("bins_x").get<std::size_t>();
    grid.bins_y = j.at("bins_y").get<std::size_t>();
    grid.x_range = {j.at("x_range")[0].get<double>(), j.at("x_range")[1].get<double>()};
    grid.y_range = {j.at("y_range")[0].get<double>(), j.at("y_range")[1].get<double>()};
    grid.cells = j.at("cells").get<std::vector<double>>();
    grid.total_mass = j.at("total_mass").get<double>();
    grid.excluded = j.at("excluded").get<std::size_t>();
    if (grid.cells.size() != grid.bins_x * grid.bins_y)
        throw Error("grid cells length does not match bins");
    return grid;
}

std::string serialize_events_csv(const EventStream& stream) {
    std::string out = stream.source_id.empty() ? std::string("created_at\n")
                                               : std::string("created_at,source_id\n");
    for (auto t : stream.timestamps) {
        out += format_timestamp_iso(t);
        if (!stream.source_id.empty()) {
            out += ',';
            out += stream.source_id;
        }
        out += '\n';
    }
    return out;
}

std::string serialize_events_jsonl(const EventStream& stream) {
    std::string out;
    for (auto t : stream.timestamps) {
        nlohmann::json j;
        j["created_at"] = format_timestamp_iso(t);
        if (!stream.source_id.empty()) j["source_id"] = stream.source_id;
        out += j.dump();
        out += '\n';
    }
    return out;
}

InterarrivalSeries load_series(const std::string& path, std::optional<InputKind> kind,
                               std::string* source_id, std::size_t* n_events) {
    const std::string content = read_file(path);
    const InputKind k = kind ? *kind : detect_input_kind(content);
    if (k == InputKind::DeltaCsv) {
        auto series = parse_deltas_csv(content);
        if (n_events) *n_events = series.deltas.empty() ? 0 : series.deltas.size() + 1;
        return series;
    }
    const EventStream stream =
        parse_events(content, k == InputKind::EventsCsv ? EventFormat::Csv : EventFormat::Jsonl);
    if (source_id && !stream.source_id.empty()) *source_id = stream.source_id;
    if (n_events) *n_events = stream.size();
    return interarrivals(stream);
}

std::map<std::string, std::string> parse_config(std::string_view content) {
    std::map<std::string, std::string> out;
    for_each_line(content, [&](std::string_view line, std::size_t) {
        if (line.front() == '#') return;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error("config line missing '=': " + std::string(line));
        out[std::string(strip(line.substr(0, eq)))] = std::string(strip(line.substr(eq + 1)));
    });
    return out;
}

std::string serialize_report_json(const std::string& source_id, const Verdict& verdict,
                                  const ReportParams& params, const RegionTaxonomy& taxonomy) {
    const FeatureProfile& p = verdict.profile;
    nlohmann::json j;
    j["source_id"] = source_id;
    j["n_events"] = p.n_events;

    nlohmann::json f;
    f["n_points"] = p.n_points;
    f["coverage"] = p.coverage;
    f["occupied_cells"] = p.occupied_cells;
    f["vertical_score"] = p.vertical_score;
    f["horizontal_score"] = p.horizontal_score;
    f["vertical_detected"] = p.vertical_detected;
    f["horizontal_detected"] = p.horizontal_detected;
    f["diurnal_gap_detected"] = p.diurnal_gap_detected;
    if (p.diurnal_gap_width) f["diurnal_gap_width"] = *p.diurnal_gap_width;
    f["burstiness_cv"] = p.burstiness_cv;
    f["nearest_dgp"] = nearest_dgp_tag(p);
    nlohmann::json occ = nlohmann::json::array();
    for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t col = 0; col < 4; ++col)
            occ.push_back({{"row", row},
                           {"col", col},
                           {"label", taxonomy.labels[row][col]},
                           {"fraction", p.occupancy[row * 4 + col]}});
    f["occupancy"] = occ;
    j["features"] = f;

    j["verdict"] = to_string(verdict.label);
    j["fired_rules"] = verdict.fired_rules;

    nlohmann::json prm;
    prm["bins_x"] = params.bins_x;
    prm["bins_y"] = params.bins_y;
    prm["smoothing_sd"] = params.smoothing_sd;
    prm["mass_threshold"] = params.thresholds.mass_threshold;
    prm["span_threshold"] = params.thresholds.span_threshold;
    prm["gap_threshold"] = params.thresholds.gap_threshold;
    prm["coverage_threshold"] = params.thresholds.coverage_threshold;
    prm["seed"] = params.seed;
    if (!params.resample_mode.empty()) prm["resample_mode"] = params.resample_mode;
    j["parameters"] = prm;
    return j.dump(2) + "\n";
}

}  // namespace timemap
