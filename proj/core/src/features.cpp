#include "timemap/features.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "timemap/errors.hpp"

namespace timemap {

std::string to_string(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::HumanSpontaneous: return "HumanSpontaneous";
        case VerdictLabel::HumanScheduledHybrid: return "HumanScheduledHybrid";
        case VerdictLabel::Bot: return "Bot";
        case VerdictLabel::BotUnique: return "BotUnique";
        case VerdictLabel::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

LineFeatures line_features(const LogGrid& grid, double mass_threshold, double span_threshold) {
    if (!(grid.total_mass > 0)) throw EmptyGrid("line features need a grid with mass");
    LineFeatures out;

    auto scan = [&](bool columns) {
        const std::size_t outer = columns ? grid.bins_x : grid.bins_y;
        const std::size_t inner = columns ? grid.bins_y : grid.bins_x;
        double best = 0;
        for (std::size_t j = 0; j < outer; ++j) {
            double mass = 0;
            std::size_t lo = inner, hi = 0;
            for (std::size_t i = 0; i < inner; ++i) {
                const double v = columns ? grid.at(j, i) : grid.at(i, j);
                if (v > 0) {
                    mass += v;
                    lo = std::min(lo, i);
                    hi = std::max(hi, i);
                }
            }
            if (mass == 0) continue;
            const double mass_frac = mass / grid.total_mass;
            const double span_frac =
                static_cast<double>(hi - lo + 1) / static_cast<double>(inner);
            best = std::max(best, std::min(mass_frac / mass_threshold,
                                           span_frac / span_threshold));
        }
        return best;
    };

    out.vertical_score = scan(true);
    out.horizontal_score = scan(false);
    out.vertical_detected = out.vertical_score >= 1.0;
    out.horizontal_detected = out.horizontal_score >= 1.0;
    return out;
}

double coverage_fraction(const LogGrid& grid) {
    if (grid.cells.empty()) return 0;
    std::size_t occupied = 0;
    for (double c : grid.cells)
        if (c > 0) ++occupied;
    return static_cast<double>(occupied) / static_cast<double>(grid.cells.size());
}

DiurnalGap diurnal_gap(const InterarrivalSeries& series, double gap_threshold) {
    DiurnalGap out;
    std::vector<double> logs;
    logs.reserve(series.deltas.size());
    for (double d : series.deltas)
        if (d > 0) logs.push_back(std::log10(d));
    std::sort(logs.begin(), logs.end());
    logs.erase(std::unique(logs.begin(), logs.end()), logs.end());
    if (logs.size() < 2) return out;

    const double window_lo = std::log10(600.0);     // 10 min
    const double window_hi = std::log10(86400.0);   // 24 h
    const double sleep_min = std::log10(14400.0);   // 4 h
    double widest = 0;
    for (std::size_t i = 1; i < logs.size(); ++i) {
        // the empty band must touch the 10 min .. 24 h window and be bounded
        // above by a sleep-scale lull, so a scheduler's 30 s vs 1 h split
        // does not register as a night
        if (logs[i] < window_lo || logs[i - 1] > window_hi) continue;
        if (logs[i] < sleep_min) continue;
        widest = std::max(widest, logs[i] - logs[i - 1]);
    }
    if (widest > 0) out.width = widest;
    out.detected = widest >= gap_threshold;
    return out;
}

double burstiness_cv(const InterarrivalSeries& series) {
    const auto& d = series.deltas;
    if (d.size() < 2) throw DegenerateSeries("cv needs at least two deltas");
    double mean = 0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    if (!(mean > 0)) throw DegenerateSeries("cv needs a positive mean delta");
    double ss = 0;
    for (double v : d) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(d.size() - 1)) / mean;
}

std::vector<Rule> default_rules() {
    return {
        {"R1", VerdictLabel::BotUnique,
         "coverage < 0.02 && n_points >= 100 && occupied_cells >= 2 && !any_line_feature"},
        {"R2", VerdictLabel::Bot, "any_line_feature && !diurnal_gap_detected"},
        {"R3", VerdictLabel::HumanScheduledHybrid, "any_line_feature && diurnal_gap_detected"},
        {"R4", VerdictLabel::HumanSpontaneous, "!any_line_feature && diurnal_gap_detected"},
    };
}

namespace {

bool bool_field(const FeatureProfile& p, std::string_view name, bool& out) {
    if (name == "vertical_detected") out = p.vertical_detected;
    else if (name == "horizontal_detected") out = p.horizontal_detected;
    else if (name == "diurnal_gap_detected") out = p.diurnal_gap_detected;
    else if (name == "any_line_feature") out = p.vertical_detected || p.horizontal_detected;
    else return false;
    return true;
}

bool numeric_field(const FeatureProfile& p, std::string_view name, double& out) {
    if (name == "coverage") out = p.coverage;
    else if (name == "occupied_cells") out = static_cast<double>(p.occupied_cells);
    else if (name == "n_points") out = static_cast<double>(p.n_points);
    else if (name == "n_events") out = static_cast<double>(p.n_events);
    else if (name == "burstiness_cv") out = p.burstiness_cv;
    else if (name == "vertical_score") out = p.vertical_score;
    else if (name == "horizontal_score") out = p.horizontal_score;
    else return false;
    return true;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool eval_term(const FeatureProfile& p, std::string_view term, const std::string& rule_id) {
    term = strip(term);
    if (term.empty()) throw InvalidRule("empty term in rule " + rule_id);

    static constexpr std::string_view ops[] = {"<=", ">=", "==", "<", ">"};
    for (auto op : ops) {
        const auto pos = term.find(op);
        if (pos == std::string_view::npos) continue;
        const auto name = strip(term.substr(0, pos));
        const auto rhs = strip(term.substr(pos + op.size()));
        double lhs_value;
        if (!numeric_field(p, name, lhs_value))
            throw InvalidRule("unknown numeric field '" + std::string(name) + "' in rule " +
                              rule_id);
        double rhs_value;
        auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), rhs_value);
        if (ec != std::errc{} || ptr != rhs.data() + rhs.size())
            throw InvalidRule("bad number '" + std::string(rhs) + "' in rule " + rule_id);
        if (op == "<") return lhs_value < rhs_value;
        if (op == "<=") return lhs_value <= rhs_value;
        if (op == ">") return lhs_value > rhs_value;
        if (op == ">=") return lhs_value >= rhs_value;
        return lhs_value == rhs_value;
    }

    bool negate = false;
    while (!term.empty() && term.front() == '!') {
        negate = !negate;
        term = strip(term.substr(1));
    }
    bool value;
    if (!bool_field(p, term, value))
        throw InvalidRule("unknown boolean field '" + std::string(term) + "' in rule " + rule_id);
    return negate ? !value : value;
}

bool eval_predicate(const FeatureProfile& p, const Rule& rule) {
    std::string_view pred = rule.predicate;
    std::size_t start = 0;
    while (true) {
        const auto pos = pred.find("&&", start);
        const auto term = pred.substr(start, pos == std::string_view::npos ? pos : pos - start);
        if (!eval_term(p, term, rule.id)) return false;
        if (pos == std::string_view::npos) return true;
        start = pos + 2;
    }
}

}  // namespace

Verdict classify(const FeatureProfile& profile, const std::vector<Rule>& rules) {
    Verdict verdict;
    verdict.profile = profile;
    for (const auto& rule : rules) {
        if (eval_predicate(profile, rule)) {
            verdict.label = rule.label;
            verdict.fired_rules.push_back(rule.id);
            return verdict;
        }
    }
    verdict.label = VerdictLabel::Indeterminate;
    return verdict;
}

FeatureProfile compute_profile(const InterarrivalSeries& series, std::size_t bins_x,
                               std::size_t bins_y, const FeatureThresholds& thresholds,
                               const RegionTaxonomy& taxonomy) {
    FeatureProfile profile;
    profile.n_events = series.deltas.empty() ? 0 : series.deltas.size() + 1;

    const TimeMap full = build_map(series);
    const TimeMap map = plottable_points(full);
    profile.n_points = map.size();
    profile.occupancy = occupancy(map, taxonomy);

    if (series.deltas.size() >= 2) {
        double mean = 0;
        for (double v : series.deltas) mean += v;
        if (mean > 0) profile.burstiness_cv = burstiness_cv(series);
    }

    const DiurnalGap gap = diurnal_gap(series, thresholds.gap_threshold);
    profile.diurnal_gap_detected = gap.detected;
    profile.diurnal_gap_width = gap.width;

    if (!map.points.empty()) {
        const LogGrid grid = bin(map, bins_x, bins_y);
        profile.coverage = coverage_fraction(grid);
        std::size_t occupied = 0;
        for (double c : grid.cells)
            if (c > 0) ++occupied;
        profile.occupied_cells = occupied;
        if (grid.total_mass > 0) {
            const LineFeatures lines =
                line_features(grid, thresholds.mass_threshold, thresholds.span_threshold);
            profile.vertical_score = lines.vertical_score;
            profile.horizontal_score = lines.horizontal_score;
            profile.vertical_detected = lines.vertical_detected;
            profile.horizontal_detected = lines.horizontal_detected;
        }
    }
    return profile;
}

std::string nearest_dgp_tag(const FeatureProfile& profile) {
    if (profile.n_points < 2) return "unknown";
    const double cv = profile.burstiness_cv;
    std::string tag;
    if (cv < 0.35) tag = "gaussian";
    else if (cv < 0.8) tag = "uniform";
    else if (cv < 1.1) tag = "exponential";
    else tag = "mixture";
    if (profile.coverage > 0 && profile.coverage < 0.02) tag += " (small dispersion)";
    return tag;
}

}  // namespace timemap
