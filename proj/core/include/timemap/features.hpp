#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "timemap/map.hpp"
#include "timemap/regions.hpp"

namespace timemap {

struct LineFeatures {
    double vertical_score = 0;
    double horizontal_score = 0;
    bool vertical_detected = false;
    bool horizontal_detected = false;
};

struct DiurnalGap {
    bool detected = false;
    std::optional<double> width;  // log10 units
};

struct FeatureProfile {
    std::size_t n_events = 0;
    std::size_t n_points = 0;  // plottable points
    double coverage = 0;
    std::size_t occupied_cells = 0;
    double vertical_score = 0;
    double horizontal_score = 0;
    bool vertical_detected = false;
    bool horizontal_detected = false;
    bool diurnal_gap_detected = false;
    std::optional<double> diurnal_gap_width;
    double burstiness_cv = 0;
    std::array<double, 16> occupancy{};
};

enum class VerdictLabel { HumanSpontaneous, HumanScheduledHybrid, Bot, BotUnique, Indeterminate };

std::string to_string(VerdictLabel label);

struct Verdict {
    VerdictLabel label = VerdictLabel::Indeterminate;
    std::vector<std::string> fired_rules;
    FeatureProfile profile;
};

// A rule is an identifier, a verdict and a predicate over profile fields.
// Predicate grammar: terms joined by `&&`; a term is a boolean field
// (optionally negated with `!`) or `<field> <op> <number>` with op one of
// < <= > >= ==. Boolean fields: vertical_detected, horizontal_detected,
// diurnal_gap_detected, any_line_feature. Numeric fields: coverage,
// occupied_cells, n_points, n_events, burstiness_cv, vertical_score,
// horizontal_score.
struct Rule {
    std::string id;
    VerdictLabel label;
    std::string predicate;
};

struct FeatureThresholds {
    double mass_threshold = 0.15;
    double span_threshold = 0.5;
    double gap_threshold = 0.5;       // log10 units
    double coverage_threshold = 0.02;
};

// Per-column mass concentration vs occupied-row extent (and symmetrically per
// row). A column scores min(mass_frac/mass_threshold, extent_frac/
// span_threshold); detection is score >= 1. Throws EmptyGrid on zero mass.
LineFeatures line_features(const LogGrid& grid, double mass_threshold, double span_threshold);

// Occupied cells / total cells.
double coverage_fraction(const LogGrid& grid);

// Looks for the widest empty band between consecutive distinct log10 deltas
// that overlaps the 10 min .. 24 h window and ends in a sleep-scale lull
// (>= 4 h); detected when the band is at least gap_threshold wide. Series
// must be in seconds.
DiurnalGap diurnal_gap(const InterarrivalSeries& series, double gap_threshold = 0.5);

// Sample sd / mean (n-1 denominator). Throws DegenerateSeries when fewer than
// two deltas or the mean is not positive.
double burstiness_cv(const InterarrivalSeries& series);

std::vector<Rule> default_rules();

// First-match evaluation; the fired rule id is the explanation trace. No
// match yields Indeterminate with an empty trace. Throws InvalidRule on a
// malformed predicate.
Verdict classify(const FeatureProfile& profile, const std::vector<Rule>& rules);

// Full pipeline: interarrivals -> map -> plottable -> bin -> metrics.
// Degenerate inputs produce a zeroed profile rather than an error.
FeatureProfile compute_profile(const InterarrivalSeries& series, std::size_t bins_x,
                               std::size_t bins_y, const FeatureThresholds& thresholds,
                               const RegionTaxonomy& taxonomy);

// Informational nearest idealized generator, by cv band; never part of the
// verdict.
std::string nearest_dgp_tag(const FeatureProfile& profile);

}  // namespace timemap
