#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace timemap {

// A labeled, sorted list of event times in integer epoch-seconds UTC.
struct EventStream {
    std::string source_id;
    std::vector<std::int64_t> timestamps;  // ascending, ties allowed
    std::map<std::string, std::string> meta;

    std::size_t size() const { return timestamps.size(); }
};

enum class DeltaUnit { Seconds, Hours, Unitless };

// Ordered gaps between successive events. For an n-event stream there are
// max(n-1, 0) deltas.
struct InterarrivalSeries {
    std::vector<double> deltas;
    DeltaUnit unit = DeltaUnit::Seconds;

    std::size_t size() const { return deltas.size(); }
};

enum class EventFormat { Csv, Jsonl };

enum class ResampleMode { UniformEvents, ContiguousWindow };

// Parses ISO-8601 UTC ("2015-12-06T00:00:00Z", optional fraction/offset) or a
// raw integer epoch. Integer parse is attempted first. Returns epoch-seconds;
// sets subsecond_discarded when a fractional part was dropped.
std::int64_t parse_timestamp(std::string_view text, bool& subsecond_discarded);

// CSV requires a `created_at` column (optional `source_id`); JSONL requires a
// `created_at` key per line. Rows arrive in any order; the result is sorted.
// Empty input yields an empty stream. Throws MalformedTimestamp / MissingField
// with the offending 1-based data-row index.
EventStream parse_events(std::string_view raw, EventFormat format);

std::string format_timestamp_iso(std::int64_t epoch_seconds);

InterarrivalSeries interarrivals(const EventStream& stream);

// uniform_events: n events drawn without replacement, re-sorted.
// contiguous_window: a uniformly chosen run of n consecutive events.
// Deterministic given the seed. n = |stream| returns the stream unchanged.
EventStream resample_events(const EventStream& stream, std::size_t n, ResampleMode mode,
                            std::uint64_t seed);

}  // namespace timemap
