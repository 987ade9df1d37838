#include "timemap/events.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <numeric>

#include "nlohmann/json.hpp"
#include "timemap/errors.hpp"
#include "timemap/rng.hpp"

namespace timemap {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::int64_t parse_timestamp_impl(std::string_view text, std::size_t row, bool& subsecond);

constexpr int kDaysBeforeMonth[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
    std::int64_t days = 0;
    if (y >= 1970) {
        for (int yy = 1970; yy < y; ++yy) days += is_leap(yy) ? 366 : 365;
    } else {
        for (int yy = y; yy < 1970; ++yy) days -= is_leap(yy) ? 366 : 365;
    }
    days += kDaysBeforeMonth[m - 1] + (m > 2 && is_leap(y) ? 1 : 0);
    return days + d - 1;
}

bool parse_iso8601(std::string_view s, std::int64_t& out, bool& subsecond) {
    int y, mo, d, h, mi, sec;
    int consumed = 0;
    std::string buf(s);
    if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi,
                    &sec, &consumed) != 6)
        return false;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) return false;
    std::string_view rest = s.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest.front() == '.') {
        rest.remove_prefix(1);
        std::size_t digits = 0;
        while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[digits])))
            ++digits;
        if (digits == 0) return false;
        subsecond = true;
        rest.remove_prefix(digits);
    }
    std::int64_t offset = 0;
    if (rest == "Z" || rest == "z" || rest.empty()) {
        // UTC
    } else if (rest.front() == '+' || rest.front() == '-') {
        int oh, om;
        const int sign = rest.front() == '+' ? 1 : -1;
        std::string tail(rest.substr(1));
        if (std::sscanf(tail.c_str(), "%2d:%2d", &oh, &om) == 2 ||
            std::sscanf(tail.c_str(), "%2d%2d", &oh, &om) == 2) {
            offset = sign * (oh * 3600 + om * 60);
        } else if (std::sscanf(tail.c_str(), "%2d", &oh) == 1 && tail.size() == 2) {
            offset = sign * oh * 3600;
        } else {
            return false;
        }
    } else {
        return false;
    }
    out = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec - offset;
    return true;
}

std::vector<std::string_view> split_csv_row(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            auto field = trim(line.substr(start, i - start));
            if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
                field = field.substr(1, field.size() - 2);
            fields.push_back(field);
            start = i + 1;
        }
    }
    return fields;
}

void finish(EventStream& stream, std::size_t subsecond_count) {
    std::sort(stream.timestamps.begin(), stream.timestamps.end());
    if (subsecond_count > 0)
        stream.meta["subsecond_discarded"] = std::to_string(subsecond_count);
}

EventStream parse_csv(std::string_view raw) {
    EventStream stream;
    std::size_t subseconds = 0;
    std::size_t pos = 0;
    std::size_t row = 0;
    std::ptrdiff_t created_col = -1;
    std::ptrdiff_t source_col = -1;
    bool header_seen = false;
    while (pos <= raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string_view::npos) eol = raw.size();
        std::string_view line = trim(raw.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty()) {
            if (pos > raw.size()) break;
            continue;
        }
        auto fields = split_csv_row(line);
        if (!header_seen) {
            header_seen = true;
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "created_at") created_col = static_cast<std::ptrdiff_t>(i);
                if (fields[i] == "source_id") source_col = static_cast<std::ptrdiff_t>(i);
            }
            if (created_col < 0) throw MissingField(0, "created_at");
            continue;
        }
        ++row;
        if (static_cast<std::size_t>(created_col) >= fields.size())
            throw MissingField(row, "created_at");
        std::string_view value = fields[static_cast<std::size_t>(created_col)];
        bool sub = false;
        stream.timestamps.push_back(parse_timestamp_impl(value, row, sub));
        if (sub) ++subseconds;
        if (source_col >= 0 && static_cast<std::size_t>(source_col) < fields.size() &&
            stream.source_id.empty())
            stream.source_id = std::string(fields[static_cast<std::size_t>(source_col)]);
    }
    finish(stream, subseconds);
    return stream;
}

EventStream parse_jsonl(std::string_view raw) {
    EventStream stream;
    std::size_t subseconds = 0;
    std::size_t pos = 0;
    std::size_t row = 0;
    while (pos <= raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string_view::npos) eol = raw.size();
        std::string_view line = trim(raw.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty()) {
            if (pos > raw.size()) break;
            continue;
        }
        ++row;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object())
            throw MalformedTimestamp(row, std::string(line.substr(0, 40)));
        if (!obj.contains("created_at")) throw MissingField(row, "created_at");
        const auto& value = obj["created_at"];
        bool sub = false;
        if (value.is_number_integer()) {
            stream.timestamps.push_back(value.get<std::int64_t>());
        } else if (value.is_number_float()) {
            stream.timestamps.push_back(static_cast<std::int64_t>(value.get<double>()));
            ++subseconds;
        } else if (value.is_string()) {
            stream.timestamps.push_back(
                parse_timestamp_impl(value.get_ref<const std::string&>(), row, sub));
            if (sub) ++subseconds;
        } else {
            throw MalformedTimestamp(row, value.dump());
        }
        if (stream.source_id.empty() && obj.contains("source_id") &&
            obj["source_id"].is_string())
            stream.source_id = obj["source_id"].get<std::string>();
    }
    finish(stream, subseconds);
    return stream;
}

std::int64_t parse_timestamp_impl(std::string_view text, std::size_t row, bool& subsecond) {
    text = trim(text);
    std::int64_t epoch;
    if (parse_int(text, epoch)) return epoch;
    if (parse_iso8601(text, epoch, subsecond)) return epoch;
    throw MalformedTimestamp(row, std::string(text));
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text, bool& subsecond_discarded) {
    return parse_timestamp_impl(text, 0, subsecond_discarded);
}

std::string format_timestamp_iso(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y = 1970;
    while (true) {
        const int len = is_leap(y) ? 366 : 365;
        if (days >= len) {
            days -= len;
            ++y;
        } else if (days < 0) {
            --y;
            days += is_leap(y) ? 366 : 365;
        } else {
            break;
        }
    }
    int m = 12;
    while (kDaysBeforeMonth[m - 1] + (m > 2 && is_leap(y) ? 1 : 0) > days) --m;
    const int d = static_cast<int>(days) - kDaysBeforeMonth[m - 1] - (m > 2 && is_leap(y) ? 1 : 0) + 1;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

EventStream parse_events(std::string_view raw, EventFormat format) {
    return format == EventFormat::Csv ? parse_csv(raw) : parse_jsonl(raw);
}

InterarrivalSeries interarrivals(const EventStream& stream) {
    InterarrivalSeries series;
    series.unit = DeltaUnit::Seconds;
    if (stream.timestamps.size() >= 2) {
        series.deltas.reserve(stream.timestamps.size() - 1);
        for (std::size_t i = 1; i < stream.timestamps.size(); ++i)
            series.deltas.push_back(
                static_cast<double>(stream.timestamps[i] - stream.timestamps[i - 1]));
    }
    return series;
}

EventStream resample_events(const EventStream& stream, std::size_t n, ResampleMode mode,
                            std::uint64_t seed) {
    if (n < 1) throw InvalidN("resample size must be >= 1");
    if (n > stream.size()) throw SampleTooLarge(n, stream.size());
    EventStream out;
    out.source_id = stream.source_id;
    out.meta = stream.meta;
    Xoshiro256pp rng(seed);
    if (mode == ResampleMode::UniformEvents) {
        std::vector<std::size_t> idx(stream.size());
        std::iota(idx.begin(), idx.end(), 0);
        // partial Fisher-Yates: the first n slots become the sample
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + rng.next_below(idx.size() - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(n);
        std::sort(idx.begin(), idx.end());
        out.timestamps.reserve(n);
        for (std::size_t i : idx) out.timestamps.push_back(stream.timestamps[i]);
    } else {
        const std::size_t start = rng.next_below(stream.size() - n + 1);
        out.timestamps.assign(stream.timestamps.begin() + static_cast<std::ptrdiff_t>(start),
                              stream.timestamps.begin() + static_cast<std::ptrdiff_t>(start + n));
    }
    return out;
}

}  // namespace timemap
