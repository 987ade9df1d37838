#include <numeric>

#include "doctest.h"
#include "timemap/errors.hpp"
#include "timemap/events.hpp"
#include "timemap/rng.hpp"

using namespace timemap;

TEST_CASE("csv parse with ISO timestamps") {
    const auto stream = parse_events(
        "created_at\n2015-12-06T00:00:00Z\n2015-12-06T00:01:30Z\n", EventFormat::Csv);
    REQUIRE(stream.size() == 2);
    CHECK(stream.timestamps[1] - stream.timestamps[0] == 90);
}

TEST_CASE("jsonl rows out of order are sorted") {
    const auto stream =
        parse_events("{\"created_at\": 100}\n{\"created_at\": 50}\n", EventFormat::Jsonl);
    REQUIRE(stream.timestamps == std::vector<std::int64_t>{50, 100});
}

TEST_CASE("malformed timestamp reports the data row") {
    try {
        parse_events("created_at\nnot-a-date\n", EventFormat::Csv);
        FAIL("expected MalformedTimestamp");
    } catch (const MalformedTimestamp& e) {
        CHECK(e.row == 1);
    }
}

TEST_CASE("missing created_at column") {
    CHECK_THROWS_AS(parse_events("time\n123\n", EventFormat::Csv), MissingField);
    CHECK_THROWS_AS(parse_events("{\"other\": 1}\n", EventFormat::Jsonl), MissingField);
}

TEST_CASE("empty input yields an empty stream") {
    CHECK(parse_events("", EventFormat::Csv).size() == 0);
    CHECK(parse_events("", EventFormat::Jsonl).size() == 0);
    CHECK(parse_events("created_at\n", EventFormat::Csv).size() == 0);
}

TEST_CASE("epoch integers and subsecond fractions") {
    const auto stream = parse_events(
        "created_at\n1449360000\n2015-12-06T00:00:01.250Z\n", EventFormat::Csv);
    REQUIRE(stream.size() == 2);
    CHECK(stream.timestamps[0] == 1449360000);
    CHECK(stream.timestamps[1] == 1449360001);
    CHECK(stream.meta.at("subsecond_discarded") == "1");
}

TEST_CASE("timezone offsets normalize to UTC") {
    bool sub = false;
    CHECK(parse_timestamp("2015-12-06T01:00:00+01:00", sub) ==
          parse_timestamp("2015-12-06T00:00:00Z", sub));
}

TEST_CASE("iso round trip") {
    bool sub = false;
    for (std::int64_t t : {0LL, 1449360090LL, 951868800LL /* leap year */, 4102444799LL})
        CHECK(parse_timestamp(format_timestamp_iso(t), sub) == t);
}

TEST_CASE("interarrivals basics") {
    EventStream s;
    s.timestamps = {0, 10, 30, 100};
    CHECK(interarrivals(s).deltas == std::vector<double>{10, 20, 70});

    s.timestamps = {5};
    CHECK(interarrivals(s).deltas.empty());

    s.timestamps = {7, 7, 9};
    CHECK(interarrivals(s).deltas == std::vector<double>{0, 2});
}

TEST_CASE("delta sum telescopes to the span") {
    Xoshiro256pp rng(9001);
    for (int rep = 0; rep < 50; ++rep) {
        EventStream s;
        const auto n = 2 + rng.next_below(200);
        std::int64_t t = static_cast<std::int64_t>(rng.next_below(1000000));
        for (std::uint64_t i = 0; i < n; ++i) {
            s.timestamps.push_back(t);
            t += static_cast<std::int64_t>(rng.next_below(5000));
        }
        const auto series = interarrivals(s);
        CHECK(series.deltas.size() == s.size() - 1);
        const double sum = std::accumulate(series.deltas.begin(), series.deltas.end(), 0.0);
        CHECK(sum == static_cast<double>(s.timestamps.back() - s.timestamps.front()));
    }
}

TEST_CASE("interarrivals are invariant to input row order") {
    const char* shuffled = "created_at\n300\n100\n200\n";
    const char* sorted = "created_at\n100\n200\n300\n";
    CHECK(interarrivals(parse_events(shuffled, EventFormat::Csv)).deltas ==
          interarrivals(parse_events(sorted, EventFormat::Csv)).deltas);
}

TEST_CASE("resample identity at n = length") {
    EventStream s;
    for (int i = 0; i < 114; ++i) s.timestamps.push_back(i * 37);
    for (auto mode : {ResampleMode::UniformEvents, ResampleMode::ContiguousWindow}) {
        const auto out = resample_events(s, s.size(), mode, 12345);
        CHECK(out.timestamps == s.timestamps);
    }
}

TEST_CASE("resample produces sorted subsequences") {
    EventStream s;
    Xoshiro256pp rng(7);
    std::int64_t t = 0;
    for (int i = 0; i < 1787; ++i) {
        t += static_cast<std::int64_t>(rng.next_below(900));
        s.timestamps.push_back(t);
    }
    for (auto mode : {ResampleMode::UniformEvents, ResampleMode::ContiguousWindow}) {
        const auto out = resample_events(s, 114, mode, 99);
        REQUIRE(out.size() == 114);
        CHECK(std::is_sorted(out.timestamps.begin(), out.timestamps.end()));
        CHECK(std::includes(s.timestamps.begin(), s.timestamps.end(), out.timestamps.begin(),
                            out.timestamps.end()));
    }
    // deterministic given the seed
    CHECK(resample_events(s, 114, ResampleMode::UniformEvents, 99).timestamps ==
          resample_events(s, 114, ResampleMode::UniformEvents, 99).timestamps);
}

TEST_CASE("contiguous window is a consecutive run") {
    EventStream s;
    for (int i = 0; i < 50; ++i) s.timestamps.push_back(i * i);
    const auto out = resample_events(s, 10, ResampleMode::ContiguousWindow, 3);
    REQUIRE(out.size() == 10);
    const auto it =
        std::search(s.timestamps.begin(), s.timestamps.end(), out.timestamps.begin(),
                    out.timestamps.end());
    CHECK(it != s.timestamps.end());
}

TEST_CASE("resample size errors") {
    EventStream s;
    for (int i = 0; i < 114; ++i) s.timestamps.push_back(i);
    CHECK_THROWS_AS(resample_events(s, 115, ResampleMode::UniformEvents, 1), SampleTooLarge);
    CHECK_THROWS_AS(resample_events(s, 0, ResampleMode::UniformEvents, 1), InvalidN);
}
