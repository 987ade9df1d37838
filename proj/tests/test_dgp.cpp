#include <cmath>
#include <numeric>

#include "doctest.h"
#include "timemap/dgp.hpp"
#include "timemap/errors.hpp"
#include "timemap/rng.hpp"

using namespace timemap;

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("default specs match the stock parameterization") {
    const auto specs = default_specs();
    REQUIRE(specs.size() == 5);

    CHECK(std::get<ExponentialDgp>(specs.at("exponential").kind).mean == 1.0);

    const auto& uni = std::get<UniformDgp>(specs.at("uniform").kind);
    CHECK(uni.min == 0.0);
    CHECK(uni.max == 24.0);

    const auto& gauss = std::get<GaussianDgp>(specs.at("gaussian").kind);
    CHECK(gauss.mean == 12.0);
    CHECK(gauss.sd == 3.0);

    const auto& logn = std::get<LognormalDgp>(specs.at("lognormal").kind);
    CHECK(logn.log_mean == 0.0);
    CHECK(logn.log_sd == 1.0);

    const auto& mix = std::get<MixtureDgp>(specs.at("mixture").kind);
    REQUIRE(mix.components.size() == 3);
    CHECK(mix.components[0].mean == 0.12);
    CHECK(mix.components[1].mean == 2.0);
    CHECK(mix.components[2].mean == 18.0);
    CHECK(mix.components[0].sd == doctest::Approx(std::sqrt(0.03)).epsilon(1e-15));
    CHECK(mix.components[1].sd == doctest::Approx(std::sqrt(0.2)).epsilon(1e-15));
    CHECK(mix.components[2].sd == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    double wsum = 0;
    for (const auto& c : mix.components) wsum += c.weight;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic and respects n = 0") {
    const auto specs = default_specs();
    for (const auto& [name, spec] : specs) {
        CAPTURE(name);
        CHECK(sample(spec, 0, 1).deltas.empty());
        CHECK(sample(spec, 100, 42).deltas == sample(spec, 100, 42).deltas);
        CHECK(sample(spec, 100, 42).deltas != sample(spec, 100, 43).deltas);
    }
}

TEST_CASE("exponential draws against an independent inverse-CDF oracle") {
    // the generator consumes exactly one uniform per draw, so replaying the
    // raw stream through the textbook inverse CDF must reproduce it
    const auto series = sample({ExponentialDgp{1.0}, DeltaUnit::Hours}, 10000, 42);
    Xoshiro256pp rng(42);
    for (std::size_t i = 0; i < 100; ++i) {
        const double u = rng.next_double_open();
        CHECK(series.deltas[i] == doctest::Approx(-std::log(u)).epsilon(1e-12));
    }
    CHECK(mean_of(series.deltas) > 0.97);
    CHECK(mean_of(series.deltas) < 1.03);
}

TEST_CASE("support constraints") {
    const auto specs = default_specs();
    for (double d : sample(specs.at("exponential"), 10000, 7).deltas) CHECK(d > 0);
    for (double d : sample(specs.at("lognormal"), 10000, 7).deltas) CHECK(d > 0);
    for (double d : sample(specs.at("uniform"), 10000, 7).deltas) {
        CHECK(d >= 0.0);
        CHECK(d < 24.0);
    }
}

TEST_CASE("moments at n = 10000 within 4 sigma of analytic values") {
    const auto specs = default_specs();
    const double n = 10000;
    struct Expect {
        const char* name;
        double mean, var, mean_sd;
    };
    // mean_sd = sqrt(var)/sqrt(n); mixture var = E[var] + var of means
    const double mix_mean = (0.12 + 2.0 + 18.0) / 3.0;
    const double mix_var = (0.03 + 0.2 + 3.0) / 3.0 +
                           ((0.12 - mix_mean) * (0.12 - mix_mean) +
                            (2.0 - mix_mean) * (2.0 - mix_mean) +
                            (18.0 - mix_mean) * (18.0 - mix_mean)) /
                               3.0;
    const Expect cases[] = {
        {"exponential", 1.0, 1.0, std::sqrt(1.0 / n)},
        {"uniform", 12.0, 48.0, std::sqrt(48.0 / n)},
        {"gaussian", 12.0, 9.0, std::sqrt(9.0 / n)},
        {"mixture", mix_mean, mix_var, std::sqrt(mix_var / n)},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto series = sample(specs.at(c.name), 10000, 271828);
        CHECK(std::abs(mean_of(series.deltas) - c.mean) < 4.0 * c.mean_sd);
        // loose relative band for the variance (4th-moment fluctuations)
        CHECK(var_of(series.deltas) == doctest::Approx(c.var).epsilon(0.15));
    }
}

TEST_CASE("mixture nonpositive fraction matches the normal-CDF oracle") {
    const auto series = sample(default_specs().at("mixture"), 10000, 42);
    std::size_t nonpositive = 0;
    for (double d : series.deltas)
        if (d <= 0) ++nonpositive;
    const double frac = static_cast<double>(nonpositive) / 10000.0;
    const double analytic = (normal_cdf((0.0 - 0.12) / std::sqrt(0.03)) +
                             normal_cdf(-2.0 / std::sqrt(0.2)) +
                             normal_cdf(-18.0 / std::sqrt(3.0))) /
                            3.0;
    CHECK(analytic == doctest::Approx(0.0815).epsilon(0.01));
    CHECK(frac >= 0.071);
    CHECK(frac <= 0.091);
}

TEST_CASE("mixture component selection frequencies near 1/3") {
    // component means are far apart; bucket draws by nearest mean
    const auto series = sample(default_specs().at("mixture"), 10000, 5);
    std::array<int, 3> counts{};
    for (double d : series.deltas) {
        if (d < 1.0)
            ++counts[0];
        else if (d < 10.0)
            ++counts[1];
        else
            ++counts[2];
    }
    for (int c : counts) {
        const double f = c / 10000.0;
        CHECK(f > 0.319);
        CHECK(f < 0.348);
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(sample({ExponentialDgp{0.0}, DeltaUnit::Hours}, 1, 1), InvalidSpec);
    CHECK_THROWS_AS(sample({UniformDgp{5.0, 5.0}, DeltaUnit::Hours}, 1, 1), InvalidSpec);
    CHECK_THROWS_AS(sample({GaussianDgp{1.0, -1.0}, DeltaUnit::Hours}, 1, 1), InvalidSpec);
    CHECK_THROWS_AS(sample({LognormalDgp{0.0, 0.0}, DeltaUnit::Hours}, 1, 1), InvalidSpec);
    CHECK_THROWS_AS(sample({MixtureDgp{{{0.5, 1.0, 1.0}, {0.4, 2.0, 1.0}}}, DeltaUnit::Hours},
                           1, 1),
                    InvalidSpec);
}
