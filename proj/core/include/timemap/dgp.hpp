#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "timemap/events.hpp"

namespace timemap {

struct ExponentialDgp {
    double mean = 1.0;
};

struct UniformDgp {
    double min = 0.0;
    double max = 24.0;
};

struct GaussianDgp {
    double mean = 12.0;
    double sd = 3.0;
};

struct LognormalDgp {
    double log_mean = 0.0;
    double log_sd = 1.0;
};

struct MixtureComponent {
    double weight;
    double mean;
    double sd;
};

struct MixtureDgp {
    std::vector<MixtureComponent> components;
};

struct DgpSpec {
    std::variant<ExponentialDgp, UniformDgp, GaussianDgp, LognormalDgp, MixtureDgp> kind;
    DeltaUnit unit = DeltaUnit::Hours;

    std::string describe() const;
};

// Throws InvalidSpec when a parameter invariant is violated (nonpositive mean
// or sd, min >= max, weights not summing to 1 within 1e-9).
void validate(const DgpSpec& spec);

// The five stock generators: exponential{mean 1}, uniform{0,24},
// gaussian{12,3}, lognormal{0,1} and a 3-component equal-weight Gaussian
// mixture with means (0.12, 2, 18) and sds (sqrt .03, sqrt .2, sqrt 3).
// All in hours.
std::map<std::string, DgpSpec> default_specs();

// n i.i.d. draws, deterministic given (spec, n, seed). Gaussian and mixture
// draws may be <= 0; they are kept and filtered later at the log-map stage.
InterarrivalSeries sample(const DgpSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace timemap
