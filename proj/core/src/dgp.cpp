#include "timemap/dgp.hpp"

#include <cmath>
#include <cstdio>

#include "timemap/errors.hpp"
#include "timemap/rng.hpp"

namespace timemap {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string DgpSpec::describe() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ExponentialDgp>)
                return "exponential{mean=" + fmt(k.mean) + "}";
            else if constexpr (std::is_same_v<T, UniformDgp>)
                return "uniform{min=" + fmt(k.min) + ",max=" + fmt(k.max) + "}";
            else if constexpr (std::is_same_v<T, GaussianDgp>)
                return "gaussian{mean=" + fmt(k.mean) + ",sd=" + fmt(k.sd) + "}";
            else if constexpr (std::is_same_v<T, LognormalDgp>)
                return "lognormal{log_mean=" + fmt(k.log_mean) + ",log_sd=" + fmt(k.log_sd) + "}";
            else {
                std::string s = "mixture{";
                for (std::size_t i = 0; i < k.components.size(); ++i) {
                    if (i) s += ",";
                    s += "(" + fmt(k.components[i].weight) + "," + fmt(k.components[i].mean) +
                         "," + fmt(k.components[i].sd) + ")";
                }
                return s + "}";
            }
        },
        kind);
}

void validate(const DgpSpec& spec) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ExponentialDgp>) {
                if (!(k.mean > 0)) throw InvalidSpec("exponential mean must be > 0");
            } else if constexpr (std::is_same_v<T, UniformDgp>) {
                if (!(k.min < k.max)) throw InvalidSpec("uniform requires min < max");
            } else if constexpr (std::is_same_v<T, GaussianDgp>) {
                if (!(k.sd > 0)) throw InvalidSpec("gaussian sd must be > 0");
            } else if constexpr (std::is_same_v<T, LognormalDgp>) {
                if (!(k.log_sd > 0)) throw InvalidSpec("lognormal log_sd must be > 0");
            } else {
                if (k.components.empty()) throw InvalidSpec("mixture needs components");
                double total = 0;
                for (const auto& c : k.components) {
                    if (!(c.weight > 0)) throw InvalidSpec("mixture weights must be > 0");
                    if (!(c.sd > 0)) throw InvalidSpec("mixture component sd must be > 0");
                    total += c.weight;
                }
                if (std::abs(total - 1.0) > 1e-9)
                    throw InvalidSpec("mixture weights must sum to 1");
            }
        },
        spec.kind);
}

std::map<std::string, DgpSpec> default_specs() {
    std::map<std::string, DgpSpec> specs;
    specs["exponential"] = {ExponentialDgp{1.0}, DeltaUnit::Hours};
    specs["uniform"] = {UniformDgp{0.0, 24.0}, DeltaUnit::Hours};
    specs["gaussian"] = {GaussianDgp{12.0, 3.0}, DeltaUnit::Hours};
    specs["lognormal"] = {LognormalDgp{0.0, 1.0}, DeltaUnit::Hours};
    const double third = 1.0 / 3.0;
    specs["mixture"] = {MixtureDgp{{{third, 0.12, std::sqrt(0.03)},
                                    {third, 2.0, std::sqrt(0.2)},
                                    {third, 18.0, std::sqrt(3.0)}}},
                        DeltaUnit::Hours};
    return specs;
}

InterarrivalSeries sample(const DgpSpec& spec, std::size_t n, std::uint64_t seed) {
    validate(spec);
    InterarrivalSeries series;
    series.unit = spec.unit;
    series.deltas.reserve(n);
    Xoshiro256pp rng(seed);
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            for (std::size_t i = 0; i < n; ++i) {
                if constexpr (std::is_same_v<T, ExponentialDgp>) {
                    series.deltas.push_back(-k.mean * std::log(rng.next_double_open()));
                } else if constexpr (std::is_same_v<T, UniformDgp>) {
                    series.deltas.push_back(k.min + rng.next_double() * (k.max - k.min));
                } else if constexpr (std::is_same_v<T, GaussianDgp>) {
                    series.deltas.push_back(k.mean + k.sd * rng.next_gaussian());
                } else if constexpr (std::is_same_v<T, LognormalDgp>) {
                    series.deltas.push_back(std::exp(k.log_mean + k.log_sd * rng.next_gaussian()));
                } else {
                    const double u = rng.next_double();
                    double cum = 0;
                    const MixtureComponent* chosen = &k.components.back();
                    for (const auto& c : k.components) {
                        cum += c.weight;
                        if (u < cum) {
                            chosen = &c;
                            break;
                        }
                    }
                    series.deltas.push_back(chosen->mean + chosen->sd * rng.next_gaussian());
                }
            }
        },
        spec.kind);
    return series;
}

}  // namespace timemap
