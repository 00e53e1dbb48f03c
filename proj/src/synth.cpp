#include "tfc/synth.hpp"

#include "tfc/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace tfc {

namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kHour = 3600;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ArchetypeName {
    Archetype archetype;
    std::string_view name;
};

constexpr std::array<ArchetypeName, 4> kNames{{
    {Archetype::noisy_levels, "noisy-levels"},
    {Archetype::daily_seasonal, "daily-seasonal"},
    {Archetype::growing_seasonal, "growing-seasonal"},
    {Archetype::global_concentrated, "global-concentrated"},
}};

// Fraction of the (UTC) day elapsed at t.
double day_phase(Timestamp t, double utc_offset_hours = 0.0) {
    const double local = static_cast<double>(t) + utc_offset_hours * kHour;
    const double frac = std::fmod(local, static_cast<double>(kDay)) / kDay;
    return frac < 0.0 ? frac + 1.0 : frac;
}

// Quiet nights, a working-hours peak and a smaller evening peak. The
// fundamental dominates the second harmonic.
double sleep_work_free(double phase) {
    return 0.55 * std::cos(kTwoPi * (phase - 0.58)) + 0.2 * std::cos(2.0 * kTwoPi * (phase - 0.35));
}

// Von Mises shaped activity bump centred mid-afternoon local time, normalised to peak 1.
double waking_activity(double local_phase) {
    constexpr double kConcentration = 2.0;
    return std::exp(kConcentration * (std::cos(kTwoPi * (local_phase - 0.6)) - 1.0));
}

} // namespace

std::string_view to_string(Archetype archetype) noexcept {
    for (const auto& [a, name] : kNames) {
        if (a == archetype) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Archetype> parse_archetype(std::string_view name) noexcept {
    for (const auto& [a, n] : kNames) {
        if (n == name) {
            return a;
        }
    }
    return std::nullopt;
}

std::size_t seasonal_period(const SynthSpec& spec) {
    if (spec.interval <= 0) {
        return 0;
    }
    const std::int64_t cycle = spec.archetype == Archetype::noisy_levels ? kHour : kDay;
    const std::int64_t period = cycle / spec.interval;
    return period >= 2 ? static_cast<std::size_t>(period) : 0;
}

void validate(const SynthSpec& spec) {
    if (spec.length < 1) {
        throw SpecError("synthetic length must be at least 1");
    }
    if (spec.interval <= 0) {
        throw SpecError("synthetic interval must be positive");
    }
    if (!std::isfinite(spec.noise_scale) || spec.noise_scale < 0.0) {
        throw SpecError("noise scale must be a finite non-negative number");
    }
    if (!std::isfinite(spec.hourly_amplitude) || spec.hourly_amplitude < 0.0) {
        throw SpecError("hourly amplitude must be a finite non-negative number");
    }
    if (spec.archetype != Archetype::noisy_levels) {
        if (kDay % spec.interval != 0 || kDay / spec.interval < 2) {
            throw SpecError(std::string(to_string(spec.archetype)) +
                            " needs an interval dividing one day into at least two samples");
        }
    }
    const std::size_t period = seasonal_period(spec);
    if (spec.length < 2 * period) {
        throw SpecError(std::string(to_string(spec.archetype)) + " with period " +
                        std::to_string(period) + " needs length >= " + std::to_string(2 * period) +
                        ", got " + std::to_string(spec.length));
    }
}

TimeSeries synth(const SynthSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Timestamp> ts(spec.length);
    std::vector<double> vs(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) {
        ts[i] = spec.start + static_cast<Timestamp>(i) * spec.interval;
    }

    switch (spec.archetype) {
    case Archetype::noisy_levels: {
        constexpr double kBaseline = 10.0;
        constexpr std::array<double, 2> kHeavy{40.0, 160.0};
        constexpr double kHeavyProbability = 0.08;
        for (std::size_t i = 0; i < spec.length; ++i) {
            double level = kBaseline;
            if (unit(rng) < kHeavyProbability) {
                level = kHeavy[unit(rng) < 0.7 ? 0 : 1];
            }
            const double hour_phase =
                static_cast<double>((ts[i] - spec.start) % kHour) / static_cast<double>(kHour);
            const double hourly = spec.hourly_amplitude * kBaseline * std::sin(kTwoPi * hour_phase);
            vs[i] = std::max(0.0, level + hourly + spec.noise_scale * kBaseline * gauss(rng));
        }
        break;
    }
    case Archetype::daily_seasonal: {
        constexpr double kMean = 100.0;
        constexpr double kAmplitude = 40.0;
        for (std::size_t i = 0; i < spec.length; ++i) {
            const double signal = kMean + kAmplitude * sleep_work_free(day_phase(ts[i]));
            vs[i] = std::max(0.0, signal + spec.noise_scale * kAmplitude * gauss(rng));
        }
        break;
    }
    case Archetype::growing_seasonal: {
        constexpr double kStart = 50.0;
        const double daily_growth = std::log(3.0) / 365.0; // triples per year
        for (std::size_t i = 0; i < spec.length; ++i) {
            const double days = static_cast<double>(ts[i] - spec.start) / kDay;
            const double trend = kStart * std::exp(daily_growth * days);
            const double cycle = 1.0 + 0.3 * sleep_work_free(day_phase(ts[i]));
            vs[i] = std::max(0.0, trend * (cycle + 0.3 * spec.noise_scale * gauss(rng)));
        }
        break;
    }
    case Archetype::global_concentrated: {
        struct Region {
            double weight;
            double utc_offset_hours;
        };
        constexpr std::array<Region, 3> kRegions{{{0.55, -5.0}, {0.25, 1.0}, {0.20, 8.0}}};
        constexpr double kScale = 200.0;
        constexpr double kBurstProbability = 0.004;
        for (std::size_t i = 0; i < spec.length; ++i) {
            double activity = 0.15; // round-the-clock floor
            for (const auto& region : kRegions) {
                activity += region.weight * waking_activity(day_phase(ts[i], region.utc_offset_hours));
            }
            double value = kScale * activity * std::exp(0.3 * spec.noise_scale * gauss(rng));
            if (unit(rng) < kBurstProbability) {
                value *= 2.0 + 3.0 * unit(rng);
            }
            vs[i] = value;
        }
        break;
    }
    }
    return TimeSeries(std::move(ts), std::move(vs), spec.interval);
}

} // namespace tfc
