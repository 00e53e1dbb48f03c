#include "tfc/error.hpp"
#include "tfc/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

using namespace tfc;

namespace {

// Biased sample autocorrelation by direct summation.
double autocorrelation(std::span<const double> x, std::size_t lag) {
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(x.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - mean) * (x[i] - mean);
        if (i + lag < x.size()) {
            num += (x[i] - mean) * (x[i + lag] - mean);
        }
    }
    return num / den;
}

// Frequency index (cycles per record) with the largest periodogram value.
std::size_t dominant_frequency(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    std::size_t best = 0;
    double best_power = -1.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n);
            acc += (x[t] - mean) * std::polar(1.0, angle);
        }
        if (std::norm(acc) > best_power) {
            best_power = std::norm(acc);
            best = k;
        }
    }
    return best;
}

SynthSpec spec_of(Archetype a, std::size_t length, std::int64_t interval, double noise, std::uint64_t seed) {
    SynthSpec s;
    s.archetype = a;
    s.length = length;
    s.interval = interval;
    s.noise_scale = noise;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("archetype names round-trip") {
    for (auto a : {Archetype::noisy_levels, Archetype::daily_seasonal, Archetype::growing_seasonal,
                   Archetype::global_concentrated}) {
        CHECK(parse_archetype(to_string(a)) == a);
    }
    CHECK_FALSE(parse_archetype("weekly"));
}

TEST_CASE("noiseless daily-seasonal repeats exactly") {
    const auto s = synth(spec_of(Archetype::daily_seasonal, 48, 3600, 0.0, 5));
    for (std::size_t i = 0; i < 24; ++i) {
        CHECK(s.values()[i] == s.values()[i + 24]);
    }
    CHECK(s.is_regular());
    CHECK(s.interval() == 3600);
}

TEST_CASE("synth is deterministic in the seed") {
    for (auto a : {Archetype::noisy_levels, Archetype::daily_seasonal, Archetype::growing_seasonal,
                   Archetype::global_concentrated}) {
        const auto spec = spec_of(a, 3000, 300, 0.5, 99);
        CHECK(synth(spec) == synth(spec));
        auto other = spec;
        other.seed = 100;
        CHECK_FALSE(synth(spec) == synth(other));
    }
}

TEST_CASE("daily-seasonal autocorrelation at one period") {
    const auto s = synth(spec_of(Archetype::daily_seasonal, 240, 3600, 0.1, 7));
    CHECK(seasonal_period(spec_of(Archetype::daily_seasonal, 240, 3600, 0.1, 7)) == 24);
    CHECK(autocorrelation(s.values(), 24) > 0.8);
}

TEST_CASE("daily-seasonal spectrum peaks at the daily frequency") {
    const auto s = synth(spec_of(Archetype::daily_seasonal, 240, 3600, 0.5, 3));
    CHECK(dominant_frequency(s.values()) == 240 / 24);
}

TEST_CASE("growing-seasonal has a positive exponential growth rate") {
    const auto s = synth(spec_of(Archetype::growing_seasonal, 96 * 60, 900, 0.3, 2));
    // Least-squares slope of log(value) on time in days.
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = static_cast<double>(s.timestamps()[i] - s.front_time()) / 86400.0;
        const double y = std::log(s.values()[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    CHECK(slope > 0.0);
}

TEST_CASE("noisy-levels draws from a small set of levels") {
    auto spec = spec_of(Archetype::noisy_levels, 1440, 60, 0.0, 4);
    spec.hourly_amplitude = 0.0;
    const auto s = synth(spec);
    const std::set<double> levels(s.values().begin(), s.values().end());
    CHECK(levels.size() <= 3);
    CHECK(levels.size() >= 2);
    CHECK(seasonal_period(spec) == 60);
}

TEST_CASE("global-concentrated is non-negative and daily periodic") {
    const auto s = synth(spec_of(Archetype::global_concentrated, 288 * 14, 300, 0.2, 8));
    for (double v : s.values()) {
        CHECK(v >= 0.0);
    }
    CHECK(autocorrelation(s.values(), 288) > 0.5);
}

TEST_CASE("invalid synthetic settings are rejected") {
    CHECK_THROWS_AS(synth(spec_of(Archetype::daily_seasonal, 1, 3600, 0.1, 1)), SpecError);
    CHECK_THROWS_AS(synth(spec_of(Archetype::daily_seasonal, 47, 3600, 0.1, 1)), SpecError);
    CHECK_NOTHROW(synth(spec_of(Archetype::daily_seasonal, 48, 3600, 0.1, 1)));
    CHECK_THROWS_AS(synth(spec_of(Archetype::daily_seasonal, 100, 7000, 0.1, 1)), SpecError);
    CHECK_THROWS_AS(synth(spec_of(Archetype::growing_seasonal, 100, 3600, -1.0, 1)), SpecError);
    CHECK_THROWS_AS(synth(spec_of(Archetype::noisy_levels, 0, 60, 0.1, 1)), SpecError);
    // No hourly cycle at hourly sampling, so any positive length is valid.
    CHECK_NOTHROW(synth(spec_of(Archetype::noisy_levels, 1, 3600, 0.1, 1)));
}
