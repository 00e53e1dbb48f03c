#pragma once

#include "tfc/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tfc {

/// Synthetic stand-ins for the telemetry datasets used in benchmarking.
enum class Archetype {
    noisy_levels,        ///< a few discrete flow levels, slight hourly cycle, mostly noise
    daily_seasonal,      ///< strong sleep/work/free-time daily cycle
    growing_seasonal,    ///< daily cycle riding on exponential growth
    global_concentrated, ///< overlapping daily cycles of several time zones, bursty
};

std::string_view to_string(Archetype archetype) noexcept;
std::optional<Archetype> parse_archetype(std::string_view name) noexcept;

struct SynthSpec {
    Archetype archetype = Archetype::daily_seasonal;
    std::size_t length = 240;
    std::int64_t interval = 3600;
    double noise_scale = 0.1;
    std::uint64_t seed = 0;
    Timestamp start = 1420070400; // 2015-01-01T00:00:00Z
    /// Relative amplitude of the hourly cycle in `noisy_levels`.
    double hourly_amplitude = 0.1;

    bool operator==(const SynthSpec&) const = default;
};

/// Seasonal period in samples implied by the archetype at the spec's interval;
/// 0 when the archetype carries no cycle at that resolution.
std::size_t seasonal_period(const SynthSpec& spec);

/// Throws SpecError when the spec violates its invariants.
void validate(const SynthSpec& spec);

/// Deterministic in every field of `spec`, including the seed.
TimeSeries synth(const SynthSpec& spec);

} // namespace tfc
