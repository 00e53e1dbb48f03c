#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tfc {

using Timestamp = std::int64_t; ///< epoch seconds, UTC

/// Univariate series with integer epoch-second timestamps.
///
/// Timestamps are strictly increasing and values finite. `interval()` is the
/// nominal sampling period; it is exact only when `is_regular()` holds.
class TimeSeries {
public:
    /// Throws SpecError when the invariants do not hold. `interval == 0`
    /// infers the period as the smallest gap between consecutive points.
    TimeSeries(std::vector<Timestamp> timestamps, std::vector<double> values,
               std::int64_t interval = 0);

    std::size_t size() const noexcept { return values_.size(); }
    std::int64_t interval() const noexcept { return interval_; }
    std::span<const Timestamp> timestamps() const noexcept { return timestamps_; }
    std::span<const double> values() const noexcept { return values_; }
    Timestamp front_time() const noexcept { return timestamps_.front(); }
    Timestamp back_time() const noexcept { return timestamps_.back(); }

    /// True when every consecutive gap equals `interval()`.
    bool is_regular() const noexcept;

    /// Points [first, first + count).
    TimeSeries slice(std::size_t first, std::size_t count) const;

    bool operator==(const TimeSeries&) const = default;

private:
    std::vector<Timestamp> timestamps_;
    std::vector<double> values_;
    std::int64_t interval_;
};

struct HoldoutSplit {
    TimeSeries train;
    TimeSeries test;
};

/// Reserves the trailing `n_test` points for evaluation.
/// Throws InvalidSplitError unless 1 <= n_test < series.size().
HoldoutSplit split_holdout(const TimeSeries& series, std::size_t n_test);

/// Joins two series; `tail` must start after `head` ends.
TimeSeries concatenate(const TimeSeries& head, const TimeSeries& tail);

enum class GapPolicy { forward_fill, linear_interpolate, error };

/// Snaps every point onto the grid `front_time() + k * interval` and fills
/// empty slots according to `policy`.
///
/// Throws GapError (policy `error`) naming the first missing slot, and
/// AmbiguityError when two points snap onto the same slot.
TimeSeries regularize(const TimeSeries& series, std::int64_t interval,
                      GapPolicy policy = GapPolicy::linear_interpolate);

} // namespace tfc
