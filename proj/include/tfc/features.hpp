#pragma once

#include "tfc/series.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace tfc::regfit {

/// Calendar feature groups fed to the regression models. Each enabled group
/// is one-hot encoded, so exactly one of its levels is set per timestamp.
struct TimeFeatureConfig {
    bool trend = true;
    bool hour_of_day = true;
    bool day_of_week = true;
    bool month_of_year = false;
    bool is_holiday = false;
    /// Local calendar dates as days since 1970-01-01.
    std::set<std::int64_t> holidays;
    /// Offset added to UTC before calendar decomposition.
    std::int64_t utc_offset = 0;

    bool operator==(const TimeFeatureConfig&) const = default;
};

/// Hour-of-day and day-of-week, plus month-of-year when the training span
/// covers at least 60 days.
TimeFeatureConfig default_feature_config(const TimeSeries& train);

/// Affine map of timestamps onto [0, 1] across the training span.
struct TrendScale {
    Timestamp origin = 0;
    double span = 1.0;

    static TrendScale over(const TimeSeries& train);
    double operator()(Timestamp t) const { return static_cast<double>(t - origin) / span; }
    bool operator==(const TrendScale&) const = default;
};

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kDaysPerWeek = 7;
inline constexpr std::size_t kMonthsPerYear = 12;
inline constexpr std::size_t kHolidayLevels = 2;

std::size_t one_hot_width(const TimeFeatureConfig& config) noexcept;

/// Columns of the flattened feature row: trend, one-hot block, `aw` lags.
std::size_t feature_width(const TimeFeatureConfig& config, std::size_t aw) noexcept;

struct FeatureVector {
    std::optional<double> trend;
    std::vector<double> one_hot;
    std::vector<double> ar; ///< oldest first

    std::size_t width() const noexcept { return (trend ? 1 : 0) + one_hot.size() + ar.size(); }
    std::vector<double> flatten() const;
};

/// Positions, within the one-hot block, of the level set for each enabled group.
struct ActiveLevels {
    std::array<std::size_t, 4> columns{};
    std::size_t count = 0;
};

ActiveLevels active_levels(Timestamp timestamp, const TimeFeatureConfig& config);

/// Throws ArityError unless `recent_window.size() == aw`.
///
/// One-hot layout, in order of the enabled groups: hour 0..23, ISO weekday
/// Monday..Sunday, month January..December, holiday {no, yes}.
FeatureVector build_features(Timestamp timestamp, const TimeFeatureConfig& config,
                             const TrendScale& scale, std::size_t aw = 0,
                             std::span<const double> recent_window = {});

/// Allocation-free variant writing the flattened row into `row`, whose size
/// must equal `feature_width(config, recent_window.size())`.
void write_features(Timestamp timestamp, const TimeFeatureConfig& config, const TrendScale& scale,
                    std::span<const double> recent_window, std::span<double> row);

} // namespace tfc::regfit
