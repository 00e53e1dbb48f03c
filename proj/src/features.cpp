#include "tfc/features.hpp"

#include "tfc/error.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace tfc::regfit {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

struct CalendarSlot {
    std::size_t hour;    // 0..23
    std::size_t weekday; // 0 = Monday
    std::size_t month;   // 0 = January
    std::int64_t day;    // days since epoch
};

CalendarSlot decompose(Timestamp t, std::int64_t utc_offset) {
    using namespace std::chrono;
    const std::int64_t local = t + utc_offset;
    const std::int64_t day = floor_div(local, kSecondsPerDay);
    const std::int64_t second_of_day = local - day * kSecondsPerDay;
    const sys_days date{days{day}};
    const year_month_day ymd{date};
    const weekday wd{date};
    return {static_cast<std::size_t>(second_of_day / 3600), wd.iso_encoding() - 1,
            static_cast<unsigned>(ymd.month()) - 1U, day};
}

} // namespace

TimeFeatureConfig default_feature_config(const TimeSeries& train) {
    TimeFeatureConfig config;
    config.month_of_year = train.back_time() - train.front_time() >= 60 * kSecondsPerDay;
    return config;
}

TrendScale TrendScale::over(const TimeSeries& train) {
    const auto span = train.back_time() - train.front_time();
    return {train.front_time(), span > 0 ? static_cast<double>(span) : 1.0};
}

std::size_t one_hot_width(const TimeFeatureConfig& config) noexcept {
    return (config.hour_of_day ? kHoursPerDay : 0) + (config.day_of_week ? kDaysPerWeek : 0) +
           (config.month_of_year ? kMonthsPerYear : 0) + (config.is_holiday ? kHolidayLevels : 0);
}

std::size_t feature_width(const TimeFeatureConfig& config, std::size_t aw) noexcept {
    return (config.trend ? 1 : 0) + one_hot_width(config) + aw;
}

std::vector<double> FeatureVector::flatten() const {
    std::vector<double> row;
    row.reserve(width());
    if (trend) {
        row.push_back(*trend);
    }
    row.insert(row.end(), one_hot.begin(), one_hot.end());
    row.insert(row.end(), ar.begin(), ar.end());
    return row;
}

ActiveLevels active_levels(Timestamp timestamp, const TimeFeatureConfig& config) {
    const CalendarSlot slot = decompose(timestamp, config.utc_offset);
    ActiveLevels out;
    std::size_t offset = 0;
    if (config.hour_of_day) {
        out.columns[out.count++] = offset + slot.hour;
        offset += kHoursPerDay;
    }
    if (config.day_of_week) {
        out.columns[out.count++] = offset + slot.weekday;
        offset += kDaysPerWeek;
    }
    if (config.month_of_year) {
        out.columns[out.count++] = offset + slot.month;
        offset += kMonthsPerYear;
    }
    if (config.is_holiday) {
        out.columns[out.count++] = offset + (config.holidays.contains(slot.day) ? 1 : 0);
    }
    return out;
}

void write_features(Timestamp timestamp, const TimeFeatureConfig& config, const TrendScale& scale,
                    std::span<const double> recent_window, std::span<double> row) {
    std::fill(row.begin(), row.end(), 0.0);
    std::size_t col = 0;
    if (config.trend) {
        row[col++] = scale(timestamp);
    }
    const ActiveLevels levels = active_levels(timestamp, config);
    for (std::size_t i = 0; i < levels.count; ++i) {
        row[col + levels.columns[i]] = 1.0;
    }
    col += one_hot_width(config);
    std::copy(recent_window.begin(), recent_window.end(), row.begin() + static_cast<std::ptrdiff_t>(col));
}

FeatureVector build_features(Timestamp timestamp, const TimeFeatureConfig& config,
                             const TrendScale& scale, std::size_t aw,
                             std::span<const double> recent_window) {
    if (recent_window.size() != aw) {
        throw ArityError("autoregression window needs " + std::to_string(aw) + " values, got " +
                         std::to_string(recent_window.size()));
    }
    std::vector<double> row(feature_width(config, aw));
    write_features(timestamp, config, scale, recent_window, row);

    FeatureVector fv;
    std::size_t col = 0;
    if (config.trend) {
        fv.trend = row[col++];
    }
    const std::size_t hot = one_hot_width(config);
    fv.one_hot.assign(row.begin() + static_cast<std::ptrdiff_t>(col),
                      row.begin() + static_cast<std::ptrdiff_t>(col + hot));
    fv.ar.assign(recent_window.begin(), recent_window.end());
    return fv;
}

} // namespace tfc::regfit
