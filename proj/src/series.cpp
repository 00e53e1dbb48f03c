#include "tfc/series.hpp"

#include "tfc/error.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace tfc {

TimeSeries::TimeSeries(std::vector<Timestamp> timestamps, std::vector<double> values,
                       std::int64_t interval)
    : timestamps_(std::move(timestamps)), values_(std::move(values)), interval_(interval) {
    if (timestamps_.empty()) {
        throw SpecError("time series must contain at least one point");
    }
    if (timestamps_.size() != values_.size()) {
        throw SpecError("time series has " + std::to_string(timestamps_.size()) +
                        " timestamps but " + std::to_string(values_.size()) + " values");
    }
    if (interval_ < 0) {
        throw SpecError("sampling interval must be non-negative");
    }
    std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw SpecError("non-finite value at index " + std::to_string(i));
        }
        if (i > 0) {
            const std::int64_t gap = timestamps_[i] - timestamps_[i - 1];
            if (gap <= 0) {
                throw SpecError("timestamps not strictly increasing at index " +
                                std::to_string(i));
            }
            min_gap = std::min(min_gap, gap);
        }
    }
    if (interval_ == 0) {
        interval_ = timestamps_.size() > 1 ? min_gap : 1;
    }
}

bool TimeSeries::is_regular() const noexcept {
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (timestamps_[i] - timestamps_[i - 1] != interval_) {
            return false;
        }
    }
    return true;
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > size()) {
        throw SpecError("slice [" + std::to_string(first) + ", " +
                        std::to_string(first + count) + ") out of range for series of length " +
                        std::to_string(size()));
    }
    const auto f = static_cast<std::ptrdiff_t>(first);
    const auto l = static_cast<std::ptrdiff_t>(first + count);
    return TimeSeries({timestamps_.begin() + f, timestamps_.begin() + l},
                      {values_.begin() + f, values_.begin() + l}, interval_);
}

HoldoutSplit split_holdout(const TimeSeries& series, std::size_t n_test) {
    if (n_test < 1 || n_test >= series.size()) {
        throw InvalidSplitError("holdout of " + std::to_string(n_test) +
                                " points is invalid for a series of length " +
                                std::to_string(series.size()));
    }
    const std::size_t n_train = series.size() - n_test;
    return {series.slice(0, n_train), series.slice(n_train, n_test)};
}

TimeSeries concatenate(const TimeSeries& head, const TimeSeries& tail) {
    std::vector<Timestamp> ts(head.timestamps().begin(), head.timestamps().end());
    std::vector<double> vs(head.values().begin(), head.values().end());
    ts.insert(ts.end(), tail.timestamps().begin(), tail.timestamps().end());
    vs.insert(vs.end(), tail.values().begin(), tail.values().end());
    return TimeSeries(std::move(ts), std::move(vs), head.interval());
}

namespace {

// Nearest grid slot; halfway points go to the later slot.
std::int64_t snap(Timestamp t, Timestamp origin, std::int64_t interval) {
    const std::int64_t offset = t - origin;
    return (offset + interval / 2) / interval;
}

} // namespace

TimeSeries regularize(const TimeSeries& series, std::int64_t interval, GapPolicy policy) {
    if (interval <= 0) {
        throw SpecError("regularization interval must be positive");
    }
    const Timestamp origin = series.front_time();
    const std::int64_t last_slot = snap(series.back_time(), origin, interval);
    const auto n_slots = static_cast<std::size_t>(last_slot + 1);

    std::vector<std::optional<double>> slots(n_slots);
    const auto ts = series.timestamps();
    const auto vs = series.values();
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto k = static_cast<std::size_t>(snap(ts[i], origin, interval));
        if (slots[k]) {
            throw AmbiguityError("points at t=" + std::to_string(ts[i - 1]) + " and t=" +
                                 std::to_string(ts[i]) + " both snap to grid slot t=" +
                                 std::to_string(origin + static_cast<Timestamp>(k) * interval));
        }
        slots[k] = vs[i];
    }

    std::vector<Timestamp> out_ts(n_slots);
    std::vector<double> out_vs(n_slots);
    std::size_t prev_filled = 0; // slot 0 is always filled
    std::size_t next_filled = 0;
    for (std::size_t k = 0; k < n_slots; ++k) {
        out_ts[k] = origin + static_cast<Timestamp>(k) * interval;
        if (slots[k]) {
            out_vs[k] = *slots[k];
            prev_filled = k;
            continue;
        }
        switch (policy) {
        case GapPolicy::error:
            throw GapError("gap in series: no point for t=" + std::to_string(out_ts[k]), out_ts[k]);
        case GapPolicy::forward_fill:
            out_vs[k] = *slots[prev_filled];
            break;
        case GapPolicy::linear_interpolate: {
            if (next_filled < k) {
                next_filled = k + 1;
                while (!slots[next_filled]) {
                    ++next_filled;
                }
            }
            const double w = static_cast<double>(k - prev_filled) /
                             static_cast<double>(next_filled - prev_filled);
            out_vs[k] = (1.0 - w) * *slots[prev_filled] + w * *slots[next_filled];
            break;
        }
        }
    }
    return TimeSeries(std::move(out_ts), std::move(out_vs), interval);
}

} // namespace tfc
