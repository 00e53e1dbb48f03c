#pragma once

#include <chrono>
#include <numbers>
#include <span>
#include <type_traits>
#include <utility>

namespace tfc::eval {

inline constexpr double kLogEpsilon = 1e-9;

struct EvalRecord {
    double runtime_seconds = 0.0;
    double r2 = 0.0;
    double lr2 = 0.0;

    bool operator==(const EvalRecord&) const = default;
};

/// 1 - SSE/SST, SST taken about the mean of `actual`.
/// Throws SpecError on length mismatch or empty input, and
/// DegenerateTargetError when `actual` has zero variance.
double r_squared(std::span<const double> actual, std::span<const double> predicted);

/// R^2 of log(max(actual, epsilon)) against log(max(predicted, epsilon)).
/// `log_base` only rescales both sums of squares and cancels out.
double log_r_squared(std::span<const double> actual, std::span<const double> predicted,
                     double epsilon = kLogEpsilon, double log_base = std::numbers::e);

template <typename T>
struct Timed {
    T result;
    double seconds;
};

/// Wall time of `run()` on the monotonic clock.
template <typename Fn>
auto timed(Fn&& run) {
    using Clock = std::chrono::steady_clock;
    using R = std::invoke_result_t<Fn>;
    const auto start = Clock::now();
    if constexpr (std::is_void_v<R>) {
        std::forward<Fn>(run)();
        return std::chrono::duration<double>(Clock::now() - start).count();
    } else {
        R result = std::forward<Fn>(run)();
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return Timed<R>{std::move(result), seconds};
    }
}

} // namespace tfc::eval
