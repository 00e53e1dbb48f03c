#pragma once

#include "tfc/series.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tfc::smoothing {

enum class Kind { ses, holt, holt_winters };

std::string_view to_string(Kind kind) noexcept;

/// Smoothing weights. `beta` is used by trend models, `gamma` and `period`
/// only by Holt-Winters.
struct Params {
    double alpha = 0.5;
    double beta = 0.0;
    double gamma = 0.0;
    std::size_t period = 0;

    bool operator==(const Params&) const = default;
};

/// Throws SpecError when a weight lies outside [0, 1] or the period is < 2
/// for Holt-Winters.
void validate(Kind kind, const Params& params);

/// Level/trend/seasonal state after consuming `step_index` observations.
///
/// Seasonals are indexed by phase: `seasonals[k]` is the additive
/// component for every time index `i` with `i % period == k`, so the slot
/// used by the next prediction is `seasonals[step_index % period]`.
struct State {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonals;
    std::size_t step_index = 0;

    bool operator==(const State&) const = default;
};

struct Fit {
    Params params;
    State state;
};

/// Number of leading observations consumed by initialisation. They produce
/// no one-step-ahead errors.
std::size_t warm_up(Kind kind, const Params& params);

/// Minimum training length accepted by `fit`.
std::size_t min_train_length(Kind kind, std::size_t period);

/// Deterministic start state from the first `warm_up` values.
///
/// SES starts at the first value. Holt starts at the second value with the
/// first difference as trend. Holt-Winters uses the first-period mean as
/// level, the difference of the first two period means per step as trend
/// and the first-period deviations as seasonals.
State initial_state(Kind kind, const Params& params, std::span<const double> values);

double predict_one(const State& state, Kind kind, const Params& params);

/// One recursion step with observation `observed`.
State update_state(State state, Kind kind, const Params& params, double observed);

/// Closed-form `horizon`-step path from `state` without feedback.
std::vector<double> forecast_path(const State& state, Kind kind, const Params& params,
                                  std::size_t horizon);

/// In-sample sum of squared one-step errors after warm-up.
double in_sample_sse(std::span<const double> values, Kind kind, const Params& params);

/// Fits on `train`. Without `params`, searches the 0.05 lattice of every
/// weight the kind uses for the lowest in-sample SSE; ties keep the first
/// lattice point. Holt-Winters needs `period` either way.
///
/// Throws InsufficientDataError when `train` is too short for `kind`.
Fit fit(const TimeSeries& train, Kind kind, std::optional<Params> params = std::nullopt,
        std::size_t period = 0);

} // namespace tfc::smoothing
