#pragma once

#include "tfc/features.hpp"
#include "tfc/series.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tfc::regfit {

/// STD: trend plus calendar one-hot. STAR: STD plus an autoregression window.
enum class RegressionKind { decomposition, autoregressive };

enum class Transform { identity, log1p };

std::string_view to_string(Transform transform) noexcept;
std::optional<Transform> parse_transform(std::string_view name) noexcept;

inline constexpr double kDefaultLambda = 1e-6;

/// A fitted linear model over [trend | one-hot | lags]. Immutable.
class RegressionModel {
public:
    /// Throws SpecError when `weights` does not match the feature width or
    /// `aw` disagrees with `kind`.
    RegressionModel(RegressionKind kind, std::vector<double> weights, double intercept,
                    double lambda, TimeFeatureConfig config, std::size_t aw, Transform transform,
                    TrendScale scale);

    RegressionKind kind() const noexcept { return kind_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double intercept() const noexcept { return intercept_; }
    double lambda() const noexcept { return lambda_; }
    const TimeFeatureConfig& config() const noexcept { return config_; }
    std::size_t aw() const noexcept { return aw_; }
    Transform transform() const noexcept { return transform_; }
    const TrendScale& scale() const noexcept { return scale_; }

    /// Prediction at `timestamp` given the `aw` most recent values, oldest
    /// first, in the original (untransformed) scale.
    double predict(Timestamp timestamp, std::span<const double> recent_window) const;

    bool operator==(const RegressionModel&) const = default;

private:
    RegressionKind kind_;
    std::vector<double> weights_;
    double intercept_;
    double lambda_;
    TimeFeatureConfig config_;
    std::size_t aw_;
    Transform transform_;
    TrendScale scale_;
};

double forward_transform(Transform transform, double value) noexcept;
double inverse_transform(Transform transform, double value) noexcept;

/// Joint ridge fit over the feature blocks; `aw == 0` gives an STD model.
/// Throws InsufficientDataError when fewer than width + 1 rows remain.
RegressionModel fit_regression(const TimeSeries& train, const TimeFeatureConfig& config,
                               std::size_t aw, double lambda = kDefaultLambda,
                               Transform transform = Transform::identity);

RegressionModel std_fit(const TimeSeries& train, const TimeFeatureConfig& config,
                        double lambda = kDefaultLambda, Transform transform = Transform::identity);

/// Pure function of time; any horizon.
std::vector<double> std_predict(const RegressionModel& model, std::span<const Timestamp> timestamps);

/// Throws SpecError when `aw == 0`.
RegressionModel star_fit(const TimeSeries& train, const TimeFeatureConfig& config, std::size_t aw,
                         double lambda = kDefaultLambda, Transform transform = Transform::identity);

/// Throws ArityError unless `recent_window.size() == model.aw()`.
double star_predict_one(const RegressionModel& model, Timestamp timestamp,
                        std::span<const double> recent_window);

} // namespace tfc::regfit
