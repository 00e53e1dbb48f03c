#include "tfc/regression.hpp"

#include "tfc/error.hpp"
#include "tfc/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tfc::regfit {

std::string_view to_string(Transform transform) noexcept {
    return transform == Transform::log1p ? "log1p" : "identity";
}

std::optional<Transform> parse_transform(std::string_view name) noexcept {
    if (name == "identity") {
        return Transform::identity;
    }
    if (name == "log1p") {
        return Transform::log1p;
    }
    return std::nullopt;
}

// log1p is applied to max(value, 0): telemetry is non-negative, and
// simulated paths may dip below zero.
double forward_transform(Transform transform, double value) noexcept {
    return transform == Transform::log1p ? std::log1p(std::max(value, 0.0)) : value;
}

double inverse_transform(Transform transform, double value) noexcept {
    return transform == Transform::log1p ? std::expm1(value) : value;
}

RegressionModel::RegressionModel(RegressionKind kind, std::vector<double> weights, double intercept,
                                 double lambda, TimeFeatureConfig config, std::size_t aw,
                                 Transform transform, TrendScale scale)
    : kind_(kind), weights_(std::move(weights)), intercept_(intercept), lambda_(lambda),
      config_(std::move(config)), aw_(aw), transform_(transform), scale_(scale) {
    if ((aw_ == 0) != (kind_ == RegressionKind::decomposition)) {
        throw SpecError("autoregression window must be 0 exactly for decomposition models");
    }
    if (weights_.size() != feature_width(config_, aw_)) {
        throw SpecError("model has " + std::to_string(weights_.size()) +
                        " weights but the feature width is " +
                        std::to_string(feature_width(config_, aw_)));
    }
}

double RegressionModel::predict(Timestamp timestamp, std::span<const double> recent_window) const {
    if (recent_window.size() != aw_) {
        throw ArityError("autoregression window needs " + std::to_string(aw_) + " values, got " +
                         std::to_string(recent_window.size()));
    }
    // Sparse evaluation of the feature row: one weight per active one-hot level.
    double z = intercept_;
    std::size_t col = 0;
    if (config_.trend) {
        z += weights_[col++] * scale_(timestamp);
    }
    const ActiveLevels levels = active_levels(timestamp, config_);
    for (std::size_t i = 0; i < levels.count; ++i) {
        z += weights_[col + levels.columns[i]];
    }
    col += one_hot_width(config_);
    for (std::size_t j = 0; j < aw_; ++j) {
        z += weights_[col + j] * forward_transform(transform_, recent_window[j]);
    }
    return inverse_transform(transform_, z);
}

RegressionModel fit_regression(const TimeSeries& train, const TimeFeatureConfig& config,
                               std::size_t aw, double lambda, Transform transform) {
    const std::size_t width = feature_width(config, aw);
    const std::size_t n = train.size();
    if (n < aw + width + 1) {
        throw InsufficientDataError("regression with " + std::to_string(width) +
                                    " features and window " + std::to_string(aw) + " needs at least " +
                                    std::to_string(aw + width + 1) + " training points, got " +
                                    std::to_string(n));
    }
    const TrendScale scale = TrendScale::over(train);
    const auto ts = train.timestamps();
    std::vector<double> z(n);
    std::transform(train.values().begin(), train.values().end(), z.begin(),
                   [transform](double v) { return forward_transform(transform, v); });

    const std::size_t rows = n - aw;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
    std::vector<double> row(width);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + aw;
        write_features(ts[t], config, scale, std::span<const double>(z).subspan(r, aw), row);
        for (std::size_t j = 0; j < width; ++j) {
            design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = row[j];
        }
    }
    RidgeSolution sol = ridge_solve(design, std::span<const double>(z).subspan(aw), lambda);
    const RegressionKind kind = aw == 0 ? RegressionKind::decomposition : RegressionKind::autoregressive;
    return RegressionModel(kind, std::move(sol.weights), sol.intercept, lambda, config, aw, transform,
                           scale);
}

RegressionModel std_fit(const TimeSeries& train, const TimeFeatureConfig& config, double lambda,
                        Transform transform) {
    return fit_regression(train, config, 0, lambda, transform);
}

std::vector<double> std_predict(const RegressionModel& model, std::span<const Timestamp> timestamps) {
    if (model.kind() != RegressionKind::decomposition) {
        throw SpecError("std_predict needs a decomposition model");
    }
    std::vector<double> out(timestamps.size());
    std::transform(timestamps.begin(), timestamps.end(), out.begin(),
                   [&model](Timestamp t) { return model.predict(t, {}); });
    return out;
}

RegressionModel star_fit(const TimeSeries& train, const TimeFeatureConfig& config, std::size_t aw,
                         double lambda, Transform transform) {
    if (aw == 0) {
        throw SpecError("STAR needs an autoregression window of at least 1");
    }
    return fit_regression(train, config, aw, lambda, transform);
}

double star_predict_one(const RegressionModel& model, Timestamp timestamp,
                        std::span<const double> recent_window) {
    if (model.kind() != RegressionKind::autoregressive) {
        throw SpecError("star_predict_one needs an autoregressive model");
    }
    return model.predict(timestamp, recent_window);
}

} // namespace tfc::regfit
