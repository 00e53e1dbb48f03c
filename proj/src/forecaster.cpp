#include "tfc/forecaster.hpp"

#include "tfc/error.hpp"

#include <algorithm>

namespace tfc::generator {

SmoothingForecaster::SmoothingForecaster(smoothing::Kind kind, smoothing::Params params,
                                         smoothing::State state)
    : kind_(kind), params_(params), state_(std::move(state)) {
    smoothing::validate(kind_, params_);
}

double SmoothingForecaster::predict_one() const {
    return smoothing::predict_one(state_, kind_, params_);
}

void SmoothingForecaster::update_with_value(double value) {
    state_ = smoothing::update_state(std::move(state_), kind_, params_, value);
}

std::unique_ptr<SteppableForecaster> SmoothingForecaster::clone_state() const {
    return std::make_unique<SmoothingForecaster>(*this);
}

std::optional<std::vector<double>> SmoothingForecaster::native_path(std::size_t horizon) const {
    return smoothing::forecast_path(state_, kind_, params_, horizon);
}

std::unique_ptr<SteppableForecaster> SmoothingForecaster::rewind(const TimeSeries& train) const {
    return std::make_unique<SmoothingForecaster>(
        kind_, params_, smoothing::initial_state(kind_, params_, train.values()));
}

std::size_t SmoothingForecaster::warm_up() const { return smoothing::warm_up(kind_, params_); }

DecompositionForecaster::DecompositionForecaster(
    std::shared_ptr<const regfit::RegressionModel> model, Timestamp next_timestamp,
    std::int64_t interval)
    : model_(std::move(model)), next_(next_timestamp), interval_(interval) {
    if (model_->kind() != regfit::RegressionKind::decomposition) {
        throw SpecError("DecompositionForecaster needs a decomposition model");
    }
}

double DecompositionForecaster::predict_one() const { return model_->predict(next_, {}); }

void DecompositionForecaster::update_with_value(double /*value*/) { next_ += interval_; }

std::unique_ptr<SteppableForecaster> DecompositionForecaster::clone_state() const {
    return std::make_unique<DecompositionForecaster>(*this);
}

std::optional<std::vector<double>> DecompositionForecaster::native_path(std::size_t horizon) const {
    std::vector<Timestamp> ts(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        ts[h] = next_ + static_cast<Timestamp>(h) * interval_;
    }
    return regfit::std_predict(*model_, ts);
}

std::unique_ptr<SteppableForecaster> DecompositionForecaster::rewind(const TimeSeries& train) const {
    return std::make_unique<DecompositionForecaster>(model_, train.front_time(), train.interval());
}

AutoregressiveForecaster::AutoregressiveForecaster(
    std::shared_ptr<const regfit::RegressionModel> model, Timestamp next_timestamp,
    std::int64_t interval, std::vector<double> window)
    : model_(std::move(model)), next_(next_timestamp), interval_(interval), window_(std::move(window)) {
    if (model_->kind() != regfit::RegressionKind::autoregressive) {
        throw SpecError("AutoregressiveForecaster needs an autoregressive model");
    }
    if (window_.size() != model_->aw()) {
        throw ArityError("autoregression window needs " + std::to_string(model_->aw()) +
                         " values, got " + std::to_string(window_.size()));
    }
}

double AutoregressiveForecaster::predict_one() const { return model_->predict(next_, window_); }

void AutoregressiveForecaster::update_with_value(double value) {
    std::shift_left(window_.begin(), window_.end(), 1);
    window_.back() = value;
    next_ += interval_;
}

std::unique_ptr<SteppableForecaster> AutoregressiveForecaster::clone_state() const {
    return std::make_unique<AutoregressiveForecaster>(*this);
}

std::unique_ptr<SteppableForecaster> AutoregressiveForecaster::rewind(const TimeSeries& train) const {
    const std::size_t aw = model_->aw();
    if (train.size() <= aw) {
        throw InsufficientDataError("replay needs more than " + std::to_string(aw) + " points");
    }
    const auto vs = train.values();
    return std::make_unique<AutoregressiveForecaster>(
        model_, train.timestamps()[aw], train.interval(), std::vector<double>(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(aw)));
}

std::size_t AutoregressiveForecaster::warm_up() const { return model_->aw(); }

std::unique_ptr<SteppableForecaster> make_forecaster(smoothing::Kind kind, const smoothing::Fit& fit) {
    return std::make_unique<SmoothingForecaster>(kind, fit.params, fit.state);
}

std::unique_ptr<SteppableForecaster> make_forecaster(regfit::RegressionModel model,
                                                     const TimeSeries& train) {
    auto shared = std::make_shared<const regfit::RegressionModel>(std::move(model));
    const Timestamp next = train.back_time() + train.interval();
    if (shared->kind() == regfit::RegressionKind::decomposition) {
        return std::make_unique<DecompositionForecaster>(shared, next, train.interval());
    }
    const std::size_t aw = shared->aw();
    if (train.size() < aw) {
        throw InsufficientDataError("training series shorter than the autoregression window");
    }
    const auto vs = train.values();
    return std::make_unique<AutoregressiveForecaster>(
        shared, next, train.interval(),
        std::vector<double>(vs.end() - static_cast<std::ptrdiff_t>(aw), vs.end()));
}

} // namespace tfc::generator
