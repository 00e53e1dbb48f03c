#pragma once

#include "tfc/regression.hpp"
#include "tfc/series.hpp"
#include "tfc/smoothing.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace tfc::generator {

/// A single-step forecaster whose state can be advanced with arbitrary
/// values and copied.
///
/// `clone_state` must return a fully independent copy: updating the clone
/// never affects the original.
class SteppableForecaster {
public:
    virtual ~SteppableForecaster() = default;

    /// Prediction for the next time step.
    virtual double predict_one() const = 0;
    /// Consumes `value` as the observation of the next time step.
    virtual void update_with_value(double value) = 0;
    virtual std::unique_ptr<SteppableForecaster> clone_state() const = 0;

    /// Closed-form multi-step path, for models that have one.
    virtual std::optional<std::vector<double>> native_path(std::size_t /*horizon*/) const {
        return std::nullopt;
    }

    /// Copy of this model positioned right after the warm-up prefix of
    /// `train`, ready to replay the remaining training points.
    virtual std::unique_ptr<SteppableForecaster> rewind(const TimeSeries& train) const = 0;

    /// Leading training points that produce no one-step error on replay.
    virtual std::size_t warm_up() const = 0;
};

class SmoothingForecaster final : public SteppableForecaster {
public:
    SmoothingForecaster(smoothing::Kind kind, smoothing::Params params, smoothing::State state);

    double predict_one() const override;
    void update_with_value(double value) override;
    std::unique_ptr<SteppableForecaster> clone_state() const override;
    std::optional<std::vector<double>> native_path(std::size_t horizon) const override;
    std::unique_ptr<SteppableForecaster> rewind(const TimeSeries& train) const override;
    std::size_t warm_up() const override;

    const smoothing::State& state() const noexcept { return state_; }

private:
    smoothing::Kind kind_;
    smoothing::Params params_;
    smoothing::State state_;
};

/// STD model stepping through time; fed-back values are ignored.
class DecompositionForecaster final : public SteppableForecaster {
public:
    /// Positioned to predict `next_timestamp`, advancing by `interval` per step.
    DecompositionForecaster(std::shared_ptr<const regfit::RegressionModel> model,
                            Timestamp next_timestamp, std::int64_t interval);

    double predict_one() const override;
    void update_with_value(double value) override;
    std::unique_ptr<SteppableForecaster> clone_state() const override;
    std::optional<std::vector<double>> native_path(std::size_t horizon) const override;
    std::unique_ptr<SteppableForecaster> rewind(const TimeSeries& train) const override;
    std::size_t warm_up() const override { return 0; }

private:
    std::shared_ptr<const regfit::RegressionModel> model_;
    Timestamp next_;
    std::int64_t interval_;
};

/// STAR model; fed-back values enter the autoregression window.
class AutoregressiveForecaster final : public SteppableForecaster {
public:
    /// `window` holds the model's `aw` most recent values, oldest first.
    AutoregressiveForecaster(std::shared_ptr<const regfit::RegressionModel> model,
                             Timestamp next_timestamp, std::int64_t interval,
                             std::vector<double> window);

    double predict_one() const override;
    void update_with_value(double value) override;
    std::unique_ptr<SteppableForecaster> clone_state() const override;
    std::unique_ptr<SteppableForecaster> rewind(const TimeSeries& train) const override;
    std::size_t warm_up() const override;

    std::span<const double> window() const noexcept { return window_; }

private:
    std::shared_ptr<const regfit::RegressionModel> model_;
    Timestamp next_;
    std::int64_t interval_;
    std::vector<double> window_;
};

/// Forecaster positioned at the end of the training data the model was fit on.
std::unique_ptr<SteppableForecaster> make_forecaster(smoothing::Kind kind, const smoothing::Fit& fit);
std::unique_ptr<SteppableForecaster> make_forecaster(regfit::RegressionModel model,
                                                     const TimeSeries& train);

} // namespace tfc::generator
