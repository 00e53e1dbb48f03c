#pragma once

#include "tfc/forecaster.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace tfc::generator {

/// In-sample one-step-ahead errors `y_t - yhat_t`, nonempty and finite.
class ResidualStore {
public:
    /// Throws InsufficientDataError when empty, SpecError on non-finite values.
    explicit ResidualStore(std::vector<double> residuals);

    std::span<const double> values() const noexcept { return residuals_; }
    std::size_t size() const noexcept { return residuals_.size(); }

private:
    std::vector<double> residuals_;
};

/// Replays `train` through a rewound copy of `forecaster`, collecting the
/// error before each update. The model's warm-up prefix is skipped.
ResidualStore compute_residuals(const SteppableForecaster& forecaster, const TimeSeries& train);

/// Row-major (scenario x step) matrix of simulated futures.
class ForecastDistribution {
public:
    ForecastDistribution(std::size_t n_scenarios, std::size_t horizon, std::uint64_t seed);

    std::size_t n_scenarios() const noexcept { return n_scenarios_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::uint64_t seed() const noexcept { return seed_; }

    std::span<double> row(std::size_t scenario);
    std::span<const double> row(std::size_t scenario) const;
    double at(std::size_t scenario, std::size_t step) const { return data_[scenario * horizon_ + step]; }
    /// Copy of column `step` across all scenarios.
    std::vector<double> column(std::size_t step) const;

    bool operator==(const ForecastDistribution&) const = default;

private:
    std::size_t n_scenarios_;
    std::size_t horizon_;
    std::uint64_t seed_;
    std::vector<double> data_;
};

inline constexpr std::size_t kDefaultScenarios = 200;
inline constexpr std::array<double, 4> kDefaultQuantiles{0.05, 0.25, 0.75, 0.95};

/// Seed of scenario `index` under the generation seed `seed`.
constexpr std::uint64_t scenario_seed(std::uint64_t seed, std::size_t index) noexcept {
    return seed ^ static_cast<std::uint64_t>(index);
}

/// Simulates one future: from a clone of `forecaster`, repeatedly predict,
/// add a residual drawn uniformly with replacement, record the sum and
/// feed it back. The draw sequence depends only on `scenario_seed(seed, index)`.
void simulate_scenario(const SteppableForecaster& forecaster, const ResidualStore& residuals,
                       std::uint64_t seed, std::size_t index, std::span<double> out);

/// Bootstrapped-residual ensemble. Scenarios are independent and may run on
/// up to `threads` workers; the result is identical for every thread count.
ForecastDistribution generate(const SteppableForecaster& forecaster, const ResidualStore& residuals,
                              std::size_t horizon, std::size_t n_scenarios = kDefaultScenarios,
                              std::uint64_t seed = 0, unsigned threads = 1);

/// One-row distribution holding the forecaster's native path. Throws
/// SpecError when the forecaster has none.
ForecastDistribution generate_deterministic(const SteppableForecaster& forecaster,
                                            std::size_t horizon);

enum class PointReduction { mean, median };

struct ForecastResult {
    std::vector<double> point;
    std::map<double, std::vector<double>> bands;
};

/// Empirical quantile with linear interpolation between order statistics
/// (position `q * (n - 1)` in the sorted sample). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double q);

/// Per-step point forecast and quantile bands. Throws SpecError when
/// `levels` is empty or a level lies outside (0, 1).
ForecastResult reduce(const ForecastDistribution& dist, std::span<const double> levels,
                      PointReduction point = PointReduction::mean);

} // namespace tfc::generator
