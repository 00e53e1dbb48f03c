#include "tfc/generator.hpp"

#include "tfc/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace tfc::generator {

ResidualStore::ResidualStore(std::vector<double> residuals) : residuals_(std::move(residuals)) {
    if (residuals_.empty()) {
        throw InsufficientDataError("residual store is empty");
    }
    for (double r : residuals_) {
        if (!std::isfinite(r)) {
            throw SpecError("non-finite residual");
        }
    }
}

ResidualStore compute_residuals(const SteppableForecaster& forecaster, const TimeSeries& train) {
    const std::size_t skip = forecaster.warm_up();
    if (train.size() <= skip) {
        throw InsufficientDataError("no residuals left after a warm-up of " + std::to_string(skip) +
                                    " points on " + std::to_string(train.size()) + " points");
    }
    auto replay = forecaster.rewind(train);
    const auto vs = train.values();
    std::vector<double> residuals;
    residuals.reserve(vs.size() - skip);
    for (std::size_t t = skip; t < vs.size(); ++t) {
        residuals.push_back(vs[t] - replay->predict_one());
        replay->update_with_value(vs[t]);
    }
    return ResidualStore(std::move(residuals));
}

ForecastDistribution::ForecastDistribution(std::size_t n_scenarios, std::size_t horizon,
                                           std::uint64_t seed)
    : n_scenarios_(n_scenarios), horizon_(horizon), seed_(seed), data_(n_scenarios * horizon) {
    if (n_scenarios_ < 1 || horizon_ < 1) {
        throw SpecError("forecast distribution needs at least one scenario and one step");
    }
}

std::span<double> ForecastDistribution::row(std::size_t scenario) {
    return std::span<double>(data_).subspan(scenario * horizon_, horizon_);
}

std::span<const double> ForecastDistribution::row(std::size_t scenario) const {
    return std::span<const double>(data_).subspan(scenario * horizon_, horizon_);
}

std::vector<double> ForecastDistribution::column(std::size_t step) const {
    std::vector<double> col(n_scenarios_);
    for (std::size_t b = 0; b < n_scenarios_; ++b) {
        col[b] = at(b, step);
    }
    return col;
}

void simulate_scenario(const SteppableForecaster& forecaster, const ResidualStore& residuals,
                       std::uint64_t seed, std::size_t index, std::span<double> out) {
    std::mt19937_64 rng(scenario_seed(seed, index));
    std::uniform_int_distribution<std::size_t> pick(0, residuals.size() - 1);
    const auto pool = residuals.values();
    auto state = forecaster.clone_state();
    for (double& slot : out) {
        const double simulated = state->predict_one() + pool[pick(rng)];
        slot = simulated;
        state->update_with_value(simulated);
    }
}

ForecastDistribution generate(const SteppableForecaster& forecaster, const ResidualStore& residuals,
                              std::size_t horizon, std::size_t n_scenarios, std::uint64_t seed,
                              unsigned threads) {
    ForecastDistribution dist(n_scenarios, horizon, seed);
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, n_scenarios);
    if (workers == 1) {
        for (std::size_t b = 0; b < n_scenarios; ++b) {
            simulate_scenario(forecaster, residuals, seed, b, dist.row(b));
        }
        return dist;
    }
    // Strided assignment; each scenario writes only its own row.
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < n_scenarios; b += workers) {
                simulate_scenario(forecaster, residuals, seed, b, dist.row(b));
            }
        });
    }
    pool.clear();
    return dist;
}

ForecastDistribution generate_deterministic(const SteppableForecaster& forecaster,
                                            std::size_t horizon) {
    auto path = forecaster.native_path(horizon);
    if (!path) {
        throw SpecError("forecaster has no closed-form path; use the bootstrap generator");
    }
    ForecastDistribution dist(1, horizon, 0);
    std::copy(path->begin(), path->end(), dist.row(0).begin());
    return dist;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) {
        return sorted[lo];
    }
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ForecastResult reduce(const ForecastDistribution& dist, std::span<const double> levels,
                      PointReduction point) {
    if (levels.empty()) {
        throw SpecError("at least one quantile level is required");
    }
    for (double q : levels) {
        if (!(q > 0.0 && q < 1.0)) {
            throw SpecError("quantile levels must lie in (0, 1), got " + std::to_string(q));
        }
    }
    ForecastResult result;
    result.point.resize(dist.horizon());
    for (double q : levels) {
        result.bands[q].resize(dist.horizon());
    }
    for (std::size_t h = 0; h < dist.horizon(); ++h) {
        std::vector<double> col = dist.column(h);
        std::sort(col.begin(), col.end());
        if (point == PointReduction::mean) {
            // Deviations from a pivot keep a degenerate column exactly equal to its value.
            const double pivot = col.front();
            double dev = 0.0;
            for (double v : col) {
                dev += v - pivot;
            }
            result.point[h] = pivot + dev / static_cast<double>(col.size());
        } else {
            result.point[h] = quantile_sorted(col, 0.5);
        }
        for (auto& [q, band] : result.bands) {
            band[h] = quantile_sorted(col, q);
        }
    }
    return result;
}

} // namespace tfc::generator
