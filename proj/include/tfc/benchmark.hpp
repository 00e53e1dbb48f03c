#pragma once

#include "tfc/dataset.hpp"
#include "tfc/features.hpp"
#include "tfc/generator.hpp"
#include "tfc/metrics.hpp"
#include "tfc/regression.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tfc::bench {

/// How a model turns single-step predictions into a holdout-length forecast.
enum class ForecastMode { bootstrap, deterministic };

/// Models known to the harness: "ses", "holt", "hwes", "std", "star".
const std::vector<std::string>& model_ids();
bool is_smoothing_model(std::string_view id);

/// A model and the hyperparameter grid swept for it. Grids a model does not
/// use are ignored; smoothing weights are always chosen by in-sample SSE.
struct ModelSpec {
    std::string id;
    std::vector<std::size_t> aw_grid{4, 12, 24, 48};
    std::vector<double> lambda_grid{1e-6, 1e-2};
    std::vector<regfit::Transform> transform_grid{regfit::Transform::identity,
                                                  regfit::Transform::log1p};
    /// Calendar features; by default derived from the training span.
    std::optional<regfit::TimeFeatureConfig> features;
    /// Smoothing models default to their closed-form path, regression
    /// models to the residual bootstrap.
    std::optional<ForecastMode> mode;
};

struct BenchmarkConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<ModelSpec> models;
    std::vector<std::size_t> holdouts{1000, 5000};
    std::size_t scenarios = generator::kDefaultScenarios;
    std::uint64_t seed = 0;
    std::vector<double> quantiles{generator::kDefaultQuantiles.begin(),
                                  generator::kDefaultQuantiles.end()};
    /// Share of the training segment held back for validation selection.
    double validation_fraction = 0.1;
    /// Concurrent rows; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

/// Metrics of one selected grid point plus its hyperparameters.
struct Outcome {
    eval::EvalRecord record;
    nlohmann::json params = nlohmann::json::object();

    bool operator==(const Outcome&) const = default;
};

/// One (model, dataset, holdout) job. `best` follows the "best result
/// achieved" protocol and picks the grid point by test lR^2; `validated`
/// picks it by lR^2 on the last part of the training segment and is then
/// scored on the same test segment.
struct ReportRow {
    std::string model;
    std::string dataset;
    std::size_t holdout = 0;
    std::optional<Outcome> best;
    std::optional<Outcome> validated;
    std::string error;

    bool operator==(const ReportRow&) const = default;
};

struct BenchmarkReport {
    std::vector<ReportRow> rows;

    bool operator==(const BenchmarkReport&) const = default;
};

/// One grid point of a model.
struct Candidate {
    std::string model;
    std::size_t aw = 0;
    double lambda = regfit::kDefaultLambda;
    regfit::Transform transform = regfit::Transform::identity;

    nlohmann::json to_json() const;
};

std::vector<Candidate> expand_grid(const ModelSpec& model);

/// Fits `candidate` on `train` and forecasts `horizon` steps past its end:
/// fit, residuals, generation and reduction.
generator::ForecastResult forecast(const Candidate& candidate, const ModelSpec& model,
                                   const TimeSeries& train, std::size_t horizon,
                                   std::size_t seasonal_period, const BenchmarkConfig& config);

/// Holdout actually used for `requested` on `dataset`.
std::size_t effective_holdout(const DatasetSpec& dataset, std::size_t requested);

/// Runs every (dataset, holdout, model) row. Row failures are recorded in
/// the row and never abort the others. Scores do not depend on scheduling.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Throws SpecError on schema violations. Relative dataset paths resolve
/// against `base_dir`.
BenchmarkConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
BenchmarkConfig load_config(const std::filesystem::path& path);

/// Four synthetic archetypes standing in for the telemetry datasets, all
/// five models, holdouts {1000, 5000} with 4380 on the hourly year.
BenchmarkConfig default_synthetic_config();

} // namespace tfc::bench
