#include "tfc/benchmark.hpp"

#include "tfc/error.hpp"
#include "tfc/forecaster.hpp"
#include "tfc/smoothing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

namespace tfc::bench {

using nlohmann::json;

namespace {

smoothing::Kind smoothing_kind(std::string_view id) {
    if (id == "ses") {
        return smoothing::Kind::ses;
    }
    if (id == "holt") {
        return smoothing::Kind::holt;
    }
    return smoothing::Kind::holt_winters;
}

struct Trial {
    std::optional<eval::EvalRecord> test;
    std::optional<double> validation_lr2;
};

// Candidate with the highest score; ties keep the earliest grid point.
template <typename Score>
std::optional<std::size_t> argmax(const std::vector<Trial>& trials, Score score) {
    std::optional<std::size_t> best;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const std::optional<double> s = score(trials[i]);
        if (s && std::isfinite(*s) && (!best || *s > best_value)) {
            best = i;
            best_value = *s;
        }
    }
    return best;
}

ReportRow run_row(const TimeSeries& series, double load_seconds, const DatasetSpec& dataset,
                  std::size_t requested_holdout, const ModelSpec& model,
                  const BenchmarkConfig& config) {
    ReportRow row{model.id, dataset.name, effective_holdout(dataset, requested_holdout), {}, {}, {}};
    try {
        const HoldoutSplit split = split_holdout(series, row.holdout);
        const std::size_t period = seasonal_period_of(dataset, series);
        const std::vector<Candidate> candidates = expand_grid(model);
        std::vector<Trial> trials(candidates.size());
        std::string first_error;

        const std::size_t n_val = std::max<std::size_t>(
            1, static_cast<std::size_t>(config.validation_fraction * static_cast<double>(split.train.size())));
        std::optional<HoldoutSplit> validation;
        if (n_val < split.train.size()) {
            validation = split_holdout(split.train, n_val);
        }

        for (std::size_t i = 0; i < candidates.size(); ++i) {
            try {
                auto run = eval::timed([&] {
                    const auto result = forecast(candidates[i], model, split.train, split.test.size(),
                                                 period, config);
                    const auto actual = split.test.values();
                    return eval::EvalRecord{0.0, eval::r_squared(actual, result.point),
                                            eval::log_r_squared(actual, result.point)};
                });
                run.result.runtime_seconds = load_seconds + run.seconds;
                trials[i].test = run.result;
            } catch (const std::exception& e) {
                if (first_error.empty()) {
                    first_error = e.what();
                }
            }
            if (validation) {
                try {
                    const auto result = forecast(candidates[i], model, validation->train,
                                                 validation->test.size(), period, config);
                    trials[i].validation_lr2 =
                        eval::log_r_squared(validation->test.values(), result.point);
                } catch (const std::exception&) {
                    // An unscorable validation run only removes the candidate from that protocol.
                }
            }
        }

        if (const auto best = argmax(trials, [](const Trial& t) {
                return t.test ? std::optional<double>(t.test->lr2) : std::nullopt;
            })) {
            row.best = Outcome{*trials[*best].test, candidates[*best].to_json()};
        }
        if (const auto chosen = argmax(trials, [](const Trial& t) {
                return t.test ? t.validation_lr2 : std::nullopt;
            })) {
            row.validated = Outcome{*trials[*chosen].test, candidates[*chosen].to_json()};
        }
        if (!row.best) {
            row.error = first_error.empty() ? "no grid point produced a score" : first_error;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

const std::vector<std::string>& model_ids() {
    static const std::vector<std::string> ids{"ses", "holt", "hwes", "std", "star"};
    return ids;
}

bool is_smoothing_model(std::string_view id) { return id == "ses" || id == "holt" || id == "hwes"; }

json Candidate::to_json() const {
    json j = json::object();
    if (model == "std" || model == "star") {
        j["lambda"] = lambda;
        j["transform"] = std::string(regfit::to_string(transform));
        if (model == "star") {
            j["aw"] = aw;
        }
    }
    return j;
}

std::vector<Candidate> expand_grid(const ModelSpec& model) {
    if (std::find(model_ids().begin(), model_ids().end(), model.id) == model_ids().end()) {
        throw SpecError("unknown model '" + model.id + "'");
    }
    if (is_smoothing_model(model.id)) {
        Candidate only;
        only.model = model.id;
        return {only};
    }
    const std::vector<std::size_t> windows =
        model.id == "star" ? model.aw_grid : std::vector<std::size_t>{0};
    std::vector<Candidate> out;
    for (std::size_t aw : windows) {
        for (double lambda : model.lambda_grid) {
            for (regfit::Transform transform : model.transform_grid) {
                out.push_back({model.id, aw, lambda, transform});
            }
        }
    }
    if (out.empty()) {
        throw SpecError("model '" + model.id + "' has an empty hyperparameter grid");
    }
    return out;
}

generator::ForecastResult forecast(const Candidate& candidate, const ModelSpec& model,
                                   const TimeSeries& train, std::size_t horizon,
                                   std::size_t seasonal_period, const BenchmarkConfig& config) {
    std::unique_ptr<generator::SteppableForecaster> forecaster;
    const bool smoothing_model = is_smoothing_model(candidate.model);
    if (smoothing_model) {
        const smoothing::Kind kind = smoothing_kind(candidate.model);
        forecaster = generator::make_forecaster(
            kind, smoothing::fit(train, kind, std::nullopt, seasonal_period));
    } else {
        const auto features = model.features.value_or(regfit::default_feature_config(train));
        forecaster = generator::make_forecaster(
            regfit::fit_regression(train, features, candidate.aw, candidate.lambda, candidate.transform),
            train);
    }
    const ForecastMode mode =
        model.mode.value_or(smoothing_model ? ForecastMode::deterministic : ForecastMode::bootstrap);
    const generator::ForecastDistribution dist =
        mode == ForecastMode::deterministic
            ? generator::generate_deterministic(*forecaster, horizon)
            : generator::generate(*forecaster, generator::compute_residuals(*forecaster, train),
                                  horizon, config.scenarios, config.seed);
    return generator::reduce(dist, config.quantiles);
}

std::size_t effective_holdout(const DatasetSpec& dataset, std::size_t requested) {
    const auto it = dataset.holdout_overrides.find(requested);
    return it == dataset.holdout_overrides.end() ? requested : it->second;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    struct Loaded {
        std::optional<TimeSeries> series;
        double seconds = 0.0;
        std::string error;
    };
    std::vector<Loaded> loaded(config.datasets.size());
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        try {
            auto run = eval::timed([&] { return load_dataset(config.datasets[d]); });
            loaded[d].series = std::move(run.result);
            loaded[d].seconds = run.seconds;
        } catch (const std::exception& e) {
            loaded[d].error = e.what();
        }
    }

    struct Job {
        std::size_t dataset;
        std::size_t holdout;
        std::size_t model;
    };
    std::vector<Job> jobs;
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t h = 0; h < config.holdouts.size(); ++h) {
            for (std::size_t m = 0; m < config.models.size(); ++m) {
                jobs.push_back({d, h, m});
            }
        }
    }

    BenchmarkReport report;
    report.rows.resize(jobs.size());
    auto execute = [&](std::size_t j) {
        const Job& job = jobs[j];
        const DatasetSpec& dataset = config.datasets[job.dataset];
        const ModelSpec& model = config.models[job.model];
        const std::size_t requested = config.holdouts[job.holdout];
        if (!loaded[job.dataset].series) {
            report.rows[j] = ReportRow{model.id, dataset.name, effective_holdout(dataset, requested),
                                       {}, {}, loaded[job.dataset].error};
            return;
        }
        report.rows[j] = run_row(*loaded[job.dataset].series, loaded[job.dataset].seconds, dataset,
                                 requested, model, config);
    };

    unsigned workers = config.threads > 0 ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (workers == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            execute(j);
        }
        return report;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < jobs.size(); j = next++) {
                    execute(j);
                }
            });
        }
    }
    return report;
}

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
    if (!obj.is_object()) {
        throw SpecError(std::string(where) + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SpecError("unknown key '" + key + "' in " + std::string(where));
        }
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : it->template get<T>();
}

SynthSpec parse_synth(const json& j) {
    check_keys(j, {"archetype", "length", "interval", "noise_scale", "seed", "start", "hourly_amplitude"},
               "synth");
    SynthSpec s;
    const auto name = j.at("archetype").get<std::string>();
    const auto archetype = parse_archetype(name);
    if (!archetype) {
        throw SpecError("unknown archetype '" + name + "'");
    }
    s.archetype = *archetype;
    s.length = get_or(j, "length", s.length);
    s.interval = get_or(j, "interval", s.interval);
    s.noise_scale = get_or(j, "noise_scale", s.noise_scale);
    s.seed = get_or(j, "seed", s.seed);
    s.start = get_or(j, "start", s.start);
    s.hourly_amplitude = get_or(j, "hourly_amplitude", s.hourly_amplitude);
    validate(s);
    return s;
}

regfit::TimeFeatureConfig parse_features(const json& j) {
    check_keys(j, {"trend", "hour_of_day", "day_of_week", "month_of_year", "is_holiday", "holidays", "utc_offset"},
               "features");
    regfit::TimeFeatureConfig f;
    f.trend = get_or(j, "trend", f.trend);
    f.hour_of_day = get_or(j, "hour_of_day", f.hour_of_day);
    f.day_of_week = get_or(j, "day_of_week", f.day_of_week);
    f.month_of_year = get_or(j, "month_of_year", f.month_of_year);
    f.is_holiday = get_or(j, "is_holiday", f.is_holiday);
    f.utc_offset = get_or(j, "utc_offset", f.utc_offset);
    for (const auto& date : get_or(j, "holidays", json::array())) {
        const auto t = parse_timestamp(date.get<std::string>());
        if (!t) {
            throw SpecError("bad holiday date '" + date.get<std::string>() + "'");
        }
        f.holidays.insert(*t / 86400);
    }
    return f;
}

DatasetSpec parse_dataset(const json& j, const std::filesystem::path& base_dir) {
    check_keys(j, {"name", "path", "synth", "timestamp_column", "value_column", "interval", "aggregation",
                   "window", "seasonal_period", "holdout_overrides"},
               "dataset");
    DatasetSpec d;
    d.name = j.at("name").get<std::string>();
    if (j.contains("path") == j.contains("synth")) {
        throw SpecError("dataset '" + d.name + "' needs exactly one of 'path' or 'synth'");
    }
    if (j.contains("path")) {
        std::filesystem::path p = j.at("path").get<std::string>();
        d.source = p.is_absolute() ? p : base_dir / p;
    } else {
        d.source = parse_synth(j.at("synth"));
    }
    d.timestamp_column = get_or(j, "timestamp_column", d.timestamp_column);
    d.value_column = get_or(j, "value_column", d.value_column);
    d.interval = get_or(j, "interval", d.interval);
    const auto agg = get_or<std::string>(j, "aggregation", "none");
    const auto parsed = parse_aggregation(agg);
    if (!parsed) {
        throw SpecError("unknown aggregation '" + agg + "'");
    }
    d.aggregation = *parsed;
    d.window = get_or(j, "window", d.window);
    d.seasonal_period = get_or(j, "seasonal_period", d.seasonal_period);
    const auto overrides = get_or(j, "holdout_overrides", json::object());
    for (const auto& [from, to] : overrides.items()) {
        d.holdout_overrides[std::stoul(from)] = to.get<std::size_t>();
    }
    return d;
}

ModelSpec parse_model(const json& j) {
    ModelSpec m;
    if (j.is_string()) {
        m.id = j.get<std::string>();
    } else {
        check_keys(j, {"id", "aw", "lambda", "transform", "mode", "features"}, "model");
        m.id = j.at("id").get<std::string>();
        m.aw_grid = get_or(j, "aw", m.aw_grid);
        m.lambda_grid = get_or(j, "lambda", m.lambda_grid);
        if (j.contains("transform")) {
            m.transform_grid.clear();
            for (const auto& t : j.at("transform")) {
                const auto parsed = regfit::parse_transform(t.get<std::string>());
                if (!parsed) {
                    throw SpecError("unknown transform '" + t.get<std::string>() + "'");
                }
                m.transform_grid.push_back(*parsed);
            }
        }
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode != "bootstrap" && mode != "deterministic") {
                throw SpecError("unknown forecast mode '" + mode + "'");
            }
            m.mode = mode == "bootstrap" ? ForecastMode::bootstrap : ForecastMode::deterministic;
        }
        if (j.contains("features")) {
            m.features = parse_features(j.at("features"));
        }
    }
    if (std::find(model_ids().begin(), model_ids().end(), m.id) == model_ids().end()) {
        throw SpecError("unknown model '" + m.id + "'");
    }
    return m;
}

} // namespace

BenchmarkConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    try {
        check_keys(doc, {"datasets", "models", "holdouts", "scenarios", "seed", "quantiles",
                         "validation_fraction", "threads"},
                   "benchmark config");
        BenchmarkConfig c;
        for (const auto& d : doc.at("datasets")) {
            c.datasets.push_back(parse_dataset(d, base_dir));
        }
        for (const auto& m : doc.at("models")) {
            c.models.push_back(parse_model(m));
        }
        c.holdouts = get_or(doc, "holdouts", c.holdouts);
        c.scenarios = get_or(doc, "scenarios", c.scenarios);
        c.seed = get_or(doc, "seed", c.seed);
        c.quantiles = get_or(doc, "quantiles", c.quantiles);
        c.validation_fraction = get_or(doc, "validation_fraction", c.validation_fraction);
        c.threads = get_or(doc, "threads", c.threads);
        if (c.scenarios < 1) {
            throw SpecError("scenarios must be at least 1");
        }
        if (c.holdouts.empty()) {
            throw SpecError("at least one holdout is required");
        }
        if (!(c.validation_fraction > 0.0 && c.validation_fraction < 1.0)) {
            throw SpecError("validation_fraction must lie in (0, 1)");
        }
        for (double q : c.quantiles) {
            if (!(q > 0.0 && q < 1.0)) {
                throw SpecError("quantile levels must lie in (0, 1)");
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw SpecError(std::string("invalid benchmark config: ") + e.what());
    } catch (const std::logic_error& e) {
        throw SpecError(std::string("invalid benchmark config: ") + e.what());
    }
}

BenchmarkConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

BenchmarkConfig default_synthetic_config() {
    auto dataset = [](std::string name, Archetype archetype, std::size_t length, std::int64_t interval,
                      double noise, std::uint64_t seed) {
        DatasetSpec d;
        d.name = std::move(name);
        SynthSpec s;
        s.archetype = archetype;
        s.length = length;
        s.interval = interval;
        s.noise_scale = noise;
        s.seed = seed;
        d.source = s;
        d.interval = interval;
        return d;
    };
    BenchmarkConfig c;
    // 10 days at 1 min; the hourly cycle is the only seasonality.
    DatasetSpec levels = dataset("flow-levels", Archetype::noisy_levels, 14400, 60, 1.0, 11);
    levels.seasonal_period = 60;
    c.datasets.push_back(std::move(levels));
    // One year hourly: the 5000-point holdout becomes exactly half.
    DatasetSpec hourly = dataset("hourly-traffic", Archetype::daily_seasonal, 8760, 3600, 0.3, 12);
    hourly.holdout_overrides[5000] = 4380;
    c.datasets.push_back(std::move(hourly));
    c.datasets.push_back(dataset("growing-system", Archetype::growing_seasonal, 35040, 900, 0.3, 13));
    c.datasets.push_back(dataset("global-volume", Archetype::global_concentrated, 12960, 300, 1.0, 14));
    for (const auto& id : model_ids()) {
        ModelSpec m;
        m.id = id;
        c.models.push_back(std::move(m));
    }
    c.seed = 42;
    return c;
}

} // namespace tfc::bench
