#include "tfc/cli.hpp"

#include "tfc/benchmark.hpp"
#include "tfc/dataset.hpp"
#include "tfc/error.hpp"
#include "tfc/forecaster.hpp"
#include "tfc/generator.hpp"
#include "tfc/report.hpp"
#include "tfc/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace tfc::cli {

namespace {

/// Flag values that parse but make no sense together.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) {
        s += (s.empty() ? "" : ", ") + i;
    }
    return s;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot open output file '" + path + "'");
    }
    file << text;
    if (!file.flush()) {
        throw Error("failed writing output file '" + path + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open input file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quantile_label(double q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "q%g", q);
    return buf;
}

struct ForecastOptions {
    std::string input;
    std::string output = "-";
    std::string model;
    std::size_t horizon = 0;
    std::size_t scenarios = generator::kDefaultScenarios;
    std::uint64_t seed = 0;
    std::vector<double> quantiles{generator::kDefaultQuantiles.begin(), generator::kDefaultQuantiles.end()};
    std::string timestamp_column = "timestamp";
    std::string value_column = "value";
    std::int64_t interval = 0;
    std::size_t period = 0;
    std::optional<double> alpha, beta, gamma;
    std::size_t aw = 24;
    double lambda = regfit::kDefaultLambda;
    std::string transform = "identity";
    std::string mode = "auto";
    unsigned threads = 1;
};

int cmd_forecast(const ForecastOptions& o, std::ostream& out) {
    for (double q : o.quantiles) {
        if (!(q > 0.0 && q < 1.0)) {
            throw UsageError("quantile levels must lie in (0, 1)");
        }
    }
    if (o.horizon < 1 || o.scenarios < 1) {
        throw UsageError("--horizon and --scenarios must be at least 1");
    }
    bench::DatasetSpec spec;
    spec.name = o.input;
    spec.source = std::filesystem::path(o.input);
    spec.timestamp_column = o.timestamp_column;
    spec.value_column = o.value_column;
    spec.interval = o.interval;
    const TimeSeries train = bench::load_dataset(spec);

    std::unique_ptr<generator::SteppableForecaster> forecaster;
    const bool smoothing_model = bench::is_smoothing_model(o.model);
    if (smoothing_model) {
        const smoothing::Kind kind = o.model == "ses"    ? smoothing::Kind::ses
                                     : o.model == "holt" ? smoothing::Kind::holt
                                                         : smoothing::Kind::holt_winters;
        const std::size_t period = o.period > 0 ? o.period : bench::seasonal_period_of(spec, train);
        std::optional<smoothing::Params> params;
        if (o.alpha || o.beta || o.gamma) {
            params = smoothing::Params{o.alpha.value_or(0.5), o.beta.value_or(0.0), o.gamma.value_or(0.0),
                                       kind == smoothing::Kind::holt_winters ? period : 0};
            try {
                smoothing::validate(kind, *params);
            } catch (const SpecError& e) {
                throw UsageError(e.what());
            }
        }
        forecaster = generator::make_forecaster(kind, smoothing::fit(train, kind, params, period));
    } else {
        const auto transform = regfit::parse_transform(o.transform);
        const std::size_t aw = o.model == "star" ? o.aw : 0;
        if (o.model == "star" && aw == 0) {
            throw UsageError("--aw must be at least 1 for star");
        }
        forecaster = generator::make_forecaster(
            regfit::fit_regression(train, regfit::default_feature_config(train), aw, o.lambda, *transform),
            train);
    }

    const bool deterministic = o.mode == "deterministic" || (o.mode == "auto" && smoothing_model);
    const auto dist = deterministic
                          ? generator::generate_deterministic(*forecaster, o.horizon)
                          : generator::generate(*forecaster, generator::compute_residuals(*forecaster, train),
                                                o.horizon, o.scenarios, o.seed, o.threads);
    const auto result = generator::reduce(dist, o.quantiles);

    std::string text = "timestamp,point";
    for (const auto& [q, _] : result.bands) {
        text += ',' + quantile_label(q);
    }
    text += '\n';
    for (std::size_t h = 0; h < o.horizon; ++h) {
        const Timestamp t = train.back_time() + static_cast<Timestamp>(h + 1) * train.interval();
        text += bench::format_timestamp(t) + ',' + number(result.point[h]);
        for (const auto& [q, band] : result.bands) {
            text += ',' + number(band[h]);
        }
        text += '\n';
    }
    write_output(o.output, text, out);
    return kSuccess;
}

struct BenchOptions {
    std::string config;
    bool default_synthetic = false;
    std::string format = "table";
    std::string output = "-";
    std::optional<unsigned> threads;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    bench::BenchmarkConfig config =
        o.default_synthetic ? bench::default_synthetic_config() : bench::load_config(o.config);
    if (o.threads) {
        config.threads = *o.threads;
    }
    const auto report = bench::run_benchmark(config);
    write_output(o.output, bench::render_report(report, *bench::parse_report_format(o.format)), out);
    return kSuccess;
}

struct SynthOptions {
    std::string archetype;
    SynthSpec spec;
    std::string output = "-";
};

int cmd_synth(SynthOptions o, std::ostream& out) {
    o.spec.archetype = *parse_archetype(o.archetype);
    try {
        validate(o.spec);
    } catch (const SpecError& e) {
        throw UsageError(e.what());
    }
    std::ostringstream text;
    bench::write_series_csv(text, synth(o.spec));
    write_output(o.output, text.str(), out);
    return kSuccess;
}

struct ReportOptions {
    std::string input;
    std::string format = "table";
    std::string output = "-";
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
    const auto report = bench::parse_report_json_lines(read_file(o.input));
    write_output(o.output, bench::render_report(report, *bench::parse_report_format(o.format)), out);
    return kSuccess;
}

const std::vector<std::string> kFormats{"table", "aligned-table", "csv", "comma-separated", "jsonl",
                                        "json-lines"};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Telemetry forecasting models and benchmark harness", "tfc"};
    app.require_subcommand(1, 1);

    std::function<int()> action;

    ForecastOptions fo;
    auto* forecast = app.add_subcommand("forecast", "Fit a model and write a probabilistic forecast");
    forecast->add_option("--input,-i", fo.input, "Input series (timestamp,value with header)")->required();
    forecast->add_option("--model,-m", fo.model, "Model: " + join(bench::model_ids()))
        ->required()
        ->check(CLI::IsMember(bench::model_ids()));
    forecast->add_option("--horizon", fo.horizon, "Steps to forecast")->required();
    forecast->add_option("--scenarios", fo.scenarios, "Bootstrap scenarios")->capture_default_str();
    forecast->add_option("--seed", fo.seed, "Bootstrap seed")->capture_default_str();
    forecast->add_option("--quantiles", fo.quantiles, "Quantile levels in (0,1)")->delimiter(',');
    forecast->add_option("--output,-o", fo.output, "Output file, '-' for stdout")->capture_default_str();
    forecast->add_option("--timestamp-column", fo.timestamp_column)->capture_default_str();
    forecast->add_option("--value-column", fo.value_column)->capture_default_str();
    forecast->add_option("--interval", fo.interval, "Resampling interval in seconds (0: input's own)");
    forecast->add_option("--period", fo.period, "Holt-Winters period in samples (0: one day)");
    forecast->add_option("--alpha", fo.alpha, "Fixed level weight (skips the grid search)");
    forecast->add_option("--beta", fo.beta, "Fixed trend weight");
    forecast->add_option("--gamma", fo.gamma, "Fixed seasonal weight");
    forecast->add_option("--aw", fo.aw, "STAR autoregression window")->capture_default_str();
    forecast->add_option("--lambda", fo.lambda, "Ridge penalty")->capture_default_str();
    forecast->add_option("--transform", fo.transform)
        ->check(CLI::IsMember({"identity", "log1p"}))
        ->capture_default_str();
    forecast->add_option("--mode", fo.mode, "auto, bootstrap or deterministic")
        ->check(CLI::IsMember({"auto", "bootstrap", "deterministic"}))
        ->capture_default_str();
    forecast->add_option("--threads", fo.threads, "Scenario worker threads")->capture_default_str();
    forecast->callback([&] { action = [&] { return cmd_forecast(fo, out); }; });

    BenchOptions bo;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark configuration");
    auto* config_opt = bench_cmd->add_option("--config,-c", bo.config, "Benchmark configuration (JSON)");
    auto* default_opt = bench_cmd->add_flag("--default-synthetic", bo.default_synthetic,
                                            "Use the built-in synthetic configuration");
    config_opt->excludes(default_opt);
    bench_cmd->add_option("--format,-f", bo.format)->check(CLI::IsMember(kFormats))->capture_default_str();
    bench_cmd->add_option("--output,-o", bo.output)->capture_default_str();
    bench_cmd->add_option("--threads", bo.threads, "Concurrent rows (0: hardware)");
    bench_cmd->callback([&] {
        if (!bo.default_synthetic && bo.config.empty()) {
            throw CLI::RequiredError("--config or --default-synthetic");
        }
        action = [&] { return cmd_bench(bo, out); };
    });

    SynthOptions so;
    std::vector<std::string> archetypes;
    for (auto a : {Archetype::noisy_levels, Archetype::daily_seasonal, Archetype::growing_seasonal,
                   Archetype::global_concentrated}) {
        archetypes.emplace_back(to_string(a));
    }
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic telemetry series");
    synth_cmd->add_option("--archetype,-a", so.archetype)->required()->check(CLI::IsMember(archetypes));
    synth_cmd->add_option("--length,-n", so.spec.length)->capture_default_str();
    synth_cmd->add_option("--interval", so.spec.interval)->capture_default_str();
    synth_cmd->add_option("--noise-scale", so.spec.noise_scale)->capture_default_str();
    synth_cmd->add_option("--seed", so.spec.seed)->capture_default_str();
    synth_cmd->add_option("--start", so.spec.start, "First timestamp, epoch seconds")->capture_default_str();
    synth_cmd->add_option("--hourly-amplitude", so.spec.hourly_amplitude)->capture_default_str();
    synth_cmd->add_option("--output,-o", so.output)->capture_default_str();
    synth_cmd->callback([&] { action = [&] { return cmd_synth(so, out); }; });

    ReportOptions ro;
    auto* report_cmd = app.add_subcommand("report", "Re-render a json-lines benchmark report");
    report_cmd->add_option("--input,-i", ro.input)->required();
    report_cmd->add_option("--format,-f", ro.format)->check(CLI::IsMember(kFormats))->capture_default_str();
    report_cmd->add_option("--output,-o", ro.output)->capture_default_str();
    report_cmd->callback([&] { action = [&] { return cmd_report(ro, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << '\n';
        if (std::string_view(e.what()).find("--model") != std::string_view::npos) {
            err << "valid models: " << join(bench::model_ids()) << '\n';
        }
        err << "run with --help for usage\n";
        return kUsageError;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
}

} // namespace tfc::cli
