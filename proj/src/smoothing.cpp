#include "tfc/smoothing.hpp"

#include "tfc/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tfc::smoothing {

namespace {

constexpr double kLatticeStep = 0.05;
constexpr int kLatticePoints = 21; // 0, 0.05, ..., 1

double lattice(int i) { return i * kLatticeStep; }

void check_weight(const char* name, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw SpecError(std::string("smoothing weight ") + name + " must lie in [0, 1], got " +
                        std::to_string(w));
    }
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Hot loop of the grid search; mirrors update_state without allocations.
double sse_from(std::span<const double> values, Kind kind, const Params& p, State s) {
    double sse = 0.0;
    const std::size_t n = values.size();
    switch (kind) {
    case Kind::ses:
        for (std::size_t t = s.step_index; t < n; ++t) {
            const double e = values[t] - s.level;
            sse += e * e;
            s.level += p.alpha * e;
        }
        break;
    case Kind::holt:
        for (std::size_t t = s.step_index; t < n; ++t) {
            const double y = values[t];
            const double e = y - (s.level + s.trend);
            sse += e * e;
            const double level = p.alpha * y + (1.0 - p.alpha) * (s.level + s.trend);
            s.trend = p.beta * (level - s.level) + (1.0 - p.beta) * s.trend;
            s.level = level;
        }
        break;
    case Kind::holt_winters: {
        std::size_t phase = s.step_index % p.period;
        for (std::size_t t = s.step_index; t < n; ++t) {
            const double y = values[t];
            double& season = s.seasonals[phase];
            const double e = y - (s.level + s.trend + season);
            sse += e * e;
            const double level = p.alpha * (y - season) + (1.0 - p.alpha) * (s.level + s.trend);
            s.trend = p.beta * (level - s.level) + (1.0 - p.beta) * s.trend;
            season = p.gamma * (y - level) + (1.0 - p.gamma) * season;
            s.level = level;
            if (++phase == p.period) {
                phase = 0;
            }
        }
        break;
    }
    }
    return sse;
}

} // namespace

std::string_view to_string(Kind kind) noexcept {
    switch (kind) {
    case Kind::ses:
        return "ses";
    case Kind::holt:
        return "holt";
    case Kind::holt_winters:
        return "holt-winters";
    }
    return "unknown";
}

void validate(Kind kind, const Params& params) {
    check_weight("alpha", params.alpha);
    if (kind != Kind::ses) {
        check_weight("beta", params.beta);
    }
    if (kind == Kind::holt_winters) {
        check_weight("gamma", params.gamma);
        if (params.period < 2) {
            throw SpecError("holt-winters period must be at least 2");
        }
    }
}

std::size_t warm_up(Kind kind, const Params& params) {
    switch (kind) {
    case Kind::ses:
        return 1;
    case Kind::holt:
        return 2;
    case Kind::holt_winters:
        return params.period;
    }
    return 0;
}

std::size_t min_train_length(Kind kind, std::size_t period) {
    return kind == Kind::holt_winters ? 2 * period : 2;
}

State initial_state(Kind kind, const Params& params, std::span<const double> values) {
    const std::size_t needed = kind == Kind::holt_winters ? 2 * params.period : warm_up(kind, params);
    if (values.size() < needed) {
        throw InsufficientDataError(std::string(to_string(kind)) + " initialisation needs " +
                                    std::to_string(needed) + " values, got " +
                                    std::to_string(values.size()));
    }
    State s;
    switch (kind) {
    case Kind::ses:
        s.level = values[0];
        break;
    case Kind::holt:
        s.level = values[1];
        s.trend = values[1] - values[0];
        break;
    case Kind::holt_winters: {
        const std::size_t p = params.period;
        const double first = mean_of(values.subspan(0, p));
        const double second = mean_of(values.subspan(p, p));
        s.level = first;
        s.trend = (second - first) / static_cast<double>(p);
        s.seasonals.resize(p);
        for (std::size_t k = 0; k < p; ++k) {
            s.seasonals[k] = values[k] - first;
        }
        break;
    }
    }
    s.step_index = warm_up(kind, params);
    return s;
}

double predict_one(const State& state, Kind kind, const Params& params) {
    switch (kind) {
    case Kind::ses:
        return state.level;
    case Kind::holt:
        return state.level + state.trend;
    case Kind::holt_winters:
        return state.level + state.trend + state.seasonals[state.step_index % params.period];
    }
    return state.level;
}

State update_state(State state, Kind kind, const Params& params, double observed) {
    const double a = params.alpha;
    const double b = params.beta;
    switch (kind) {
    case Kind::ses:
        state.level = a * observed + (1.0 - a) * state.level;
        break;
    case Kind::holt: {
        const double level = a * observed + (1.0 - a) * (state.level + state.trend);
        state.trend = b * (level - state.level) + (1.0 - b) * state.trend;
        state.level = level;
        break;
    }
    case Kind::holt_winters: {
        double& season = state.seasonals[state.step_index % params.period];
        const double level = a * (observed - season) + (1.0 - a) * (state.level + state.trend);
        state.trend = b * (level - state.level) + (1.0 - b) * state.trend;
        season = params.gamma * (observed - level) + (1.0 - params.gamma) * season;
        state.level = level;
        break;
    }
    }
    ++state.step_index;
    return state;
}

std::vector<double> forecast_path(const State& state, Kind kind, const Params& params,
                                  std::size_t horizon) {
    std::vector<double> path(horizon);
    for (std::size_t h = 1; h <= horizon; ++h) {
        double y = state.level;
        if (kind != Kind::ses) {
            y += static_cast<double>(h) * state.trend;
        }
        if (kind == Kind::holt_winters) {
            y += state.seasonals[(state.step_index + h - 1) % params.period];
        }
        path[h - 1] = y;
    }
    return path;
}

double in_sample_sse(std::span<const double> values, Kind kind, const Params& params) {
    return sse_from(values, kind, params, initial_state(kind, params, values));
}

Fit fit(const TimeSeries& train, Kind kind, std::optional<Params> params, std::size_t period) {
    if (params) {
        period = params->period;
    }
    if (kind == Kind::holt_winters && period < 2) {
        throw SpecError("holt-winters needs a seasonal period of at least 2");
    }
    const std::size_t needed = min_train_length(kind, period);
    if (train.size() < needed) {
        throw InsufficientDataError(std::string(to_string(kind)) + " needs at least " +
                                    std::to_string(needed) + " training points, got " +
                                    std::to_string(train.size()));
    }
    const auto values = train.values();

    Params chosen;
    if (params) {
        chosen = *params;
        if (kind != Kind::holt_winters) {
            chosen.period = 0;
        }
        validate(kind, chosen);
    } else {
        chosen.period = kind == Kind::holt_winters ? period : 0;
        const int betas = kind == Kind::ses ? 1 : kLatticePoints;
        const int gammas = kind == Kind::holt_winters ? kLatticePoints : 1;
        // Initialisation does not depend on the weights.
        const State start = initial_state(kind, chosen, values);
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kLatticePoints; ++i) {
            for (int j = 0; j < betas; ++j) {
                for (int k = 0; k < gammas; ++k) {
                    Params candidate{lattice(i), kind == Kind::ses ? 0.0 : lattice(j),
                                     kind == Kind::holt_winters ? lattice(k) : 0.0, chosen.period};
                    const double sse = sse_from(values, kind, candidate, start);
                    if (sse < best) {
                        best = sse;
                        chosen = candidate;
                    }
                }
            }
        }
    }

    State state = initial_state(kind, chosen, values);
    for (std::size_t t = state.step_index; t < values.size(); ++t) {
        state = update_state(std::move(state), kind, chosen, values[t]);
    }
    return {chosen, std::move(state)};
}

} // namespace tfc::smoothing
