#include "tfc/metrics.hpp"

#include "tfc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace tfc::eval {

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.empty() || actual.size() != predicted.size()) {
        throw SpecError("metric needs equal nonzero lengths, got " + std::to_string(actual.size()) +
                        " and " + std::to_string(predicted.size()));
    }
}

} // namespace

double r_squared(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    double mean = 0.0;
    for (double a : actual) {
        mean += a;
    }
    mean /= static_cast<double>(actual.size());
    double sse = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        const double d = actual[i] - mean;
        sse += e * e;
        sst += d * d;
    }
    if (sst == 0.0) {
        throw DegenerateTargetError("R^2 undefined: actual values have zero variance");
    }
    return 1.0 - sse / sst;
}

double log_r_squared(std::span<const double> actual, std::span<const double> predicted,
                     double epsilon, double log_base) {
    check_lengths(actual, predicted);
    if (!(epsilon > 0.0)) {
        throw SpecError("log clamp epsilon must be positive");
    }
    const double scale = 1.0 / std::log(log_base);
    auto to_log = [&](std::span<const double> v) {
        std::vector<double> out(v.size());
        std::transform(v.begin(), v.end(), out.begin(),
                       [&](double x) { return std::log(std::max(x, epsilon)) * scale; });
        return out;
    };
    return r_squared(to_log(actual), to_log(predicted));
}

} // namespace tfc::eval
