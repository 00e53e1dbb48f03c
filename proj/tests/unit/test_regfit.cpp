#include "tfc/error.hpp"
#include "tfc/features.hpp"
#include "tfc/regression.hpp"
#include "tfc/ridge.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace tfc;
using namespace tfc::regfit;

namespace {

constexpr Timestamp kMonday = 1420416000; // 2015-01-05 00:00 UTC
constexpr std::int64_t kDay = 86400;

TimeSeries make_series(Timestamp start, std::int64_t interval, const std::vector<double>& values) {
    std::vector<Timestamp> ts(values.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = start + static_cast<Timestamp>(i) * interval;
    }
    return TimeSeries(ts, values, interval);
}

TimeFeatureConfig only(bool trend, bool hour, bool dow) {
    TimeFeatureConfig c;
    c.trend = trend;
    c.hour_of_day = hour;
    c.day_of_week = dow;
    return c;
}

double sse(const Eigen::MatrixXd& x, std::span<const double> y, const RidgeSolution& s) {
    double total = 0;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        double p = s.intercept;
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            p += s.weights[static_cast<std::size_t>(c)] * x(r, c);
        }
        total += (y[static_cast<std::size_t>(r)] - p) * (y[static_cast<std::size_t>(r)] - p);
    }
    return total;
}

std::vector<double> in_sample(const RegressionModel& m, const TimeSeries& s) {
    return std_predict(m, s.timestamps());
}

} // namespace

TEST_CASE("day-of-week one-hot at Monday midnight") {
    const auto f = build_features(kMonday, only(false, false, true), TrendScale{});
    CHECK_FALSE(f.trend.has_value());
    REQUIRE(f.one_hot.size() == 7);
    CHECK(f.one_hot == std::vector<double>{1, 0, 0, 0, 0, 0, 0});
    // Sunday is the last level.
    CHECK(build_features(kMonday - kDay, only(false, false, true), TrendScale{}).one_hot[6] == 1.0);
}

TEST_CASE("trend endpoints over the training span") {
    const auto train = make_series(kMonday, 3600, std::vector<double>(100, 1.0));
    const auto scale = TrendScale::over(train);
    const auto cfg = only(true, false, false);
    CHECK(*build_features(train.front_time(), cfg, scale).trend == 0.0);
    CHECK(*build_features(train.back_time(), cfg, scale).trend == 1.0);
}

TEST_CASE("13:00 with hour and weekday groups") {
    const auto f = build_features(kMonday + 13 * 3600, only(false, true, true), TrendScale{});
    CHECK(f.one_hot.size() == 31);
    CHECK(std::count(f.one_hot.begin(), f.one_hot.end(), 1.0) == 2);
    CHECK(std::count(f.one_hot.begin(), f.one_hot.end(), 0.0) == 29);
    CHECK(f.one_hot[13] == 1.0);
    CHECK(f.one_hot[24] == 1.0);
    CHECK(feature_width(only(true, true, true), 3) == 1 + 31 + 3);
}

TEST_CASE("autoregression window arity") {
    const TimeFeatureConfig cfg = only(false, true, false);
    const std::vector<double> w{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(build_features(kMonday, cfg, TrendScale{}, 2, w), ArityError);
    CHECK_THROWS_AS(build_features(kMonday, cfg, TrendScale{}, 3), ArityError);
    const auto f = build_features(kMonday, cfg, TrendScale{}, 3, w);
    CHECK(f.ar == w);
    const auto flat = f.flatten();
    CHECK(flat.size() == 27);
    CHECK(flat[24] == 1.0);
    CHECK(flat[26] == 3.0);

    std::vector<double> row(27);
    write_features(kMonday, cfg, TrendScale{}, w, row);
    CHECK(row == flat);
}

TEST_CASE("one-hot completeness over random epochs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<Timestamp> epoch(0, 4102444800); // through 2100
    TimeFeatureConfig cfg;
    cfg.month_of_year = true;
    cfg.is_holiday = true;
    cfg.holidays = {16436, 16801};
    for (int i = 0; i < 5000; ++i) {
        const Timestamp t = epoch(rng);
        const auto f = build_features(t, cfg, TrendScale{});
        REQUIRE(f.one_hot.size() == 24 + 7 + 12 + 2);
        const auto count = [&](std::size_t from, std::size_t n) {
            return std::count(f.one_hot.begin() + static_cast<std::ptrdiff_t>(from),
                              f.one_hot.begin() + static_cast<std::ptrdiff_t>(from + n), 1.0);
        };
        CHECK(count(0, 24) == 1);
        CHECK(count(24, 7) == 1);
        CHECK(count(31, 12) == 1);
        CHECK(count(43, 2) == 1);
        CHECK(std::accumulate(f.one_hot.begin(), f.one_hot.end(), 0.0) == 4.0);
        // Hour oracle from plain modular arithmetic.
        CHECK(f.one_hot[static_cast<std::size_t>((t % kDay) / 3600)] == 1.0);
        // 1970-01-01 was a Thursday (index 3 from Monday).
        CHECK(f.one_hot[24 + static_cast<std::size_t>((t / kDay + 3) % 7)] == 1.0);
        const auto active = active_levels(t, cfg);
        REQUIRE(active.count == 4);
        for (std::size_t g = 0; g < 4; ++g) {
            CHECK(f.one_hot[active.columns[g]] == 1.0);
        }
    }
}

TEST_CASE("holiday flag and month levels") {
    TimeFeatureConfig cfg = only(false, false, false);
    cfg.month_of_year = true;
    cfg.is_holiday = true;
    cfg.holidays = {16436}; // 2015-01-01
    const auto newyear = build_features(1420070400 + 5 * 3600, cfg, TrendScale{});
    CHECK(newyear.one_hot == std::vector<double>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    const auto later = build_features(1420070400 + 40 * kDay, cfg, TrendScale{});
    CHECK(later.one_hot[1] == 1.0);  // February
    CHECK(later.one_hot[12] == 1.0); // not a holiday
}

TEST_CASE("ridge closed form on three points") {
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 2;
    const std::vector<double> y{1, 3, 5};
    const auto s = ridge_solve(x, y, 0.0);
    CHECK(s.weights[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sse(x, y, s) < 1e-20);
}

TEST_CASE("ridge penalty limit") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd x(40, 3);
    std::vector<double> y(40);
    for (int r = 0; r < 40; ++r) {
        for (int c = 0; c < 3; ++c) {
            x(r, c) = g(rng);
        }
        y[static_cast<std::size_t>(r)] = 5 + x(r, 0) - 2 * x(r, 2) + 0.1 * g(rng);
    }
    const auto s = ridge_solve(x, y, 1e12);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 40.0;
    CHECK(std::abs(s.intercept - mean) < 1e-6);
    for (double w : s.weights) {
        CHECK(std::abs(w) < 1e-9);
    }
}

TEST_CASE("ridge singular design at zero lambda") {
    Eigen::MatrixXd x(5, 2);
    x << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
    const std::vector<double> y{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(ridge_solve(x, y, 0.0), SingularSystemError);
    CHECK_NOTHROW(ridge_solve(x, y, 1e-3));
    CHECK_THROWS_AS(ridge_solve(x, y, -1.0), SpecError);
}

TEST_CASE("in-sample SSE is non-decreasing in lambda") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd x(60, 6);
        std::vector<double> y(60);
        for (int r = 0; r < 60; ++r) {
            for (int c = 0; c < 6; ++c) {
                x(r, c) = g(rng);
            }
            y[static_cast<std::size_t>(r)] = x(r, 0) + 0.5 * x(r, 3) + g(rng);
        }
        double previous = -1.0;
        for (double lambda : {0.0, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e6}) {
            const double value = sse(x, y, ridge_solve(x, y, lambda));
            CHECK(value >= previous - 1e-9);
            previous = value;
        }
    }
}

TEST_CASE("STD exact fit on a line and extrapolation") {
    // Hourly steps so t counts intervals; y = 2t + 3.
    std::vector<double> y(100);
    for (std::size_t t = 0; t < y.size(); ++t) {
        y[t] = 2.0 * static_cast<double>(t) + 3.0;
    }
    const auto train = make_series(0, 3600, y);
    const auto cfg = only(true, false, false);
    for (double lambda : {0.0, kDefaultLambda}) {
        const auto model = std_fit(train, cfg, lambda);
        const auto fitted = in_sample(model, train);
        for (std::size_t t = 0; t < y.size(); ++t) {
            CHECK(std::abs(fitted[t] - y[t]) <= (lambda == 0.0 ? 1e-9 : 1e-3));
        }
    }
    const auto exact = std_fit(train, cfg, 0.0);
    const std::vector<Timestamp> future{100 * 3600};
    CHECK(std::abs(std_predict(exact, future)[0] - 203.0) <= 1e-6);
    CHECK(std_predict(exact, future) == std_predict(exact, future));
}

TEST_CASE("STD exact fit on a weekly pattern") {
    const std::vector<double> week{3, 8, 1, 9, 4, 7, 2};
    std::vector<double> y(70);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = week[i % 7];
    }
    const auto train = make_series(kMonday, kDay, y);
    const auto model = std_fit(train, only(false, false, true));
    const auto fitted = in_sample(model, train);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(std::abs(fitted[i] - y[i]) <= 1e-6);
    }
}

TEST_CASE("STD recovers trend plus weekly pattern under noise") {
    const std::vector<double> week{3, 8, 1, 9, 4, 7, 2};
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::vector<double> y(84);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.05 * static_cast<double>(i) + week[i % 7] + noise(rng);
    }
    const auto all = make_series(kMonday, kDay, y);
    const auto split = split_holdout(all, 14);
    const auto model = std_fit(split.train, only(true, false, true));
    const auto pred = std_predict(model, split.test.timestamps());
    const auto actual = split.test.values();
    const double mean = std::accumulate(actual.begin(), actual.end(), 0.0) / 14.0;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < 14; ++i) {
        ss_res += (actual[i] - pred[i]) * (actual[i] - pred[i]);
        ss_tot += (actual[i] - mean) * (actual[i] - mean);
    }
    CHECK(1.0 - ss_res / ss_tot >= 0.95);
}

TEST_CASE("STD shift equivariance") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(24 * 21);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 10 + std::sin(static_cast<double>(i) * 0.26) + g(rng);
    }
    auto shifted = y;
    for (double& v : shifted) {
        v += 250.0;
    }
    const auto a = make_series(kMonday, 3600, y);
    const auto b = make_series(kMonday, 3600, shifted);
    TimeFeatureConfig cfg;
    const auto ma = std_fit(a, cfg, 1e-2);
    const auto mb = std_fit(b, cfg, 1e-2);
    const auto pa = in_sample(ma, a);
    const auto pb = in_sample(mb, b);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(std::abs(pb[i] - pa[i] - 250.0) < 1e-8);
    }
}

TEST_CASE("STAR recovers an AR(1) coefficient") {
    std::vector<double> y(60);
    y[0] = 100.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        y[t] = 0.9 * y[t - 1];
    }
    const auto train = make_series(kMonday, 3600, y);
    const auto model = star_fit(train, only(false, false, false), 1);
    REQUIRE(model.weights().size() == 1);
    CHECK(std::abs(model.weights()[0] - 0.9) <= 1e-3);
    const std::vector<double> window{10.0};
    CHECK(std::abs(star_predict_one(model, kMonday, window) - 9.0) <= 0.05);
    CHECK(star_predict_one(model, kMonday, window) == star_predict_one(model, kMonday, window));
    CHECK_THROWS_AS(star_predict_one(model, kMonday, std::vector<double>{}), ArityError);
}

TEST_CASE("STAR with zero lag weights reduces to STD") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(24 * 14);
    for (double& v : y) {
        v = 5 + g(rng);
    }
    const auto train = make_series(kMonday, 3600, y);
    TimeFeatureConfig cfg;
    const auto std_model = std_fit(train, cfg);
    auto weights = std::vector<double>(std_model.weights().begin(), std_model.weights().end());
    weights.insert(weights.end(), {0.0, 0.0, 0.0});
    const RegressionModel star(RegressionKind::autoregressive, weights, std_model.intercept(),
                               std_model.lambda(), cfg, 3, Transform::identity, std_model.scale());
    const std::vector<double> window{100.0, -4.0, 7.0};
    for (Timestamp t = kMonday; t < kMonday + 14 * kDay; t += 3600 * 5) {
        const std::vector<Timestamp> at{t};
        CHECK(star_predict_one(star, t, window) == doctest::Approx(std_predict(std_model, at)[0]).epsilon(1e-12));
    }

    // aw = 0 through the joint fit is the STD model itself.
    CHECK(fit_regression(train, cfg, 0) == std_model);
    CHECK_THROWS_AS(star_fit(train, cfg, 0), SpecError);
}

TEST_CASE("zero weights give the intercept regardless of window") {
    const RegressionModel m(RegressionKind::autoregressive, {0.0, 0.0}, 4.5, 0.0,
                            only(false, false, false), 2, Transform::identity, TrendScale{});
    CHECK(star_predict_one(m, 0, std::vector<double>{1e6, -3.0}) == 4.5);
    CHECK(star_predict_one(m, 99999, std::vector<double>{0.0, 0.0}) == 4.5);
}

TEST_CASE("STAR constant fixpoint") {
    const auto train = make_series(kMonday, 3600, std::vector<double>(24 * 10, 42.0));
    const auto model = star_fit(train, TimeFeatureConfig{}, 24);
    const std::vector<double> window(24, 42.0);
    CHECK(std::abs(star_predict_one(model, train.back_time() + 3600, window) - 42.0) <= 1e-6);
}

TEST_CASE("log1p transform round-trips a multiplicative pattern") {
    std::vector<double> y(24 * 14);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = std::expm1(2.0 + 0.5 * static_cast<double>(i % 24 == 12));
    }
    const auto train = make_series(kMonday, 3600, y);
    const auto model = std_fit(train, only(false, true, false), 0.0, Transform::log1p);
    const auto fitted = in_sample(model, train);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(fitted[i] == doctest::Approx(y[i]).epsilon(1e-9));
    }
    CHECK(parse_transform("log1p") == Transform::log1p);
    CHECK(to_string(Transform::identity) == "identity");
    CHECK_FALSE(parse_transform("sqrt").has_value());
}

TEST_CASE("fits are deterministic") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(24 * 20);
    for (double& v : y) {
        v = 3 + g(rng);
    }
    const auto train = make_series(kMonday, 3600, y);
    for (std::size_t aw : {0U, 4U, 12U}) {
        for (Transform tr : {Transform::identity, Transform::log1p}) {
            const auto a = fit_regression(train, TimeFeatureConfig{}, aw, 1e-2, tr);
            const auto b = fit_regression(train, TimeFeatureConfig{}, aw, 1e-2, tr);
            CHECK(a == b);
        }
    }
}

TEST_CASE("insufficient rows") {
    const auto tiny = make_series(kMonday, 3600, std::vector<double>(20, 1.0));
    CHECK_THROWS_AS(std_fit(tiny, TimeFeatureConfig{}), InsufficientDataError);
    const auto ok = make_series(kMonday, 3600, std::vector<double>(40, 1.0));
    CHECK_NOTHROW(std_fit(ok, TimeFeatureConfig{}));
    CHECK_THROWS_AS(star_fit(ok, TimeFeatureConfig{}, 24), InsufficientDataError);
}

TEST_CASE("default feature groups follow the training span") {
    const auto short_span = make_series(kMonday, 3600, std::vector<double>(24 * 30, 1.0));
    const auto long_span = make_series(kMonday, 3600, std::vector<double>(24 * 61, 1.0));
    CHECK_FALSE(default_feature_config(short_span).month_of_year);
    CHECK(default_feature_config(long_span).month_of_year);
    CHECK(default_feature_config(long_span).hour_of_day);
    CHECK(default_feature_config(long_span).day_of_week);
    CHECK_FALSE(default_feature_config(long_span).is_holiday);
}
