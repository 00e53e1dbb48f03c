#include "tfc/error.hpp"
#include "tfc/series.hpp"

#include <doctest.h>

#include <random>

using namespace tfc;

namespace {

TimeSeries uniform(std::size_t n, std::int64_t interval = 3600, Timestamp start = 0) {
    std::vector<Timestamp> ts(n);
    std::vector<double> vs(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = start + static_cast<Timestamp>(i) * interval;
        vs[i] = static_cast<double>(i % 17) * 0.5 - 3.0;
    }
    return TimeSeries(ts, vs, interval);
}

// Strictly increasing timestamps with jittered, sometimes missing, slots.
TimeSeries irregular(std::mt19937_64& rng, std::size_t n, std::int64_t interval) {
    std::uniform_int_distribution<int> skip(0, 3);
    std::uniform_int_distribution<std::int64_t> jitter(-interval / 4, interval / 4);
    std::normal_distribution<double> value(10.0, 3.0);
    std::vector<Timestamp> ts;
    std::vector<double> vs;
    Timestamp slot = 1000;
    for (std::size_t i = 0; i < n; ++i) {
        ts.push_back(ts.empty() ? slot : slot + jitter(rng));
        vs.push_back(value(rng));
        slot += interval * (1 + (skip(rng) == 0 ? 1 : 0));
    }
    return TimeSeries(ts, vs, interval);
}

} // namespace

TEST_CASE("time series invariants are enforced") {
    CHECK_THROWS_AS(TimeSeries({}, {}, 60), SpecError);
    CHECK_THROWS_AS(TimeSeries({0, 60}, {1.0}, 60), SpecError);
    CHECK_THROWS_AS(TimeSeries({0, 0}, {1.0, 2.0}, 60), SpecError);
    CHECK_THROWS_AS(TimeSeries({0, 60}, {1.0, std::nan("")}, 60), SpecError);
    CHECK_THROWS_AS(TimeSeries({0, 60}, {1.0, INFINITY}, 60), SpecError);
    CHECK(TimeSeries({5}, {1.0}).interval() == 1);
    CHECK(TimeSeries({0, 120, 180}, {1.0, 2.0, 3.0}).interval() == 60);
}

TEST_CASE("split_holdout") {
    SUBCASE("exactly half of a year of hourly points") {
        const auto split = split_holdout(uniform(8760), 4380);
        CHECK(split.train.size() == 4380);
        CHECK(split.test.size() == 4380);
    }
    SUBCASE("minimal split") {
        const auto split = split_holdout(uniform(2), 1);
        CHECK(split.train.size() == 1);
        CHECK(split.test.size() == 1);
    }
    SUBCASE("index arithmetic at the boundary") {
        const auto s = uniform(6000, 300, 1'420'070'400);
        const auto split = split_holdout(s, 1000);
        CHECK(split.train.size() == 5000);
        CHECK(split.train.back_time() + s.interval() == split.test.front_time());
        CHECK(split.test.back_time() == s.back_time());
        CHECK(split.train.values()[4999] == s.values()[4999]);
        CHECK(split.test.values()[0] == s.values()[5000]);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(split_holdout(uniform(10), 0), InvalidSplitError);
        CHECK_THROWS_AS(split_holdout(uniform(10), 10), InvalidSplitError);
        CHECK_THROWS_AS(split_holdout(uniform(1), 1), InvalidSplitError);
    }
}

TEST_CASE("split then concatenate is the identity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = irregular(rng, 2 + static_cast<std::size_t>(rng() % 60), 60);
        for (std::size_t n_test = 1; n_test < s.size(); ++n_test) {
            const auto split = split_holdout(s, n_test);
            CHECK(split.train.back_time() < split.test.front_time());
            const auto joined = concatenate(split.train, split.test);
            REQUIRE(joined.size() == s.size());
            CHECK(std::equal(joined.timestamps().begin(), joined.timestamps().end(), s.timestamps().begin()));
            CHECK(std::equal(joined.values().begin(), joined.values().end(), s.values().begin()));
        }
    }
}

TEST_CASE("regularize") {
    SUBCASE("uniform series is a fixpoint of every policy") {
        const auto s = uniform(50, 60);
        for (auto policy : {GapPolicy::forward_fill, GapPolicy::linear_interpolate, GapPolicy::error}) {
            CHECK(regularize(s, 60, policy) == s);
        }
    }
    SUBCASE("linear interpolation fills a gap") {
        const TimeSeries s({0, 60, 180}, {1.0, 2.0, 4.0});
        const auto r = regularize(s, 60, GapPolicy::linear_interpolate);
        CHECK(std::vector<Timestamp>(r.timestamps().begin(), r.timestamps().end()) ==
              std::vector<Timestamp>{0, 60, 120, 180});
        CHECK(std::vector<double>(r.values().begin(), r.values().end()) ==
              std::vector<double>{1.0, 2.0, 3.0, 4.0});
        CHECK(r.is_regular());
    }
    SUBCASE("forward fill repeats the previous slot") {
        const TimeSeries s({0, 60, 240}, {1.0, 2.0, 5.0});
        const auto r = regularize(s, 60, GapPolicy::forward_fill);
        CHECK(std::vector<double>(r.values().begin(), r.values().end()) ==
              std::vector<double>{1.0, 2.0, 2.0, 2.0, 5.0});
    }
    SUBCASE("error policy names the missing timestamp") {
        const TimeSeries s({0, 120}, {1.0, 2.0});
        try {
            regularize(s, 60, GapPolicy::error);
            FAIL("expected a gap error");
        } catch (const GapError& e) {
            CHECK(e.missing_timestamp() == 60);
        }
    }
    SUBCASE("two points on one slot are ambiguous") {
        const TimeSeries s({0, 10, 60}, {1.0, 2.0, 3.0});
        CHECK_THROWS_AS(regularize(s, 60), AmbiguityError);
    }
    SUBCASE("off-grid points snap to the nearest slot") {
        const TimeSeries s({0, 70, 115}, {1.0, 2.0, 3.0});
        const auto r = regularize(s, 60);
        CHECK(std::vector<Timestamp>(r.timestamps().begin(), r.timestamps().end()) ==
              std::vector<Timestamp>{0, 60, 120});
        CHECK(r.values()[1] == 2.0);
    }
    SUBCASE("non-positive interval") {
        CHECK_THROWS_AS(regularize(uniform(3), 0), SpecError);
    }
}

TEST_CASE("regularize is idempotent and keeps on-grid values") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = irregular(rng, 3 + static_cast<std::size_t>(rng() % 80), 300);
        for (auto policy : {GapPolicy::forward_fill, GapPolicy::linear_interpolate}) {
            const auto once = regularize(s, 300, policy);
            CHECK(once.is_regular());
            CHECK(regularize(once, 300, policy) == once);
            for (std::size_t i = 0; i < s.size(); ++i) {
                const auto offset = s.timestamps()[i] - s.front_time();
                if (offset % 300 == 0) {
                    CHECK(once.values()[static_cast<std::size_t>(offset / 300)] == s.values()[i]);
                }
            }
        }
    }
}
