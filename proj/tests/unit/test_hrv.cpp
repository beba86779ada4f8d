#include "oracles.hpp"

#include "wristml/error.hpp"
#include "wristml/features.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace wristml;

TEST(Hrv, HandExample) {
    // differences: 20, -40, 60
    const RRSeries rr{{800, 820, 780, 840}};
    EXPECT_NEAR(rmssd(rr), std::sqrt((400.0 + 1600.0 + 3600.0) / 3.0), 1e-12);
    const double mean = 40.0 / 3.0;
    const double var = ((20 - mean) * (20 - mean) + (-40 - mean) * (-40 - mean) + (60 - mean) * (60 - mean)) / 3.0;
    EXPECT_NEAR(sdsd(rr), std::sqrt(var), 1e-12);
    EXPECT_EQ(nn50(rr), 1u);
}

TEST(Hrv, ConstantSeriesIsZero) {
    const RRSeries rr{std::vector<double>(10, 750.0)};
    EXPECT_EQ(rmssd(rr), 0.0);
    EXPECT_EQ(sdsd(rr), 0.0);
    EXPECT_EQ(nn50(rr), 0u);
}

TEST(Hrv, Nn50BoundaryIsStrict) {
    EXPECT_EQ(nn50(RRSeries{{800, 850, 800}}), 0u);
    EXPECT_EQ(nn50(RRSeries{{800, 850.001, 800}}), 2u);
}

TEST(Hrv, MinimumLengths) {
    EXPECT_THROW(rmssd(RRSeries{{800}}), InsufficientDataError);
    EXPECT_NO_THROW(rmssd(RRSeries{{800, 810}}));
    EXPECT_THROW(sdsd(RRSeries{{800, 810}}), InsufficientDataError);
    EXPECT_NO_THROW(sdsd(RRSeries{{800, 810, 790}}));
    EXPECT_THROW(nn50(RRSeries{{}}), InsufficientDataError);
    EXPECT_THROW(hrv_features(RRSeries{{800, 810}}), InsufficientDataError);
    EXPECT_THROW(rmssd(RRSeries{{800, -1, 700}}), Error);
}

TEST(Hrv, MatchesBruteForceOracle) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> rr_ms(400.0, 1400.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> x(3 + rng() % 200);
        for (double& v : x)
            v = rr_ms(rng);
        const RRSeries rr{x};
        const auto f = hrv_features(rr);
        EXPECT_LE(oracle::rel_err(f.rmssd_ms, oracle::rmssd(x)), 1e-12);
        EXPECT_LE(oracle::rel_err(f.sdsd_ms, oracle::sdsd(x)), 1e-12);
        EXPECT_EQ(f.nn50, oracle::nn50(x));
        EXPECT_EQ(rmssd(rr), f.rmssd_ms);
        EXPECT_EQ(sdsd(rr), f.sdsd_ms);
        EXPECT_EQ(nn50(rr), f.nn50);
    }
}

TEST(Hrv, RmssdSquaredIsSdsdSquaredPlusMeanSquared) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> rr_ms(500.0, 1200.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(3 + rng() % 100);
        for (double& v : x)
            v = rr_ms(rng);
        const auto f = hrv_features(RRSeries{x});
        const double m = oracle::mean_diff(x);
        const double lhs = f.rmssd_ms * f.rmssd_ms;
        EXPECT_LE(std::fabs(lhs - (f.sdsd_ms * f.sdsd_ms + m * m)), 1e-10 * std::max(1.0, lhs));
    }
}

TEST(Hrv, ShiftInvariance) {
    const RRSeries a{{800, 830, 790, 870, 760}};
    RRSeries b = a;
    for (double& v : b.intervals_ms)
        v += 100.0;
    EXPECT_NEAR(rmssd(a), rmssd(b), 1e-12);
    EXPECT_NEAR(sdsd(a), sdsd(b), 1e-12);
    EXPECT_EQ(nn50(a), nn50(b));
}

}  // namespace
