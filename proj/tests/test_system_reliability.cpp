#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbm/errors.hpp"
#include "cbm/simulator.hpp"
#include "cbm/system_reliability.hpp"
#include "fixtures.hpp"

using namespace cbm;

namespace {

// Largest |F_hat - F| over the sample quantiles j / points; F_hat is checked on
// both sides of each jump.
double quantile_grid_ks(const std::vector<double>& sorted, const std::function<double(double)>& cdf, int points) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (int j = 1; j < points; ++j) {
        const std::size_t i = static_cast<std::size_t>(n * j / points);
        const double t = sorted[i];
        if (!std::isfinite(t)) break;
        const double f = cdf(t);
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        const auto upto = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        d = std::max({d, std::abs(f - below / n), std::abs(f - upto / n)});
    }
    return d;
}

std::vector<double> first_passage_sample(const SystemModel& m, const ThresholdVector& th, double horizon, long n,
                                         std::uint64_t seed) {
    std::vector<double> times(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(j));
        times[j] = simulate_first_passage(m, th, horizon, horizon * 0x1p-30, rng);
    }
    std::sort(times.begin(), times.end());
    return times;
}

}  // namespace

TEST(SeriesSurvival, Examples) {
    const auto m = test::table2();
    EXPECT_EQ(series_survival(m, 0.0, critical_thresholds(m)), 1.0);
    EXPECT_EQ(failure_time_cdf(m, 0.0), 0.0);

    SystemModel single{{test::table2_comp12()}, 2.5e-5};
    for (double t : {0.001, 0.02, 0.3}) {
        const double expected = event_probabilities(single.components[0], single.lambda, t, 0.00125).safe;
        EXPECT_NEAR(series_survival(single, t, critical_thresholds(single)), expected, 1e-14);
    }

    RandomStream rng(3);
    SystemModel no_shocks = test::random_system(rng, 3);
    no_shocks.lambda = 0.0;
    for (double t : {0.5, 2.0, 7.0}) {
        double product = 1.0;
        for (const auto& c : no_shocks.components) product *= pure_degradation_cdf(c, c.h1, t);
        EXPECT_NEAR(series_survival(no_shocks, t, critical_thresholds(no_shocks)), product, 1e-12);
    }
}

TEST(SeriesSurvival, RejectsBadThresholds) {
    const auto m = test::table2();
    EXPECT_THROW(series_survival(m, 1.0, ThresholdVector{{0.001}}), DomainError);
    EXPECT_THROW(series_survival(m, 1.0, ThresholdVector{{0.001, 0.001, 0.002, 0.001}}), DomainError);
    EXPECT_THROW(series_survival(m, -1.0, critical_thresholds(m)), DomainError);
    try {
        validate_thresholds(m, ThresholdVector{{0.001, 0.001, 0.002, 0.001}});
        ADD_FAILURE() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("h2[2] > h1[2]"), std::string::npos);
    }
}

TEST(DetectionTimeCdf, Examples) {
    const auto m = test::table2();
    for (double t : {0.0, 0.01, 0.1, 2.0}) {
        EXPECT_EQ(detection_time_cdf(m, t, critical_thresholds(m)), failure_time_cdf(m, t));
    }
    const ThresholdVector zero{{0.0, 0.0, 0.0, 0.0}};
    for (double t : {1e-6, 0.5, 100.0}) EXPECT_EQ(detection_time_cdf(m, t, zero), 1.0);
}

TEST(ReliabilityCurve, Examples) {
    const auto m = test::table2();
    const auto curve = reliability_curve(m, {0.0}, critical_thresholds(m));
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_EQ(curve[0].first, 0.0);
    EXPECT_EQ(curve[0].second, 1.0);
    EXPECT_THROW(reliability_curve(m, {0.0, 2.0, 1.0}, critical_thresholds(m)), DomainError);
}

TEST(SeriesSurvival, MonotoneInTimeAndThresholds) {
    RandomStream rng(17);
    for (int s = 0; s < 3; ++s) {
        const auto m = test::random_system(rng, 3);
        for (double frac : {0.3, 0.6, 1.0}) {
            const auto th = test::scaled_thresholds(m, frac);
            double previous = 1.0;
            for (int j = 0; j <= 10; ++j) {
                const double t = 0.8 * j;
                const double r = series_survival(m, t, th);
                EXPECT_GE(r, 0.0);
                EXPECT_LE(r, previous + 1e-10);
                if (frac < 1.0) EXPECT_LE(r, series_survival(m, t, test::scaled_thresholds(m, frac + 0.2)) + 1e-10);
                previous = r;
            }
        }
    }
}

TEST(SeriesSurvival, FailureBelowDetectionAndSeriesBelowComponents) {
    RandomStream rng(18);
    for (int s = 0; s < 3; ++s) {
        const auto m = test::random_system(rng, 4);
        const auto h2 = test::scaled_thresholds(m, 0.5);
        for (int j = 1; j <= 10; ++j) {
            const double t = 0.6 * j;
            EXPECT_LE(failure_time_cdf(m, t), detection_time_cdf(m, t, h2) + 1e-10);

            ThresholdVector wider = h2;
            wider.values[1] = m.components[1].h1;
            EXPECT_LE(detection_time_cdf(m, t, wider), detection_time_cdf(m, t, h2) + 1e-10);

            const double r = series_survival(m, t, critical_thresholds(m));
            for (const auto& c : m.components) {
                SystemModel alone{{c}, m.lambda};
                EXPECT_LE(r, series_survival(alone, t, critical_thresholds(alone)) + 1e-10);
            }
        }
    }
}

TEST(FailureTimeCdf, MatchesSimulatedFirstPassageTable2) {
    const auto m = test::table2();
    const auto sample = first_passage_sample(m, critical_thresholds(m), 120.0, 1000000, 2024);
    const double ks = quantile_grid_ks(sample, [&](double t) { return failure_time_cdf(m, t); }, 400);
    EXPECT_LT(ks, 0.005);
}

TEST(DetectionTimeCdf, MatchesSimulationAtReferencePolicy) {
    const auto m = test::table2();
    const ThresholdVector h2{{0.0003055, 0.0003055, 0.0002728, 0.0002728}};
    const double t = 44.7129;
    const long n = 100000;
    const auto sample = first_passage_sample(m, h2, t, n, 7);
    const double p_hat = static_cast<double>(std::upper_bound(sample.begin(), sample.end(), t) - sample.begin()) / n;
    const double p = detection_time_cdf(m, t, h2);
    const double se = std::sqrt(std::max(p_hat * (1 - p_hat), 1.0 / n) / n);
    EXPECT_LE(std::abs(p - p_hat), 3.0 * se);

    // Same check at a time where detection is still uncertain.
    const double early = 0.004;
    const auto sample_early = first_passage_sample(m, h2, early, n, 8);
    const double q_hat =
        static_cast<double>(std::upper_bound(sample_early.begin(), sample_early.end(), early) - sample_early.begin()) /
        n;
    const double q = detection_time_cdf(m, early, h2);
    EXPECT_LE(std::abs(q - q_hat), 3.0 * std::sqrt(q_hat * (1 - q_hat) / n));
}
