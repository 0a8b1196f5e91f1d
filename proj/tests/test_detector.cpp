#include <cmath>
#include <vector>

#include <doctest.h>

#include "dense_llr_oracle.hpp"
#include "gmdet/detector.hpp"
#include "gmdet/exponent.hpp"
#include "gmdet/montecarlo.hpp"
#include "gmdet/rng.hpp"

using namespace gmdet;

namespace {

SampledModel model(double a, double pi0 = 1.0, double s2 = 1.0) {
    return SampledModel::from_correlation(a, pi0, s2);
}

} // namespace

TEST_CASE("single-sample ratio is the two-gaussian density ratio") {
    for (double y1 : {-2.0, -0.3, 0.0, 0.7, 3.1}) {
        std::vector<double> y{y1};
        auto b = kalman_llr(y, model(0.0));
        double expected =
            0.5 * std::log(0.5) + y1 * y1 / 2.0 - y1 * y1 / 4.0;
        CHECK(b.llr == doctest::Approx(expected).epsilon(1e-14));
        CHECK(b.n == 1);
        CHECK(b.innovations.size() == 1);
        CHECK(b.innovation_vars.size() == 1);
        CHECK(b.innovations[0] == y1);
        // the first innovation variance is the full marginal variance
        CHECK(kalman_llr(y, model(0.7)).innovation_vars[0] ==
              doctest::Approx(2.0));
    }
}

TEST_CASE("independent samples factorize the ratio") {
    auto m = model(0.0, 2.5, 0.7);
    std::vector<double> y;
    double sum = 0.0;
    for (int i = 0; i < 9; ++i) {
        double yi = gaussian_draw(3, 0, static_cast<std::uint64_t>(i));
        y.push_back(yi);
        sum += kalman_llr(std::vector<double>{yi}, m).llr;
    }
    CHECK(kalman_llr(y, m).llr == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("kalman ratio equals the dense-covariance ratio") {
    for (double a : {0.0, 0.3, 0.7, 0.95}) {
        auto m = model(a, 1.7, 0.9);
        for (int n = 1; n <= 8; ++n) {
            for (int rep = 0; rep < 25; ++rep) {
                std::vector<double> y(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i)
                    y[static_cast<std::size_t>(i)] = 1.5 * gaussian_draw(
                        17, static_cast<std::uint64_t>(100 * n + rep),
                        static_cast<std::uint64_t>(i));
                double got = kalman_llr(y, m).llr;
                double want = gmdet_test::dense_covariance_llr(y, m);
                CHECK(got ==
                      doctest::Approx(want).epsilon(1e-9).scale(
                          std::max(1.0, std::fabs(want))));
            }
        }
    }
}

TEST_CASE("kalman ratio rejects degenerate inputs") {
    CHECK_THROWS_AS(kalman_llr(std::vector<double>{}, model(0.5)),
                    std::domain_error);
    CHECK_THROWS_AS(kalman_llr(std::vector<double>{1.0}, model(1.0)),
                    std::domain_error);
}

TEST_CASE("innovation variances decrease to the steady state") {
    std::vector<double> zeros(240, 0.0);
    for (double a : {0.3, 0.7, 0.9, 0.99}) {
        for (double snr : {0.5, 1.0, 2.0, 10.0}) {
            auto m = model(a, snr, 1.0);
            auto vars = kalman_llr(zeros, m).innovation_vars;
            double steady = innovation_variances(m).under_h1;
            for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
                CHECK(vars[i + 1] <= vars[i] + 1e-15);
                CHECK(vars[i] >= m.noise_var);
                CHECK(vars[i] >= steady - 1e-12);
            }
            CHECK(std::fabs(vars[200] - steady) < 1e-10);
        }
    }
}

TEST_CASE("normalized ratio under noise converges to minus the exponent") {
    auto m = model(0.6, 1.0, 1.0);
    double k = error_exponent(m).exponent;
    const int n = 2000, trials = 500;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto y = generate_path(m, n, Hypothesis::h0, 21,
                               trial_key(Stream::path, static_cast<std::uint64_t>(t)));
        double v = kalman_llr(y, m).llr / n;
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / trials;
    double sd = std::sqrt(sumsq / trials - mean * mean);
    // three standard errors plus a small transient allowance
    CHECK(std::fabs(mean + k) < 3.0 * sd / std::sqrt(1.0 * trials) + 0.02 * k);
}

TEST_CASE("threshold calibration is deterministic and monotone in the size") {
    auto m = model(0.4);
    double t1 = calibrate_threshold(m, 12, 0.01, 20000, 5);
    double t2 = calibrate_threshold(m, 12, 0.01, 20000, 5);
    CHECK(t1 == t2);
    // a near-one size alarms almost always: its threshold sits far below
    // the ones for small sizes
    double loose = calibrate_threshold(m, 12, 0.999, 100000, 5);
    double tight = calibrate_threshold(m, 12, 0.001, 100000, 5);
    CHECK(loose < t1);
    CHECK(loose < tight);
    CHECK_THROWS_AS(calibrate_threshold(m, 12, 0.001, 500, 5),
                    std::domain_error);
}

TEST_CASE("median threshold matches the analytic quantile") {
    // alpha = 1/2, i.i.d., single sample: the ratio is a monotone map of a
    // chi-square variable, so its median is the map of the chi-square
    // median 0.4549364231195727519
    double expected = 0.5 * std::log(0.5) + 0.45493642311957275194 / 4.0;
    double got = calibrate_threshold(model(0.0), 1, 0.5, 200000, 9);
    // sample-median standard error at this trial count is ~6e-4
    CHECK(std::fabs(got - expected) < 0.005);
}

TEST_CASE("calibrated detector holds its size out of sample") {
    auto m = model(0.5, 2.0, 1.0);
    for (double alpha : {0.05, 0.01}) {
        double thr = calibrate_threshold(m, 16, alpha, 50000, 0);
        double fa = false_alarm_rate(m, 16, thr, 50000, 0);
        // calibration noise and holdout noise both enter the comparison
        double se =
            std::sqrt(alpha * (1.0 - alpha) * (1.0 / 50000.0 + 1.0 / 50000.0));
        CHECK(std::fabs(fa - alpha) < 3.0 * se);
    }
}

TEST_CASE("perfectly correlated detector: closed-form anchors") {
    // frozen from 60-digit evaluation of the tail expression, alpha = 1e-3
    CHECK(perfect_corr_miss(1.0, 1.0, 10, 1e-3) ==
          doctest::Approx(0.67886644180683869282).epsilon(1e-12));
    CHECK(perfect_corr_miss(1.0, 1.0, 100, 1e-3) ==
          doctest::Approx(0.25664949172694377806).epsilon(1e-12));
    CHECK(perfect_corr_miss(1.0, 1.0, 1000, 1e-3) ==
          doctest::Approx(0.08283351064136106334).epsilon(1e-12));
    // alpha = 0.05, one sample
    CHECK(perfect_corr_miss(1.0, 1.0, 1, 0.05) ==
          doctest::Approx(0.83422372710429607313).epsilon(1e-12));
    // unbounded signal variance is always detected
    CHECK(perfect_corr_miss(1e12, 1.0, 4, 0.05) < 1e-5);
}

TEST_CASE("perfectly correlated miss follows the square-root law") {
    // p(4n)/p(n) -> 1/2 on the closed form
    double r = perfect_corr_miss(1.0, 1.0, 400000000, 1e-3) /
               perfect_corr_miss(1.0, 1.0, 100000000, 1e-3);
    CHECK(r == doctest::Approx(0.5).epsilon(1e-6));
    // sqrt(n) * p stays bounded and settles to a constant
    double c1 = std::sqrt(1e6) * perfect_corr_miss(1.0, 1.0, 1000000, 1e-3);
    double c2 = std::sqrt(4e6) * perfect_corr_miss(1.0, 1.0, 4000000, 1e-3);
    CHECK(c1 > 0.0);
    CHECK(c2 == doctest::Approx(c1).epsilon(1e-3));
}

TEST_CASE("sum detector matches its closed-form miss rate on simulated data") {
    const int n = 50;
    const long trials = 40000;
    auto m = model(1.0, 1.0, 1.0);
    auto det = make_perfect_corr_detector(1.0, n, 1e-3);
    CHECK(det.threshold > 0.0);
    long miss = 0;
    for (long t = 0; t < trials; ++t) {
        auto y = generate_path(m, n, Hypothesis::h1, 31,
                               trial_key(Stream::path, static_cast<std::uint64_t>(t)));
        if (!det.decide(y)) ++miss;
    }
    double p = static_cast<double>(miss) / trials;
    double want = perfect_corr_miss(1.0, 1.0, n, 1e-3);
    double se = std::sqrt(want * (1.0 - want) / trials);
    CHECK(std::fabs(p - want) < 3.0 * se);
}
