#include <cmath>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "gmdet/detector.hpp"
#include "gmdet/exponent.hpp"
#include "gmdet/montecarlo.hpp"

using namespace gmdet;

namespace {

SampledModel model(double a, double pi0 = 1.0, double s2 = 1.0) {
    return SampledModel::from_correlation(a, pi0, s2);
}

} // namespace

TEST_CASE("paths are reproducible and hypothesis-shaped") {
    auto m = model(0.5, 1.0, 1.0);
    auto y1 = generate_path(m, 64, Hypothesis::h1, 7);
    auto y2 = generate_path(m, 64, Hypothesis::h1, 7);
    CHECK(y1 == y2);
    auto other_trial =
        generate_path(m, 64, Hypothesis::h1, 7, trial_key(Stream::path, 1));
    CHECK(y1 != other_trial);
    auto h0 = generate_path(m, 64, Hypothesis::h0, 7);
    CHECK(y1 != h0);
}

TEST_CASE("perfectly correlated paths carry one signal draw") {
    auto m = model(1.0, 4.0, 1e-18);
    auto y = generate_path(m, 32, Hypothesis::h1, 3);
    // with (almost) no noise every sample equals the frozen signal
    for (double v : y) CHECK(v == doctest::Approx(y[0]).epsilon(1e-6));
}

TEST_CASE("i.i.d. path variance matches signal plus noise power") {
    auto m = model(0.0, 2.0, 1.0);
    const int n = 200000;
    auto y = generate_path(m, n, Hypothesis::h1, 5);
    double sumsq = 0.0;
    for (double v : y) sumsq += v * v;
    double var = sumsq / n;
    // chi-square concentration: sd of the estimate ~ sqrt(2/n)*power
    double se = std::sqrt(2.0 / n) * 3.0;
    CHECK(std::fabs(var - 3.0) < 3.0 * se);
}

TEST_CASE("signal component shows the modeled lag-one correlation") {
    const double a = 0.5;
    auto m = model(a, 1.0, 1e-18); // negligible noise isolates the signal
    const int n = 1000000;
    auto y = generate_path(m, n, Hypothesis::h1, 9);
    double xy = 0.0, xx = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        xy += y[i] * y[i + 1];
        xx += y[i] * y[i];
    }
    double rho = xy / xx;
    // standard error of the AR(1) lag-one estimate
    double se = std::sqrt((1.0 - a * a) / n);
    CHECK(std::fabs(rho - a) < 3.0 * se);
}

TEST_CASE("indistinguishable hypotheses miss at the coin-flip rate") {
    // vanishing SNR at size 1/2: the detector cannot beat chance
    auto m = model(0.0, 1e-12, 1.0);
    auto est = estimate_miss(m, 1, 0.5, 4000, 4000, 13);
    CHECK(std::fabs(est.p_miss - 0.5) < 4.0 * est.std_error);
    CHECK(est.std_error ==
          doctest::Approx(std::sqrt(est.p_miss * (1.0 - est.p_miss) /
                                    static_cast<double>(est.trials))));
}

TEST_CASE("miss estimates are deterministic and size-valid") {
    auto m = model(0.5, 10.0, 1.0);
    auto e1 = estimate_miss(m, 10, 0.01, 20000, 5000, 17);
    auto e2 = estimate_miss(m, 10, 0.01, 20000, 5000, 17);
    CHECK(e1.p_miss == e2.p_miss);
    CHECK(e1.threshold == e2.threshold);
    // held-out false alarm within three standard errors of alpha; the
    // calibrated threshold carries sampling noise of its own, so the
    // comparison variance sums both contributions
    double fa = false_alarm_rate(m, 10, e1.threshold, 20000, 17);
    double se = std::sqrt(0.01 * 0.99 * (1.0 / 20000.0 + 1.0 / 20000.0));
    CHECK(std::fabs(fa - 0.01) < 3.0 * se);
    CHECK_THROWS_AS(estimate_miss(m, 10, 0.01, 20000, 100, 17),
                    std::domain_error);
    CHECK_THROWS_AS(estimate_miss(model(1.0), 10, 0.01, 20000, 5000, 17),
                    std::domain_error);
}

TEST_CASE("determinism is independent of the worker count") {
    auto m = model(0.3, 2.0, 1.0);
    setenv("GMDET_THREADS", "1", 1);
    auto serial = estimate_miss(m, 8, 0.01, 15000, 4000, 23);
    setenv("GMDET_THREADS", "4", 1);
    auto parallel = estimate_miss(m, 8, 0.01, 15000, 4000, 23);
    unsetenv("GMDET_THREADS");
    CHECK(serial.p_miss == parallel.p_miss);
    CHECK(serial.threshold == parallel.threshold);
}

TEST_CASE("zero observed misses abort with guidance") {
    // overwhelming SNR: no misses at this trial budget
    auto m = model(0.0, 1e6, 1.0);
    std::vector<int> ns{2, 3, 4};
    CHECK_THROWS_AS(estimate_slope(m, ns, 0.5, 1000, 1), ConvergenceError);
    try {
        estimate_slope(m, ns, 0.5, 1000, 1);
    } catch (const ConvergenceError& e) {
        CHECK(std::string(e.what()).find("trial count") != std::string::npos);
    }
}

TEST_CASE("slope estimation rejects thin grids") {
    auto m = model(0.5);
    std::vector<int> two{5, 10};
    CHECK_THROWS_AS(estimate_slope(m, two, 0.1, 2000, 1), std::domain_error);
    std::vector<int> dup{5, 10, 10};
    CHECK_THROWS_AS(estimate_slope(m, dup, 0.1, 2000, 1), std::domain_error);
}

TEST_CASE("fitted decay rate tracks the theoretical exponent") {
    // moderate-scale version of the consistency study: high SNR, both an
    // independent and a correlated signal
    for (double a : {0.0, 0.5}) {
        auto m = model(a, 10.0, 1.0);
        double k = error_exponent(m).exponent;
        std::vector<int> ns{2, 4, 6, 8, 10, 12, 14, 16};
        auto fit = estimate_slope(m, ns, 1e-3, 100000, 29);
        CHECK(-fit.slope > 0.8 * k);
        CHECK(-fit.slope < 1.2 * k);
        CHECK(fit.r_squared > 0.99);
        CHECK(fit.log_pm.size() == ns.size());
        // raw miss probabilities decrease with n
        for (std::size_t i = 0; i + 1 < fit.log_pm.size(); ++i)
            CHECK(fit.log_pm[i + 1] < fit.log_pm[i]);
    }
}

TEST_CASE("low SNR stays hard even near the optimal correlation") {
    // -3 dB at the optimal correlation: two hundred sensors still miss
    // more than once per hundred
    double snr = std::pow(10.0, -0.3);
    auto m = model(0.78, snr, 1.0);
    auto est = estimate_miss(m, 200, 1e-3, 100000, 20000, 41);
    CHECK(est.p_miss > 1e-2);
}

TEST_CASE("fitted decay rate at unit SNR") {
    for (double a : {0.0, 0.5}) {
        auto m = model(a, 1.0, 1.0);
        double k = error_exponent(m).exponent;
        std::vector<int> ns{25, 50, 75, 100, 125, 150};
        auto fit = estimate_slope(m, ns, 1e-3, 200000, 31);
        CHECK(-fit.slope > 0.8 * k);
        CHECK(-fit.slope < 1.2 * k);
    }
}

TEST_CASE("slope estimates are reproducible") {
    auto m = model(0.4, 4.0, 1.0);
    std::vector<int> ns{4, 8, 12};
    auto f1 = estimate_slope(m, ns, 0.01, 20000, 37);
    auto f2 = estimate_slope(m, ns, 0.01, 20000, 37);
    CHECK(f1.slope == f2.slope);
    CHECK(f1.log_pm == f2.log_pm);
    CHECK(f1.r_squared == f2.r_squared);
}
