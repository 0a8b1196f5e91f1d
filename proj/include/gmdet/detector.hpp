// Neyman-Pearson detection of the sampled field: exact log-likelihood
// ratio through the Kalman innovation representation for correlation
// below one, the sum detector with closed-form miss probability at
// correlation one, and Monte Carlo threshold calibration to a fixed size.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmdet/field_model.hpp"

namespace gmdet {

/**
 * Log-likelihood ratio of a measurement sequence together with the
 * innovation sequence that produced it.  The innovation variances start
 * at signal_var + noise_var and decrease monotonically toward the
 * steady-state value.
 */
struct LlrBreakdown {
    double llr;                          ///< ln p1(y) - ln p0(y), nats
    std::vector<double> innovations;     ///< one-step prediction errors
    std::vector<double> innovation_vars; ///< their time-varying variances
    int n;                               ///< sample count
};

/**
 * Exact log-likelihood ratio via the Kalman one-step predictor, started
 * from the stationary prior (zero estimate, prediction variance equal to
 * the signal variance).  Requires correlation < 1 (the filter is
 * degenerate at one; use the perfectly correlated detector instead) and a
 * non-empty sequence.
 */
LlrBreakdown kalman_llr(std::span<const double> y, const SampledModel& model);

/**
 * Empirical (1 - alpha)-quantile of the log-likelihood ratio under H0,
 * estimated over `trials` noise-only paths with linear interpolation
 * between order statistics.  Deterministic in (model, n, alpha, seed),
 * independent of worker count.  Requires trials >= 100 / alpha.
 */
double calibrate_threshold(const SampledModel& model, int n, double alpha,
                           long trials, std::uint64_t seed);

/// Fraction of fresh held-out H0 paths whose ratio reaches the threshold;
/// used to validate that the calibrated detector holds its size.
double false_alarm_rate(const SampledModel& model, int n, double threshold,
                        long trials, std::uint64_t seed);

/// Sum detector for the perfectly correlated field: decide signal present
/// when |sum of measurements| reaches the threshold.
struct PerfectCorrDetector {
    double alpha;     ///< detector size
    int n;            ///< sample count
    double threshold; ///< sqrt(n * noise_var) * Qinv(alpha / 2)

    bool decide(std::span<const double> y) const;
};

PerfectCorrDetector make_perfect_corr_detector(double noise_var, int n,
                                               double alpha);

/**
 * Closed-form miss probability of the perfectly correlated sum detector:
 *
 *   1 - 2 Q( sqrt(n) sigma Qinv(alpha/2) / sqrt(n^2 signal_var + n noise_var) )
 *
 * which vanishes only like n^{-1/2}: the one regime where the miss
 * probability does not decay exponentially.
 */
double perfect_corr_miss(double signal_var, double noise_var, int n,
                         double alpha);

} // namespace gmdet
