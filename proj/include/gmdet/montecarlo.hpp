// Seeded Monte Carlo verification: sample-path generation, miss-probability
// estimation at fixed false-alarm size, and estimation of the empirical
// decay rate of the miss probability in the sample count.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmdet/field_model.hpp"
#include "gmdet/rng.hpp"

namespace gmdet {

enum class Hypothesis { h0, h1 };

/**
 * One measurement path.  Under h0 the samples are i.i.d. noise; under h1
 * the signal starts from its stationary law and evolves by the AR(1)
 * recursion, with independent noise added per sample.  A pure function of
 * (model, n, hypothesis, seed, trial).
 */
std::vector<double> generate_path(const SampledModel& model, int n,
                                  Hypothesis hypothesis, std::uint64_t seed,
                                  std::uint64_t trial = trial_key(Stream::path,
                                                                  0));

/// Miss-probability estimate with its calibration context.
struct MissEstimate {
    double p_miss;    ///< fraction of signal paths falling below threshold
    int n;            ///< samples per path
    long trials;      ///< signal-hypothesis trial count
    double std_error; ///< binomial standard error of p_miss
    double threshold; ///< calibrated log-likelihood-ratio threshold
    std::uint64_t seed;
};

/**
 * Calibrate the detector threshold on trials_h0 noise paths, then estimate
 * the miss probability over trials_h1 signal paths.  Requires
 * trials_h0 >= 100 / alpha and trials_h1 >= 1000.  Deterministic in the
 * seed, independent of worker count.
 */
MissEstimate estimate_miss(const SampledModel& model, int n, double alpha,
                           long trials_h0, long trials_h1, std::uint64_t seed);

/**
 * Decay rate of the miss probability fitted across sample counts.
 *
 * At fixed size the miss probability behaves like
 * exp(-K n + c1 sqrt(n) - ln(n)/2 + c0): the sqrt(n) term comes from the
 * threshold's central-limit drift and dominates plain two-parameter fits
 * at bench scale.  The fit therefore regresses
 * ln p_miss + ln(n)/2 on {n, sqrt(n), 1} and reports the coefficient of n
 * as the slope (an estimate of -K).  r_squared measures that regression;
 * log_pm keeps the raw ln p_miss values.
 */
struct SlopeEstimate {
    double slope;               ///< fitted coefficient of n, estimates -K
    std::vector<int> n_values;  ///< sample counts used
    std::vector<double> log_pm; ///< ln of each miss estimate
    double r_squared;           ///< fit quality in [0, 1]
};

/**
 * Estimate miss probabilities over the given sample counts (at least three,
 * all distinct) and fit the decay rate.  `trials` is the signal-trial count
 * per point; calibration uses max(trials, ceil(100/alpha)) noise paths.
 * A zero miss count aborts with ConvergenceError instructing a larger
 * trial budget, since ln 0 would poison the fit.
 */
SlopeEstimate estimate_slope(const SampledModel& model,
                             std::span<const int> n_values, double alpha,
                             long trials, std::uint64_t seed);

} // namespace gmdet
