#include "gmdet/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmdet/normal.hpp"
#include "gmdet/parallel.hpp"
#include "gmdet/rng.hpp"

namespace gmdet {

LlrBreakdown kalman_llr(std::span<const double> y, const SampledModel& model) {
    if (y.empty())
        throw std::domain_error("kalman_llr requires at least one sample");
    if (model.correlation >= 1.0)
        throw std::domain_error(
            "kalman_llr requires correlation < 1; use the perfectly "
            "correlated detector at one");

    double a = model.correlation;
    double q = model.process_noise_var;
    double s2 = model.noise_var;

    LlrBreakdown out;
    out.n = static_cast<int>(y.size());
    out.innovations.reserve(y.size());
    out.innovation_vars.reserve(y.size());

    // One-step predictor from the stationary prior: zero estimate,
    // prediction variance equal to the signal variance.
    double estimate = 0.0;
    double pred_var = model.signal_var;
    double llr = 0.0;
    for (double yi : y) {
        double re = pred_var + s2;
        double e = yi - estimate;
        llr += 0.5 * std::log(s2 / re) + yi * yi / (2.0 * s2) -
               e * e / (2.0 * re);
        out.innovations.push_back(e);
        out.innovation_vars.push_back(re);
        double gain = pred_var / re;
        estimate = a * (estimate + gain * e);
        pred_var = a * a * pred_var * s2 / re + q;
    }
    out.llr = llr;
    return out;
}

namespace {

// H0 path trial -> log-likelihood ratio, drawing i.i.d. noise from the
// given stream.  Step indices mirror generate_path's noise positions so
// calibration and held-out draws stay disjoint by stream alone.
double h0_llr(const SampledModel& model, int n, std::uint64_t seed,
              std::uint64_t trial) {
    double sigma = std::sqrt(model.noise_var);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] =
            sigma * gaussian_draw(seed, trial, 2 * static_cast<std::uint64_t>(i) + 1);
    return kalman_llr(y, model).llr;
}

} // namespace

double calibrate_threshold(const SampledModel& model, int n, double alpha,
                           long trials, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    if (n < 1) throw std::domain_error("need at least one sample");
    if (static_cast<double>(trials) < 100.0 / alpha)
        throw std::domain_error(
            "too few calibration trials for the requested size: need at "
            "least 100/alpha");

    std::vector<double> llrs(static_cast<std::size_t>(trials));
    parallel_for(trials, [&](long begin, long end) {
        for (long t = begin; t < end; ++t)
            llrs[static_cast<std::size_t>(t)] =
                h0_llr(model, n, seed,
                       trial_key(Stream::calibration,
                                 static_cast<std::uint64_t>(t)));
    });
    std::sort(llrs.begin(), llrs.end());
    // (1 - alpha)-quantile, linear interpolation between order statistics.
    double pos = (1.0 - alpha) * static_cast<double>(trials - 1);
    auto lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= llrs.size()) return llrs.back();
    return llrs[lo] + frac * (llrs[lo + 1] - llrs[lo]);
}

double false_alarm_rate(const SampledModel& model, int n, double threshold,
                        long trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("need at least one trial");
    std::vector<unsigned char> alarm(static_cast<std::size_t>(trials));
    parallel_for(trials, [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            double llr = h0_llr(
                model, n, seed,
                trial_key(Stream::holdout, static_cast<std::uint64_t>(t)));
            alarm[static_cast<std::size_t>(t)] = llr >= threshold ? 1 : 0;
        }
    });
    long count = 0;
    for (unsigned char d : alarm) count += d;
    return static_cast<double>(count) / static_cast<double>(trials);
}

bool PerfectCorrDetector::decide(std::span<const double> y) const {
    double sum = 0.0;
    for (double yi : y) sum += yi;
    return std::fabs(sum) >= threshold;
}

PerfectCorrDetector make_perfect_corr_detector(double noise_var, int n,
                                               double alpha) {
    if (!(noise_var > 0.0))
        throw std::domain_error("noise variance must be positive");
    if (n < 1) throw std::domain_error("need at least one sample");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    double z = std::sqrt(static_cast<double>(n) * noise_var) *
               normal_tail_inv(alpha / 2.0);
    return PerfectCorrDetector{alpha, n, z};
}

double perfect_corr_miss(double signal_var, double noise_var, int n,
                         double alpha) {
    if (!(signal_var > 0.0) || !(noise_var > 0.0))
        throw std::domain_error("variances must be positive");
    if (n < 1) throw std::domain_error("need at least one sample");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    double nn = static_cast<double>(n);
    double z = std::sqrt(nn * noise_var) * normal_tail_inv(alpha / 2.0);
    double sd1 = std::sqrt(nn * nn * signal_var + nn * noise_var);
    return 1.0 - 2.0 * normal_tail(z / sd1);
}

} // namespace gmdet
