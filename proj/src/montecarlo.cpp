#include "gmdet/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gmdet/detector.hpp"
#include "gmdet/exponent.hpp"
#include "gmdet/parallel.hpp"

namespace gmdet {

std::vector<double> generate_path(const SampledModel& model, int n,
                                  Hypothesis hypothesis, std::uint64_t seed,
                                  std::uint64_t trial) {
    if (n < 1) throw std::domain_error("need at least one sample");
    std::vector<double> y(static_cast<std::size_t>(n));
    double sigma = std::sqrt(model.noise_var);
    // Step layout: 2i = process draw for sample i, 2i+1 = its sensor noise.
    // H0 consumes only the odd steps, so both hypotheses use the same
    // noise stream positions.
    if (hypothesis == Hypothesis::h0) {
        for (int i = 0; i < n; ++i)
            y[static_cast<std::size_t>(i)] =
                sigma *
                gaussian_draw(seed, trial, 2 * static_cast<std::uint64_t>(i) + 1);
        return y;
    }
    double a = model.correlation;
    double q_sd = std::sqrt(model.process_noise_var);
    double s = std::sqrt(model.signal_var) * gaussian_draw(seed, trial, 0);
    for (int i = 0; i < n; ++i) {
        auto step = 2 * static_cast<std::uint64_t>(i);
        y[static_cast<std::size_t>(i)] =
            s + sigma * gaussian_draw(seed, trial, step + 1);
        s = a * s + q_sd * gaussian_draw(seed, trial, step + 2);
    }
    return y;
}

MissEstimate estimate_miss(const SampledModel& model, int n, double alpha,
                           long trials_h0, long trials_h1,
                           std::uint64_t seed) {
    if (trials_h1 < 1000)
        throw std::domain_error("estimate_miss needs at least 1000 signal trials");
    if (model.correlation >= 1.0)
        throw std::domain_error(
            "estimate_miss requires correlation < 1; the perfectly "
            "correlated detector has a closed-form miss probability");
    double threshold = calibrate_threshold(model, n, alpha, trials_h0, seed);

    std::vector<unsigned char> missed(static_cast<std::size_t>(trials_h1));
    parallel_for(trials_h1, [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            auto y = generate_path(
                model, n, Hypothesis::h1, seed,
                trial_key(Stream::miss_trials, static_cast<std::uint64_t>(t)));
            missed[static_cast<std::size_t>(t)] =
                kalman_llr(y, model).llr < threshold ? 1 : 0;
        }
    });
    long count = 0;
    for (unsigned char m : missed) count += m;
    double p = static_cast<double>(count) / static_cast<double>(trials_h1);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials_h1));
    return MissEstimate{p, n, trials_h1, se, threshold, seed};
}

namespace {

// Least squares of y on {n, sqrt(n), 1} via the normal equations.
struct DecayFit {
    double slope;
    double r_squared;
};

DecayFit fit_decay(const std::vector<int>& ns, const std::vector<double>& y) {
    std::size_t m = ns.size();
    std::array<std::array<double, 3>, 3> g{};
    std::array<double, 3> b{};
    for (std::size_t i = 0; i < m; ++i) {
        std::array<double, 3> x{static_cast<double>(ns[i]),
                                std::sqrt(static_cast<double>(ns[i])), 1.0};
        for (int r = 0; r < 3; ++r) {
            b[r] += x[r] * y[i];
            for (int c = 0; c < 3; ++c) g[r][c] += x[r] * x[c];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    std::array<double, 3> beta{};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
        std::swap(g[col], g[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            double f = g[r][col] / g[col][col];
            for (int c = col; c < 3; ++c) g[r][c] -= f * g[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= g[r][c] * beta[c];
        beta[r] = s / g[r][r];
    }
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(m);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double pred = beta[0] * static_cast<double>(ns[i]) +
                      beta[1] * std::sqrt(static_cast<double>(ns[i])) + beta[2];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    return DecayFit{beta[0], std::clamp(r2, 0.0, 1.0)};
}

} // namespace

SlopeEstimate estimate_slope(const SampledModel& model,
                             std::span<const int> n_values, double alpha,
                             long trials, std::uint64_t seed) {
    std::set<int> distinct(n_values.begin(), n_values.end());
    if (distinct.size() < 3 || distinct.size() != n_values.size())
        throw std::domain_error(
            "estimate_slope needs at least three distinct sample counts");

    long trials_h0 =
        std::max(trials, static_cast<long>(std::ceil(100.0 / alpha)));
    SlopeEstimate out;
    out.n_values.assign(n_values.begin(), n_values.end());
    std::vector<double> corrected;
    for (int n : n_values) {
        auto est = estimate_miss(model, n, alpha, trials_h0, trials, seed);
        if (est.p_miss == 0.0)
            throw ConvergenceError(
                "no misses observed at n=" + std::to_string(n) +
                    "; increase the trial count to resolve the miss "
                    "probability",
                static_cast<double>(n));
        out.log_pm.push_back(std::log(est.p_miss));
        // Remove the ln(n)/2 prefactor; the sqrt(n) drift is a regressor.
        corrected.push_back(std::log(est.p_miss) +
                            0.5 * std::log(static_cast<double>(n)));
    }
    DecayFit fit = fit_decay(out.n_values, corrected);
    out.slope = fit.slope;
    out.r_squared = fit.r_squared;
    return out;
}

} // namespace gmdet
