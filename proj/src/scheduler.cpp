#include "gmdet/scheduler.hpp"

#include <cmath>
#include <iostream>
#include <vector>

#include "gmdet/exponent.hpp"

namespace gmdet {

namespace {

constexpr double kBracketLo = 1e-6;
constexpr double kBracketHi = 1.0 - 1e-6;

double exponent_at(double a, double snr) {
    return error_exponent(SampledModel::from_correlation(a, snr, 1.0))
        .exponent;
}

// Bisect one sign change of the residual down to interval width tol.
double bisect(double lo, double hi, double snr, double tol) {
    double flo = optimality_residual(lo, snr);
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fmid = optimality_residual(mid, snr);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double optimality_residual(double correlation, double snr) {
    // The exponent depends on (signal_var, noise_var) only through their
    // ratio, so evaluate the normalized model directly.
    auto model = SampledModel::from_correlation(correlation, snr, 1.0);
    double re = innovation_variances(model).under_h1; // already noise-normalized
    double a2 = correlation * correlation;
    double lhs = 1.0 + a2 + snr * (1.0 - a2);
    return lhs * lhs - 2.0 * (re + a2 * a2 / re);
}

double optimal_correlation(double snr, double tol) {
    if (!(snr > 0.0))
        throw std::domain_error("optimal_correlation requires positive SNR");
    if (snr >= 1.0)
        throw std::domain_error(
            "no interior optimum: above unit SNR the exponent is maximized "
            "as the correlation goes to zero");
    if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");

    // Coarse scan for sign changes.  One is expected; a residual with
    // several would still yield the exponent-maximizing root.
    constexpr int kScan = 512;
    std::vector<std::pair<double, double>> brackets;
    double prev_a = kBracketLo;
    double prev_f = optimality_residual(prev_a, snr);
    for (int i = 1; i <= kScan; ++i) {
        double a = kBracketLo + (kBracketHi - kBracketLo) * i / kScan;
        double f = optimality_residual(a, snr);
        if ((prev_f <= 0.0) != (f <= 0.0)) brackets.emplace_back(prev_a, a);
        prev_a = a;
        prev_f = f;
    }
    if (brackets.empty())
        throw ConvergenceError("no sign change of the optimality residual",
                               snr);
    if (brackets.size() > 1)
        std::cerr << "optimal_correlation: " << brackets.size()
                  << " residual sign changes at snr=" << snr
                  << "; taking the exponent-maximizing root\n";
    double best_a = 0.0;
    double best_k = -1.0;
    for (auto [lo, hi] : brackets) {
        double root = bisect(lo, hi, snr, tol);
        double k = exponent_at(root, snr);
        if (k > best_k) {
            best_k = k;
            best_a = root;
        }
    }
    return best_a;
}

double optimal_spacing(double drift, double snr, double tol) {
    if (!(drift > 0.0))
        throw std::domain_error("optimal_spacing requires a positive drift");
    return -std::log(optimal_correlation(snr, tol)) / drift;
}

SchedulePlan make_plan(const DiffusionField& field) {
    double snr = field.snr();
    if (snr > 1.0) return SchedulePlan{SnrRegime::high_snr, {}, {}, {}};
    if (snr == 1.0) return SchedulePlan{SnrRegime::boundary, {}, {}, {}};
    SchedulePlan plan{SnrRegime::low_snr, {}, {}, {}};
    double a = optimal_correlation(snr);
    plan.correlation = a;
    plan.exponent_at_optimum = exponent_at(a, snr);
    if (field.drift > 0.0) plan.spacing = -std::log(a) / field.drift;
    return plan;
}

} // namespace gmdet
