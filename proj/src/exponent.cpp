#include "gmdet/exponent.hpp"

#include <cmath>

namespace gmdet {

namespace {

// Below this distance from one the model is treated as perfectly
// correlated: the exponent is exactly zero and the prediction error
// vanishes, which sidesteps cancellation in the Riccati discriminant.
constexpr double kPerfectCorrEps = 1e-9;

bool perfectly_correlated(const SampledModel& m) {
    return m.correlation > 1.0 - kPerfectCorrEps;
}

// One application of the Riccati map for the prediction-error variance.
double riccati_map(double p, double a, double q, double s2) {
    return a * a * p * s2 / (p + s2) + q;
}

} // namespace

double kl_gaussian(double var0, double var1) {
    if (!(var0 > 0.0) || !(var1 > 0.0))
        throw std::domain_error("kl_gaussian requires positive variances");
    return 0.5 * (std::log(var1 / var0) + var0 / var1 - 1.0);
}

double SpectralDensity::operator()(double omega) const {
    double a = correlation;
    double denom = 1.0 - 2.0 * a * std::cos(omega) + a * a;
    if (denom <= 0.0) return noise_var; // a == 1 at omega == 0: flat spectrum
    return noise_var + signal_var * (1.0 - a * a) / denom;
}

SpectralDensity spectral_density(const SampledModel& model) {
    return SpectralDensity{model.correlation, model.signal_var,
                           model.noise_var};
}

double riccati_steady_state(const SampledModel& model) {
    if (perfectly_correlated(model)) return 0.0;
    double a = model.correlation;
    double q = model.process_noise_var;
    double s2 = model.noise_var;
    double t = s2 * (1.0 - a * a) - q;
    return 0.5 * (std::sqrt(t * t + 4.0 * s2 * q) - s2 * (1.0 - a * a) + q);
}

double riccati_iterate(const SampledModel& model, double tol, int max_iter) {
    if (!(tol > 0.0))
        throw std::domain_error("riccati_iterate requires a positive tolerance");
    // With no process noise the map contracts only harmonically toward
    // zero; take the known limit, as the closed form does.
    if (perfectly_correlated(model)) return 0.0;
    double a = model.correlation;
    double q = model.process_noise_var;
    double s2 = model.noise_var;
    double p = model.signal_var; // stationary prior
    for (int i = 0; i < max_iter; ++i) {
        double next = riccati_map(p, a, q, s2);
        double change = std::fabs(next - p) / std::max(next, tol);
        p = next;
        if (change < tol) return p;
    }
    throw ConvergenceError("Riccati iteration did not converge", p);
}

InnovationVariances innovation_variances(const SampledModel& model) {
    double s2 = model.noise_var;
    double p = riccati_steady_state(model);
    if (p == 0.0) return InnovationVariances{s2, s2};
    double a = model.correlation;
    double denom = p * p + 2.0 * s2 * p + (1.0 - a * a) * s2 * s2;
    return InnovationVariances{p + s2,
                               s2 * (1.0 + a * a * p * p / denom)};
}

ExponentReport error_exponent(const SampledModel& model) {
    double s2 = model.noise_var;
    double p = riccati_steady_state(model);
    auto [re, rte] = innovation_variances(model);
    double k = perfectly_correlated(model)
                   ? 0.0
                   : -0.5 * std::log(s2 / re) + 0.5 * rte / re - 0.5;
    return ExponentReport{k, p, re, rte, ExponentMethod::closed_form};
}

ExponentReport error_exponent_spectral(const SampledModel& model,
                                       int quadrature_points) {
    if (quadrature_points < 64)
        throw std::domain_error("spectral quadrature needs at least 64 points");
    int n = quadrature_points + (quadrature_points % 2); // Simpson wants even
    SpectralDensity spectrum = spectral_density(model);
    double s2 = model.noise_var;
    double h = M_PI / n;
    // Composite Simpson over [0, pi]; the spectrum is symmetric about pi,
    // so the half-range average equals the full-range average.
    double sum = kl_gaussian(s2, spectrum(0.0)) + kl_gaussian(s2, spectrum(M_PI));
    for (int i = 1; i < n; ++i) {
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        sum += w * kl_gaussian(s2, spectrum(h * i));
    }
    double k = (h / 3.0) * sum / M_PI;
    ExponentReport report = error_exponent(model); // carries P, Re, Rte
    report.exponent = perfectly_correlated(model) ? 0.0 : k;
    report.method = ExponentMethod::spectral;
    return report;
}

} // namespace gmdet
