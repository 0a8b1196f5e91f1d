// Miss-probability error exponent of the Neyman-Pearson detector for a
// sampled Gauss-Markov signal in white Gaussian noise, computed in closed
// form through the steady-state innovation variances and, independently,
// through the spectral-domain Kullback-Leibler integral.
#pragma once

#include <stdexcept>
#include <string>

#include "gmdet/field_model.hpp"

namespace gmdet {

/// Thrown when an iterative routine fails to reach its tolerance; carries
/// the last iterate so callers can still inspect it.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double last)
        : std::runtime_error(what), last_iterate_(last) {}
    double last_iterate() const { return last_iterate_; }

  private:
    double last_iterate_;
};

enum class ExponentMethod { closed_form, spectral };

/**
 * Error exponent together with the steady-state filter quantities that
 * produce it.  The exponent is in nats per sample and satisfies
 * exponent >= 0, with equality exactly at correlation one.
 */
struct ExponentReport {
    double exponent;          ///< K, nats per sample
    double prediction_var;    ///< steady-state one-step prediction error P
    double innovation_var_h1; ///< innovation variance when signal present
    double innovation_var_h0; ///< innovation variance under noise only
    ExponentMethod method;
};

/// Power spectral density of the observations when the signal is present.
struct SpectralDensity {
    double correlation;
    double signal_var;
    double noise_var;

    /// S_y at angular frequency omega; symmetric about pi, never below
    /// the noise floor.
    double operator()(double omega) const;
};

/// Kullback-Leibler divergence D(N(0, var0) || N(0, var1)) in nats.
/// Throws std::domain_error unless both variances are positive.
double kl_gaussian(double var0, double var1);

/**
 * Steady-state prediction-error variance of the Kalman filter for the
 * sampled model, from the closed-form root of the scalar Riccati equation.
 * Correlations within 1e-9 of one collapse to exactly zero to avoid
 * cancellation in the discriminant.
 */
double riccati_steady_state(const SampledModel& model);

/**
 * Same fixed point obtained by iterating the Riccati map from the
 * stationary prior variance until the relative change drops below tol.
 * Throws ConvergenceError (carrying the last iterate) past max_iter.
 */
double riccati_iterate(const SampledModel& model, double tol = 1e-12,
                       int max_iter = 200000);

struct InnovationVariances {
    double under_h1; ///< prediction_var + noise_var
    double under_h0; ///< variance of the same innovations driven by noise only
};

/// Steady-state innovation variances under both hypotheses.
InnovationVariances innovation_variances(const SampledModel& model);

/// Closed-form error exponent via the steady-state innovation variances.
ExponentReport error_exponent(const SampledModel& model);

/**
 * Error exponent as the frequency average of the per-bin Gaussian
 * Kullback-Leibler divergence, evaluated with composite Simpson quadrature
 * over half the spectrum (the integrand is symmetric about pi).
 *
 * quadrature_points is the number of Simpson subintervals (>= 64; odd
 * counts are rounded up).  The returned report carries the closed-form
 * filter quantities, with method marking the spectral provenance of the
 * exponent itself.
 */
ExponentReport error_exponent_spectral(const SampledModel& model,
                                       int quadrature_points = 8192);

/// Spectrum of the observations for the given model.
SpectralDensity spectral_density(const SampledModel& model);

} // namespace gmdet
