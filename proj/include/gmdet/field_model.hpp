// Continuous one-dimensional diffusion field and its exact discretization
// to a first-order autoregressive sequence at uniform sensor spacing.
#pragma once

#include <stdexcept>

namespace gmdet {

/**
 * Parameters of the stationary diffusion field observed in white noise.
 *
 * The field s(x) solves ds/dx = -drift * s + input_gain * u(x) with white
 * unit-intensity input u, so stationarity requires
 * signal_var = input_gain^2 / (2 * drift) whenever drift > 0.  A drift of
 * zero describes a perfectly correlated (constant-in-space) field and is
 * accepted when the stationary variance is supplied directly.
 */
struct DiffusionField {
    double drift;      ///< decay rate per unit distance, >= 0
    double input_gain; ///< white-noise input gain
    double signal_var; ///< stationary field variance
    double noise_var;  ///< per-sensor measurement noise variance, > 0

    /// Signal-to-noise ratio of a single measurement.
    double snr() const { return signal_var / noise_var; }

    /// Build from (drift, gain); the stationary variance is derived.
    static DiffusionField from_drift(double drift, double input_gain,
                                     double noise_var);

    /// Build from the stationary variance directly; gain is derived
    /// (zero when drift == 0).
    static DiffusionField from_variance(double drift, double signal_var,
                                        double noise_var);
};

/**
 * Discrete model of the field sampled at equal spacing: the signal samples
 * follow s[i+1] = correlation * s[i] + u[i] with u[i] of variance
 * process_noise_var, stationary variance signal_var at every index, and each
 * measurement adds independent noise of variance noise_var.
 */
struct SampledModel {
    double correlation;       ///< lag-one correlation, in [0, 1]
    double process_noise_var; ///< = signal_var * (1 - correlation^2)
    double signal_var;        ///< stationary signal variance
    double noise_var;         ///< measurement noise variance
    double snr;               ///< = signal_var / noise_var

    /// Build directly in the correlation domain.
    static SampledModel from_correlation(double correlation, double signal_var,
                                         double noise_var);
};

/// Stationary variance of the field, input_gain^2 / (2 * drift).
/// Throws std::domain_error when drift <= 0 (no stationary solution).
double stationary_variance(double drift, double input_gain);

/// Sample the field at spacing delta >= 0: correlation = exp(-drift * delta).
/// delta == 0 or drift == 0 gives a perfectly correlated sequence.
SampledModel discretize(const DiffusionField& field, double delta);

} // namespace gmdet
