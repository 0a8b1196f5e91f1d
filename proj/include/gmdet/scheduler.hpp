// Optimal sensor correlation and spacing.  Above unit SNR the exponent is
// maximized by spreading sensors as far apart as possible; below unit SNR
// an interior optimal correlation exists and fixes the optimal spacing.
#pragma once

#include <optional>

#include "gmdet/field_model.hpp"

namespace gmdet {

enum class SnrRegime { high_snr, low_snr, boundary };

/// Placement recommendation for one diffusion field.
struct SchedulePlan {
    SnrRegime regime;
    /// Exponent-maximizing correlation; present only below unit SNR.
    std::optional<double> correlation;
    /// Spacing realizing that correlation; present when drift > 0.
    std::optional<double> spacing;
    /// Exponent achieved at the optimal correlation.
    std::optional<double> exponent_at_optimum;
};

/**
 * Left-hand side of the stationarity condition for the exponent as a
 * function of correlation:
 *
 *   (1 + a^2 + snr (1 - a^2))^2 - 2 (re + a^4 / re),
 *
 * where re is the steady-state innovation variance under the signal
 * hypothesis normalized by the noise variance.  Negative below the
 * optimal correlation, positive above it, for snr < 1.
 */
double optimality_residual(double correlation, double snr);

/**
 * Correlation maximizing the error exponent for snr in (0, 1), located by
 * bisection on the optimality residual over [1e-6, 1 - 1e-6] to interval
 * width tol.  Should the coarse scan ever find several sign changes, the
 * root with the largest exponent wins and a diagnostic goes to stderr.
 * Throws std::domain_error for snr >= 1, where no interior optimum exists.
 */
double optimal_correlation(double snr, double tol = 1e-12);

/// Spacing achieving the optimal correlation: -ln(a_opt) / drift.
/// Throws std::domain_error when drift <= 0 or snr >= 1.
double optimal_spacing(double drift, double snr, double tol = 1e-12);

/// Classify the field's SNR regime and, below unit SNR, solve for the
/// optimal correlation and spacing.
SchedulePlan make_plan(const DiffusionField& field);

} // namespace gmdet
