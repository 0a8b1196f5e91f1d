#include "gmdet/field_model.hpp"

#include <cmath>

namespace gmdet {

namespace {

void check_noise_var(double noise_var) {
    if (!(noise_var > 0.0))
        throw std::domain_error("noise variance must be positive");
}

} // namespace

double stationary_variance(double drift, double input_gain) {
    if (!(drift > 0.0))
        throw std::domain_error(
            "stationary variance requires a positive drift rate");
    if (!std::isfinite(input_gain) || input_gain == 0.0)
        throw std::domain_error("input gain must be finite and nonzero");
    return input_gain * input_gain / (2.0 * drift);
}

DiffusionField DiffusionField::from_drift(double drift, double input_gain,
                                          double noise_var) {
    check_noise_var(noise_var);
    return DiffusionField{drift, input_gain,
                          stationary_variance(drift, input_gain), noise_var};
}

DiffusionField DiffusionField::from_variance(double drift, double signal_var,
                                             double noise_var) {
    check_noise_var(noise_var);
    if (!(drift >= 0.0))
        throw std::domain_error("drift rate must be nonnegative");
    if (!(signal_var > 0.0))
        throw std::domain_error("signal variance must be positive");
    return DiffusionField{drift, std::sqrt(2.0 * drift * signal_var),
                          signal_var, noise_var};
}

SampledModel SampledModel::from_correlation(double correlation,
                                            double signal_var,
                                            double noise_var) {
    check_noise_var(noise_var);
    if (!(signal_var > 0.0))
        throw std::domain_error("signal variance must be positive");
    if (!(correlation >= 0.0 && correlation <= 1.0))
        throw std::domain_error("correlation must lie in [0, 1]");
    return SampledModel{correlation,
                        signal_var * (1.0 - correlation * correlation),
                        signal_var, noise_var, signal_var / noise_var};
}

SampledModel discretize(const DiffusionField& field, double delta) {
    if (!(delta >= 0.0))
        throw std::domain_error("sensor spacing must be nonnegative");
    double a = std::exp(-field.drift * delta);
    return SampledModel::from_correlation(a, field.signal_var,
                                          field.noise_var);
}

} // namespace gmdet
