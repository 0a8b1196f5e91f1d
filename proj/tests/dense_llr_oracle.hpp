// Test-only oracle: log-likelihood ratio evaluated directly from the dense
// n x n covariance (explicit Cholesky, determinant, and solve), fully
// independent of the Kalman recursion it checks.
#pragma once

#include <cmath>
#include <vector>

#include "gmdet/field_model.hpp"

namespace gmdet_test {

inline double dense_covariance_llr(const std::vector<double>& y,
                                   const gmdet::SampledModel& m) {
    std::size_t n = y.size();
    std::vector<double> cov(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double lag =
                std::fabs(static_cast<double>(i) - static_cast<double>(j));
            cov[i * n + j] = m.signal_var * std::pow(m.correlation, lag) +
                             (i == j ? m.noise_var : 0.0);
        }
    // cov = L L^T
    std::vector<double> chol(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = cov[i * n + j];
            for (std::size_t k = 0; k < j; ++k)
                s -= chol[i * n + k] * chol[j * n + k];
            chol[i * n + j] = (i == j) ? std::sqrt(s) : s / chol[j * n + j];
        }
    }
    // solve L z = y; the quadratic form is |z|^2, logdet = 2 sum ln L_ii
    std::vector<double> z(n);
    double quad = 0.0, logdet = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol[i * n + k] * z[k];
        z[i] = s / chol[i * n + i];
        quad += z[i] * z[i];
        logdet += 2.0 * std::log(chol[i * n + i]);
    }
    double yy = 0.0;
    for (double v : y) yy += v * v;
    double ll1 = -0.5 * logdet - 0.5 * quad;
    double ll0 = -0.5 * static_cast<double>(n) * std::log(m.noise_var) -
                 0.5 * yy / m.noise_var;
    return ll1 - ll0;
}

} // namespace gmdet_test
