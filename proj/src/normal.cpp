#include "gmdet/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace gmdet {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Acklam's rational approximation to the standard normal quantile,
// accurate to about 1.15e-9; Newton refinement below takes it the rest
// of the way.  Valid for p in (0, 0.5].
double quantile_estimate(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    if (p < 0.02425) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
                c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double normal_tail_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_tail_inv requires p in (0, 1)");
    // Reflection keeps the hard work in the lower half; 1 - p is exact
    // for p >= 0.5.
    if (p > 0.5) return -normal_tail_inv(1.0 - p);
    // Q^{-1}(p) = -Phi^{-1}(p) for the lower half.
    double x = -quantile_estimate(p);
    // Two Newton steps on Q(x) - p; dQ/dx = -pdf.  Quadratic convergence
    // from a 1e-9 start leaves the erfc evaluation as the only error.
    for (int i = 0; i < 2; ++i) {
        double pdf = normal_pdf(x);
        if (pdf == 0.0) break;
        x += (normal_tail(x) - p) / pdf;
    }
    return x;
}

} // namespace gmdet
