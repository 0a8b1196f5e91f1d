// Standard normal tail probability, its inverse, and the density.
#pragma once

namespace gmdet {

/// Standard normal density.
double normal_pdf(double x);

/// Upper tail probability Q(x) = P(Z > x) for standard normal Z.
double normal_tail(double x);

/**
 * Inverse of normal_tail: returns x with normal_tail(x) == p.
 *
 * Rational initial approximation refined by Newton steps on the exact
 * tail function; relative error below 1e-12 across p in
 * [1e-300, 1 - 1e-16].  Throws std::domain_error outside (0, 1).
 */
double normal_tail_inv(double p);

} // namespace gmdet
