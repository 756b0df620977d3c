// Numeric primitives for order-statistics laws: standard normal CDF and
// quantile, log-beta, and the regularized incomplete beta function with its
// inverse.
#pragma once

#include <utility>

namespace robwav {

double normal_pdf(double z);

/// Phi(z), accurate in the lower tail through erfc.
double normal_cdf(double z);

/// 1 - Phi(z), accurate in the upper tail.
double normal_sf(double z);

/// Phi^{-1}(p) for p in (0, 1). Rational approximation followed by a Halley
/// polish against erfc; relative error near machine precision out to
/// |z| ~ 37.
double normal_quantile(double p);

double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
/// separately keeps precision when x is close to one.
double beta_inc(double a, double b, double x, double y);
inline double beta_inc(double a, double b, double x) { return beta_inc(a, b, x, 1.0 - x); }

/// log I_x(a, b), finite down to the underflow limit of x^a.
double log_beta_inc(double a, double b, double x, double y);

/// Solves I_x(a, b) = p where q = 1 - p. Returns (x, 1 - x), each computed
/// without cancellation. Uses bracketed Newton iteration on log x (or log of
/// the complement, whichever tail is smaller).
std::pair<double, double> beta_inc_inv(double a, double b, double p, double q);
inline double beta_inc_inv(double a, double b, double p) { return beta_inc_inv(a, b, p, 1.0 - p).first; }

}  // namespace robwav
