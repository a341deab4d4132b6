#pragma once

namespace onebit {

/// Gaussian tail Q(x) = P(N(0,1) > x) = erfc(x/sqrt 2)/2.
double gaussian_q(double x);

/// log Q(x), finite for all finite x (no underflow for large positive x).
double log_gaussian_q(double x);

/// Scaled complementary error function exp(x^2) erfc(x). Overflows to +inf
/// only for x below about -26.6 where the true value exceeds DBL_MAX.
double erfcx(double x);

/// Fused exp(-a^2) / Q(a sqrt 2) = 2 / erfcx(a).
///
/// This is the ratio that appears in the EM noise expectation and in the
/// Fisher score: with z = -r * Re{s} / sigma both reduce to q_ratio(z). The
/// naive quotient is 0/0 for a >~ 27 and underflows long before that; the
/// fused form stays accurate and tends to 2a*sqrt(pi) as a -> +inf and to 0
/// as a -> -inf.
double q_ratio(double a);

/// Modified Bessel functions of the first kind and their exponentially
/// scaled forms e^{-|x|} I_v(x).
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_i0e(double x);
double bessel_i1e(double x);

}  // namespace onebit
