#pragma once

// Reference computations that share no code path with the library routines
// they are used to check.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "onebit/estimators.hpp"
#include "onebit/tracking.hpp"

namespace onebit::oracle {

/// Every maximal run (first and last included) has length in [d+1, k_max+1].
bool rll_admissible(std::span<const int> seq, std::size_t d, std::size_t k_max);

/// All +-1 strings of the given length admissible under (d, k_max), by brute force.
std::vector<std::vector<int>> enumerate_rll(std::size_t d, std::size_t k_max, std::size_t length);

/// Posterior moments of the random-walk state by direct joint-Gaussian
/// conditioning on the full block covariance (long double, LDLT).
struct BatchPosterior {
    std::vector<double> filtered_mean, filtered_var;
    std::vector<double> smoothed_mean, smoothed_var;
};
BatchPosterior batch_condition(const BlockObservationSeq& obs, const StapnModel& model);

/// Conditional mean of a Brownian bridge pinned at (0, a) and (n, b).
double brownian_bridge_mean(double a, double b, std::size_t n, std::size_t m);

/// Exact 1-bit log-likelihood sum log Q(-Re r Re s_theta/(sigma/sqrt2)) + (Im),
/// in 50-digit arithmetic, returned as long double.
long double log_likelihood_1bit(const PilotBlockView& view, long double theta);

/// Central finite difference of log_likelihood_1bit with step h, evaluated
/// entirely in multiprecision (32 digits).
double score_finite_difference(const PilotBlockView& view, double theta, double h = 1e-10);

/// 50-digit references.
double gaussian_q(double x);
double q_ratio(double a);  ///< exp(-a^2)/Q(a sqrt 2)
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_i0e(double x);
double bessel_i1e(double x);
double fisher_info_inv(double esn0_linear, std::size_t oversampling, std::size_t pilot_len);

/// E[w | sign(s + w) = r] for one real component, w ~ N(0, sigma^2/2), by
/// composite Simpson quadrature of the truncated Gaussian.
double truncated_gaussian_mean(double s, int r, double sigma);

}  // namespace onebit::oracle
