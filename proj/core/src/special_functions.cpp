#include "onebit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace onebit {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// exp(x*x) with the rounding error of x*x folded back in.
double exp_square(double x) {
    const double hi = x * x;
    const double lo = std::fma(x, x, -hi);
    return std::exp(hi) * std::exp(lo);
}

// Continued fraction erfcx(x) = (1/sqrt pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated bottom-up; accurate to machine precision for x >= 20 with 40 levels.
double erfcx_continued_fraction(double x) {
    double tail = x;
    for (int n = 40; n >= 1; --n) tail = x + 0.5 * n / tail;
    return kInvSqrtPi / tail;
}

constexpr double kContinuedFractionFrom = 20.0;

// Power series of e^{-x} I_v(x), valid and accurate for moderate x >= 0.
double bessel_scaled_series(int order, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = order == 0 ? 1.0 : half;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-x);
}

// Hankel asymptotic expansion of e^{-x} I_v(x) for large x.
double bessel_scaled_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

constexpr double kBesselAsymptoticFrom = 30.0;

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_gaussian_q(double x) {
    if (x < 5.0) return std::log(gaussian_q(x));
    const double u = x / std::numbers::sqrt2;
    return -u * u + std::log(0.5 * erfcx(u));
}

double erfcx(double x) {
    if (x < 0.0) {
        if (x < -26.7) return std::numeric_limits<double>::infinity();
        return 2.0 * exp_square(x) - erfcx(-x);
    }
    if (x < kContinuedFractionFrom) return exp_square(x) * std::erfc(x);
    return erfcx_continued_fraction(x);
}

double q_ratio(double a) { return 2.0 / erfcx(a); }

double bessel_i0e(double x) {
    const double ax = std::abs(x);
    return ax < kBesselAsymptoticFrom ? bessel_scaled_series(0, ax) : bessel_scaled_asymptotic(0, ax);
}

double bessel_i1e(double x) {
    const double ax = std::abs(x);
    const double v = ax < kBesselAsymptoticFrom ? bessel_scaled_series(1, ax) : bessel_scaled_asymptotic(1, ax);
    return x < 0.0 ? -v : v;
}

double bessel_i0(double x) { return bessel_i0e(x) * std::exp(std::abs(x)); }

double bessel_i1(double x) { return bessel_i1e(x) * std::exp(std::abs(x)); }

}  // namespace onebit
