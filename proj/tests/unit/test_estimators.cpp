#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "onebit/angles.hpp"
#include "onebit/errors.hpp"
#include "onebit/estimators.hpp"
#include "onebit/validation/oracles.hpp"

using namespace onebit;

namespace {

struct Block {
    std::vector<OneBitSample> r;
    std::vector<std::complex<double>> s;
    double noise_var = 1.0;
    PilotBlockView view() const { return {r, s, noise_var}; }
};

// QPSK reference with IF dither, quantized at the given phase and noise level.
Block dithered_block(std::size_t len, double theta, double sigma, std::uint64_t seed, double f_if = 0.0141421356) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution bit(0.5);
    std::normal_distribution<double> noise(0.0, sigma / std::sqrt(2.0));
    Block b;
    b.noise_var = sigma * sigma;
    for (std::size_t k = 0; k < len; ++k) {
        const std::complex<double> x{bit(rng) ? M_SQRT1_2 : -M_SQRT1_2, bit(rng) ? M_SQRT1_2 : -M_SQRT1_2};
        const auto s = x * std::polar(1.0, 2.0 * std::numbers::pi * f_if * static_cast<double>(k));
        b.s.push_back(s);
        b.r.push_back(quantize_1bit(s * std::polar(1.0, theta) + std::complex<double>(noise(rng), noise(rng))));
    }
    return b;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("LS on aligned noiseless QPSK") {
    Block b;
    const double a = M_SQRT1_2;
    for (auto x : {std::complex<double>{a, a}, {-a, a}, {a, -a}, {-a, -a}}) {
        b.s.push_back(x);
        b.r.push_back(quantize_1bit(x));
    }
    CHECK(*ls_estimate(b.view()) == doctest::Approx(0.0));
    for (std::size_t k = 0; k < b.s.size(); ++k) b.r[k] = quantize_1bit(b.s[k] * std::complex<double>(0.0, 1.0));
    CHECK(*ls_estimate(b.view()) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("LS hand-evaluated two-sample block") {
    Block b;
    b.s = {{1.0, 0.0}, {0.0, 1.0}};
    b.r = {{1, 1}, {-1, 1}};
    CHECK(*ls_estimate(b.view()) == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("LS degenerate sum and malformed blocks") {
    Block b;
    b.s = {{1.0, 0.0}, {-1.0, 0.0}};
    b.r = {{1, 1}, {1, 1}};
    CHECK_FALSE(ls_estimate(b.view()).has_value());
    const auto est = estimate_block(b.view(), {}, 1e-3);
    CHECK(est.degenerate);
    CHECK(est.phase == 0.0);
    b.r.pop_back();
    CHECK_THROWS_AS(ls_estimate(b.view()), std::invalid_argument);
}

TEST_CASE("EM noise expectation values") {
    const auto z = em_noise_expectation({1, 1}, {0.0, 0.0}, 1.0);
    CHECK(z.real() == doctest::Approx(std::numbers::inv_sqrtpi).epsilon(1e-14));
    CHECK(z.imag() == doctest::Approx(std::numbers::inv_sqrtpi).epsilon(1e-14));
    // Frozen 50-digit values; the real part is deep in the tail.
    const auto w = em_noise_expectation({1, 1}, {5.0, 0.0}, 1.0);
    CHECK(w.real() == doctest::Approx(3.917716632757345e-12).epsilon(1e-10));
    CHECK(w.imag() == doctest::Approx(0.56418958354775629).epsilon(1e-14));
    CHECK(w.real() == doctest::Approx(oracle::truncated_gaussian_mean(5.0, 1, 1.0)).epsilon(1e-6));
}

TEST_CASE("EM noise expectation against truncated-Gaussian quadrature") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sd(-6.0, 6.0);
    std::uniform_real_distribution<double> log_sigma(std::log(0.05), std::log(5.0));
    for (int i = 0; i < 200; ++i) {
        const double sigma = std::exp(log_sigma(rng));
        const double sr = sd(rng) * sigma;
        const double si = sd(rng) * sigma;
        for (OneBitSample r : {OneBitSample{1, 1}, OneBitSample{-1, 1}, OneBitSample{1, -1}, OneBitSample{-1, -1}}) {
            const auto w = em_noise_expectation(r, {sr, si}, sigma);
            CHECK(w.real() == doctest::Approx(oracle::truncated_gaussian_mean(sr, r.re, sigma)).epsilon(1e-6));
            CHECK(w.imag() == doctest::Approx(oracle::truncated_gaussian_mean(si, r.im, sigma)).epsilon(1e-6));
        }
    }
}

TEST_CASE("EM noise expectation is odd under joint negation") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> s{n(rng), n(rng)};
        const OneBitSample r{static_cast<std::int8_t>(i % 2 ? 1 : -1), static_cast<std::int8_t>(i % 3 ? 1 : -1)};
        const OneBitSample neg{static_cast<std::int8_t>(-r.re), static_cast<std::int8_t>(-r.im)};
        const auto a = em_noise_expectation(r, s, 0.7);
        const auto b = em_noise_expectation(neg, -s, 0.7);
        CHECK(a.real() == doctest::Approx(-b.real()));
        CHECK(a.imag() == doctest::Approx(-b.imag()));
    }
}

TEST_CASE("score addends are invariant under joint negation of r and s") {
    const auto b = dithered_block(60, 0.4, 0.5, 8);
    for (std::size_t k = 0; k < b.s.size(); ++k) {
        const Block one{{b.r[k]}, {b.s[k]}, b.noise_var};
        const Block both{{{static_cast<std::int8_t>(-b.r[k].re), static_cast<std::int8_t>(-b.r[k].im)}},
                         {-b.s[k]},
                         b.noise_var};
        CHECK(score(both.view(), 0.3) == doctest::Approx(score(one.view(), 0.3)));
    }
}

TEST_CASE("score equals the finite difference of the exact likelihood") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> log_sigma(std::log(1e-3), std::log(10.0));
    std::uniform_real_distribution<double> phase(-3.0, 3.0);
    for (int i = 0; i < 40; ++i) {
        const double sigma = std::exp(log_sigma(rng));
        const auto b = dithered_block(30, phase(rng), sigma, 100 + i);
        const double theta = phase(rng);
        const double fd = oracle::score_finite_difference(b.view(), theta);
        CHECK(score(b.view(), theta) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("score has zero mean at the true phase") {
    const std::size_t draws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto b = dithered_block(4, 0.8, 0.7, 5000 + i);
        const double v = score(b.view(), 0.8);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("EM with zero iterations returns the initializer") {
    const auto b = dithered_block(60, 0.3, 0.2, 10);
    CHECK(em_estimate(b.view(), 1.25, 0) == 1.25);
}

TEST_CASE("EM is stationary near the likelihood maximizer at high SNR") {
    const auto b = dithered_block(60, 0.3, 0.05, 11);
    // Coarse grid of the exact likelihood around the LS estimate, then golden-section refinement.
    auto ll = [&](double t) { return oracle::log_likelihood_1bit(b.view(), t); };
    const double centre = *ls_estimate(b.view());
    double best = centre;
    for (double t = centre - 0.3; t <= centre + 0.3; t += 0.01) {
        if (ll(t) > ll(best)) best = t;
    }
    double lo = best - 0.01, hi = best + 0.01;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    while (hi - lo > 1e-7) {
        const double a = hi - golden * (hi - lo);
        const double c = lo + golden * (hi - lo);
        if (ll(a) > ll(c)) {
            hi = c;
        } else {
            lo = a;
        }
    }
    best = 0.5 * (lo + hi);
    const double next = em_estimate(b.view(), best, 1);
    CHECK(std::abs(wrap_angle(next - best)) < 1e-3);
}

TEST_CASE("scoring fixed point and one-step arithmetic") {
    // Single sample with s = 1 and r = 1+j: V(0) is the imaginary-part term only.
    Block b{{{1, 1}}, {{1.0, 0.0}}, 1.0};
    const double v0 = score(b.view(), 0.0);
    CHECK(v0 == doctest::Approx(2.0 * std::numbers::inv_sqrtpi));
    const auto one = scoring_estimate(b.view(), 0.0, 1, 1.0, 0.01);
    CHECK(one.estimate == doctest::Approx(0.01 * v0));
    // Symmetric pair: V(0) = 0 exactly, the iterate never moves.
    Block sym{{{1, 1}, {1, -1}}, {{1.0, 0.0}, {1.0, 0.0}}, 1.0};
    CHECK(score(sym.view(), 0.0) == 0.0);
    CHECK(scoring_estimate(sym.view(), 0.0, 20, 0.5, 0.1).estimate == 0.0);
    CHECK_THROWS_AS(scoring_estimate(sym.view(), 0.0, 1, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(scoring_estimate(sym.view(), 0.0, 1, 1.5, 0.1), std::invalid_argument);
}

TEST_CASE("undamped scoring at high SNR stays finite") {
    const double n0 = 1e-4;
    const double fi_inv = fisher_info_inv({1.0, n0, 1, 60});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto b = dithered_block(60, 0.5, std::sqrt(n0), 200 + seed);
        const auto res = scoring_estimate(b.view(), *ls_estimate(b.view()), 20, 1.0, fi_inv);
        CHECK(res.finite);
        CHECK(std::isfinite(res.estimate));
        CHECK(std::isfinite(res.last_step));
    }
}

TEST_CASE("Fisher information bound") {
    CHECK(kappa1(0.0) == kKappaC1);
    CHECK(kKappaC1 == 4.0360);
    CHECK(kKappaC2 == 0.3930);
    // Frozen 50-digit values at M_rx = 1, P = 60.
    CHECK(fisher_info_inv({1.0, 0.1, 1, 60}) == doctest::Approx(0.0033357115755390575).epsilon(1e-13));
    CHECK(fisher_info_inv({1.0, 0.01, 1, 60}) == doctest::Approx(0.0010225721097406545).epsilon(1e-13));
    CHECK(fisher_info_inv({1.0, 1e-4, 1, 60}) == doctest::Approx(1.0193363057268727e-4).epsilon(1e-13));
    CHECK(fisher_info_inv({2.0, 0.2, 3, 30}) == doctest::Approx(oracle::fisher_info_inv(10.0, 3, 30)).epsilon(1e-12));
    CHECK_THROWS_AS(fisher_info_inv({0.0, 1.0, 1, 60}), std::domain_error);
    CHECK_THROWS_AS(fisher_info_inv({1.0, -1.0, 1, 60}), std::domain_error);
}

TEST_CASE("outputs are wrapped to (-pi, pi]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto b = dithered_block(60, 3.1, 0.3, 300 + seed);
        for (Algorithm a : {Algorithm::ls, Algorithm::em, Algorithm::scoring}) {
            const double p = estimate_block(b.view(), {a, 20, 0.05}, 1e-3).phase;
            CHECK(p > -std::numbers::pi);
            CHECK(p <= std::numbers::pi);
        }
    }
}

TEST_CASE("algorithm names") {
    CHECK(parse_algorithm("em") == Algorithm::em);
    CHECK(to_string(Algorithm::scoring) == "scoring");
    CHECK_THROWS_AS(parse_algorithm("newton"), ConfigError);
}

}  // TEST_SUITE
