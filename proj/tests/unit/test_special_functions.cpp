#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "onebit/special_functions.hpp"
#include "onebit/validation/oracles.hpp"

using namespace onebit;

TEST_SUITE("special_functions") {

TEST_CASE("exact values") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i1(0.0) == 0.0);
    CHECK(bessel_i0e(0.0) == 1.0);
    CHECK(q_ratio(0.0) == doctest::Approx(2.0));
}

TEST_CASE("fused ratio against frozen 50-digit values") {
    CHECK(q_ratio(20.0) == doctest::Approx(70.986556544105958).epsilon(1e-12));
    CHECK(q_ratio(-3.0) == doctest::Approx(1.2341116719368879e-4).epsilon(1e-12));
    CHECK(q_ratio(20.0) == doctest::Approx(oracle::q_ratio(20.0)).epsilon(1e-6));
}

TEST_CASE("fused ratio asymptotics and finiteness") {
    CHECK(q_ratio(1e6) == doctest::Approx(2.0 * 1e6 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
    CHECK(q_ratio(-40.0) == 0.0);
    for (double a = -60.0; a <= 1e4; a += 0.37) CHECK(std::isfinite(q_ratio(a)));
}

TEST_CASE("Gaussian Q against the multiprecision oracle") {
    for (double x = -8.0; x <= 37.0; x += 0.05) {
        CHECK(gaussian_q(x) == doctest::Approx(oracle::gaussian_q(x)).epsilon(1e-12));
    }
}

TEST_CASE("log Q stays finite deep in the tail") {
    CHECK(std::isfinite(log_gaussian_q(100.0)));
    CHECK(log_gaussian_q(100.0) ==
          doctest::Approx(-5000.0 - std::log(100.0 * std::sqrt(2.0 * std::numbers::pi)) + std::log1p(-1e-4)).epsilon(1e-10));
    for (double x = -10.0; x < 30.0; x += 0.1)
        CHECK(log_gaussian_q(x) == doctest::Approx(std::log(oracle::gaussian_q(x))).epsilon(1e-11));
}

TEST_CASE("erfcx on both sides") {
    CHECK(erfcx(0.0) == 1.0);
    CHECK(erfcx(30.0) == doctest::Approx(1.0 / (30.0 * std::sqrt(std::numbers::pi)) * (1.0 - 1.0 / 1800.0)).epsilon(1e-6));
    CHECK(std::isinf(erfcx(-30.0)));
}

TEST_CASE("Bessel functions against the multiprecision oracle") {
    for (double x = 1e-3; x < 700.0; x *= 1.05) {
        CHECK(bessel_i0(x) == doctest::Approx(oracle::bessel_i0(x)).epsilon(1e-10));
        CHECK(bessel_i1(x) == doctest::Approx(oracle::bessel_i1(x)).epsilon(1e-10));
    }
    for (double x = 1e-3; x < 1e6; x *= 1.1) {
        CHECK(bessel_i0e(x) == doctest::Approx(oracle::bessel_i0e(x)).epsilon(1e-10));
        CHECK(bessel_i1e(x) == doctest::Approx(oracle::bessel_i1e(x)).epsilon(1e-10));
    }
    CHECK(bessel_i1(-2.0) == doctest::Approx(-bessel_i1(2.0)));
    CHECK(bessel_i0(-2.0) == doctest::Approx(bessel_i0(2.0)));
}

}  // TEST_SUITE
