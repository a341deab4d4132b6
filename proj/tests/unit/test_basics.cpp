#include <doctest.h>

#include <cmath>
#include <vector>

#include "onebit/angles.hpp"
#include "onebit/seeding.hpp"

using namespace onebit;

TEST_SUITE("basics") {

TEST_CASE("angle wrapping maps into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == kPi);
    CHECK(wrap_angle(-kPi) == kPi);
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(kTwoPi + 0.25) == doctest::Approx(0.25));
    for (double x = -50.0; x < 50.0; x += 0.173) {
        const double w = wrap_angle(x);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(std::remainder(x - w, kTwoPi) == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("unwrapping removes 2 pi jumps") {
    std::vector<double> truth;
    for (int i = 0; i < 40; ++i) truth.push_back(0.3 * i);
    std::vector<double> wrapped;
    for (double v : truth) wrapped.push_back(wrap_angle(v));
    const auto u = unwrap_sequence(wrapped);
    for (std::size_t i = 0; i < truth.size(); ++i) CHECK(u[i] == doctest::Approx(truth[i]));
}

TEST_CASE("seed derivation is a pure function of its path") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
    CHECK(derive_seed(7, Stream::noise) == derive_seed(7, {4}));
    CHECK(splitmix64(0) != 0);
}

}  // TEST_SUITE
