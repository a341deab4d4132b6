#include "onebit/angles.hpp"

#include <cmath>

namespace onebit {

double wrap_angle(double rad) {
    double w = std::remainder(rad, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    return w;
}

std::vector<double> unwrap_sequence(std::span<const double> rad) {
    std::vector<double> out(rad.begin(), rad.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        out[i] = out[i - 1] + wrap_angle(rad[i] - rad[i - 1]);
    }
    return out;
}

}  // namespace onebit
