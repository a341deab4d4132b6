#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace onebit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double rad);

/// Sequential unwrap: each output differs from its predecessor by the wrapped
/// difference of the inputs, so jumps larger than pi are folded back.
std::vector<double> unwrap_sequence(std::span<const double> rad);

}  // namespace onebit
