#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace onebit::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// score() against the finite difference of the exact 1-bit log-likelihood
/// for `count` random (block, theta, sigma) triples, sigma log-uniform in
/// [1e-3, 10]; relative error < 1e-4.
CheckResult check_score_likelihood(std::size_t count = 1000, std::uint64_t seed = 11);

/// Kalman and RTS moments against batch conditioning for `count` random
/// instances with B <= 12; absolute error <= 1e-10.
CheckResult check_smoother_oracle(std::size_t count = 100, std::uint64_t seed = 12);

/// Wiener increment sample variance inside the 3-sigma chi-square band of
/// 4 K2 pi^2 T_s over `samples` increments.
CheckResult check_wiener_increments(std::size_t samples = 1000000, std::uint64_t seed = 13);

/// STAPN increment variance inside the 3-sigma band of (2/3) L var(zeta_2)
/// over `pairs` disjoint block pairs (K0 = 0).
CheckResult check_stapn_increments(std::size_t pairs = 10000, std::uint64_t seed = 14);

/// kappa_1(0) = c1 exactly; I0, I1 and the fused exp/Q ratio within 1e-6 of
/// 50-digit references; no NaN/Inf in the EM expectation or the score up to
/// Es/N0 = 50 dB.
CheckResult check_special_functions(std::uint64_t seed = 15);

/// Data symbols of generated frames pass the independent run-length checker
/// for d = M_tx - 1 in {0, 2, 4}, at least `symbols` per d.
CheckResult check_rll_streams(std::size_t symbols = 1000000, std::uint64_t seed = 16);

std::vector<CheckResult> run_validation_suite();

}  // namespace onebit::validation
