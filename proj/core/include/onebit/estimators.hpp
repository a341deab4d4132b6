#pragma once

// Data-aided phase estimation on one pilot block from 1-bit samples r[k] and
// the noise-free reference s[k]:
//   LS       arg(sum s*[k] r[k])
//   EM       fixed-point iteration on the conditional-mean noise estimate
//   Scoring  damped Newton/Fisher-scoring step with the phase-independent
//            inverse Fisher information as step scale.
// All outputs are wrapped to (-pi, pi].

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "onebit/impairments.hpp"

namespace onebit {

struct PilotBlockView {
    std::span<const OneBitSample> r;
    std::span<const std::complex<double>> s;
    double noise_var = 1.0;  ///< sigma^2 = N0 / T_s

    double sigma() const;
    void check() const;  ///< equal lengths, non-empty
};

enum class Algorithm { ls, em, scoring };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);

struct EstimatorSettings {
    Algorithm algorithm = Algorithm::ls;
    std::size_t iterations = 20;
    double damping = 0.05;  ///< epsilon in (0, 1], scoring only
};

inline constexpr double kKappaC1 = 4.0360;
inline constexpr double kKappaC2 = 0.3930;

struct FisherInfoParams {
    double es = 1.0;
    double n0 = 1.0;
    std::size_t oversampling = 1;  ///< M_rx
    std::size_t pilot_len = 60;    ///< P
    double c1 = kKappaC1;
    double c2 = kKappaC2;
};

/// kappa_1(x) = c1 e^{-c2 x} (I0(c2 x) + I1(c2 x)).
double kappa1(double x, double c1 = kKappaC1, double c2 = kKappaC2);

/// Lower bound on the inverse Fisher information for a constant phase,
/// ((1/pi) kappa_1(Es/(N0 M_rx)) (Es/N0) P)^{-1}, in rad^2.
/// Throws std::domain_error for non-positive Es or N0.
double fisher_info_inv(const FisherInfoParams& p);

/// nullopt when the correlation sum is exactly zero (uninformative block).
std::optional<double> ls_estimate(const PilotBlockView& view);

/// E[w | r, s_theta] for one sample (real and imaginary parts independent).
std::complex<double> em_noise_expectation(OneBitSample r, std::complex<double> s_theta, double sigma);

/// Exactly `iterations` EM updates starting from `init`; no early stopping.
double em_estimate(const PilotBlockView& view, double init, std::size_t iterations);

/// Fisher score V(theta), the derivative of the exact 1-bit log-likelihood.
double score(const PilotBlockView& view, double theta);

struct ScoringResult {
    double estimate = 0.0;
    double last_step = 0.0;  ///< magnitude of the final update, rad
    bool finite = true;      ///< false if a non-finite score stopped the iteration
    bool converged = true;   ///< finite and last_step below the divergence threshold
};

inline constexpr double kScoringDivergenceThreshold = 0.1;  // rad

/// Exactly `iterations` updates theta += damping * fi_inv * V(theta).
ScoringResult scoring_estimate(const PilotBlockView& view, double init, std::size_t iterations,
                               double damping, double fi_inv);

struct BlockEstimate {
    double phase = 0.0;
    bool degenerate = false;  ///< LS sum was zero, 0 rad substituted
    bool converged = true;
};

/// LS initialisation followed by the configured refinement.
BlockEstimate estimate_block(const PilotBlockView& view, const EstimatorSettings& settings, double fi_inv);

}  // namespace onebit
