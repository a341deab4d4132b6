#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "onebit/framing.hpp"
#include "onebit/waveform.hpp"

namespace onebit {

/// Oscillator phase noise: white component theta_0 plus Wiener component
/// theta_2. The flicker (cubic) component is not modelled.
struct PhaseNoiseParams {
    double k0 = 1e-13;          ///< white PSD level, rad^2/Hz
    double k2 = 800.0;          ///< Wiener PSD coefficient, rad^2 Hz
    double sample_period = 1e-9;
    double rx_bandwidth = 5e8;  ///< single-sided W_g, Hz
    double initial_phase = 0.0;

    /// var(theta_0[k]) = 2 K0 W_g
    double white_variance() const;
    /// var(zeta_2[k]) = 4 K2 pi^2 T_s
    double increment_variance() const;

    static double k0_from_db(double db) { return std::pow(10.0, db / 10.0); }
};

struct PhaseTrajectory {
    std::vector<double> theta;   ///< theta_0 + theta_2
    std::vector<double> theta2;  ///< Wiener part alone
};

PhaseTrajectory generate_phase(const PhaseNoiseParams& params, std::size_t n, std::uint64_t seed);

/// Sampled time-averaged phase noise: mean of theta over the samples of block m.
double stapn(const PhaseTrajectory& trajectory, const FrameConfig& cfg, std::size_t m);

/// Receive samples y[k]: the IF-rotated transmit signal is rotated by
/// e^{j theta[k]}, passed through g, and filtered complex white Gaussian noise
/// of per-sample variance N0/T_s (in-band PSD N0) is added. N0 = 0 disables noise.
std::vector<std::complex<double>> apply_channel(const ReferenceSignal& ref, const PhaseTrajectory& trajectory,
                                                double n0, const PulseShape& g, std::uint64_t seed);

struct OneBitSample {
    std::int8_t re = 1;
    std::int8_t im = 1;

    std::complex<double> value() const { return {static_cast<double>(re), static_cast<double>(im)}; }
    bool operator==(const OneBitSample&) const = default;
};

using QuantizedStream = std::vector<OneBitSample>;

/// r[k] = sign(Re y) + j sign(Im y), with sign(0) = +1.
OneBitSample quantize_1bit(std::complex<double> y);
QuantizedStream quantize_1bit(std::span<const std::complex<double>> y);

}  // namespace onebit
