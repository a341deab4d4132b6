#pragma once

// Pulse shaping and the noise-free reference signal s[k].
//
// Continuous-time convolutions are evaluated on the T_s grid:
//   (g * x)(k T_s) ~= T_s * sum_i g[i] x[k - (i - origin)]
// where `origin` is the tap index of t = 0. Because every filter carries its
// own origin, output sample k is aligned with t = k*T_s and the combined group
// delay (origin_h + origin_g samples) is compensated implicitly. Edge samples
// see only the in-frame symbols; nothing outside [0, N) is kept.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "onebit/framing.hpp"

namespace onebit {

enum class PulseKind { rectangular, root_raised_cosine };

enum class PulseNormalization {
    unit_energy,   ///< T_s * sum |h|^2 = 1 (transmit pulse, E_s = 1 for QPSK)
    unit_dc_gain,  ///< T_s * sum g = 1 (receive filter, in-band noise PSD stays N0)
};

PulseKind parse_pulse_kind(std::string_view name);
std::string_view to_string(PulseKind kind);

struct PulseShape {
    PulseKind kind = PulseKind::rectangular;
    double rolloff = 0.0;
    std::size_t span = 0;  ///< truncation length in symbol periods (RRC)
    double symbol_period = 1.0;
    double sample_period = 1.0;
    std::size_t samples_per_symbol = 1;
    std::vector<double> taps;
    std::size_t origin = 0;

    double energy() const;   ///< integral |h|^2 dt on the grid
    double dc_gain() const;  ///< integral h dt on the grid
    /// Single-sided bandwidth: (1+alpha)/(2T) for RRC, 1/(2T_s) for a
    /// rectangular filter one sample long, 1/(2T) otherwise.
    double bandwidth() const;
};

/// Closed-form RRC impulse response with unit-energy scaling 1/sqrt(T),
/// including the removable singularities at t = 0 and |t| = T/(4 alpha).
double rrc_impulse(double t, double symbol_period, double rolloff);

PulseShape make_pulse(PulseKind kind, double rolloff, double symbol_period, double sample_period,
                      std::size_t span = 16,
                      PulseNormalization norm = PulseNormalization::unit_energy);

/// Receive filter g. Rectangular means the filter matched to the sampling
/// rate (W_g = 1/(2T_s)): a single tap of 1/T_s.
PulseShape make_receive_filter(PulseKind kind, double rolloff, double symbol_period,
                               double sample_period, std::size_t span = 16);

/// Same-length grid convolution with origin alignment (see file comment).
std::vector<std::complex<double>> apply_filter(std::span<const std::complex<double>> x,
                                               const PulseShape& g);

struct ReferenceSignal {
    /// u[k] e^{j 2 pi f_IF k T_s}: transmit signal after IF rotation, before g.
    std::vector<std::complex<double>> transmit;
    /// s[k]: noise-free, phase-noise-free receive samples (after g).
    std::vector<std::complex<double>> samples;
    double sample_period = 1.0;
    double if_cycles_per_sample = 0.0;  ///< f_IF * T_s
};

ReferenceSignal modulate(const SymbolFrame& frame, const PulseShape& h, const PulseShape& g,
                         const FrameConfig& cfg, double if_cycles_per_sample);

}  // namespace onebit
