#include "onebit/impairments.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "onebit/seeding.hpp"

namespace onebit {

double PhaseNoiseParams::white_variance() const { return 2.0 * k0 * rx_bandwidth; }

double PhaseNoiseParams::increment_variance() const {
    return 4.0 * k2 * std::numbers::pi * std::numbers::pi * sample_period;
}

PhaseTrajectory generate_phase(const PhaseNoiseParams& params, std::size_t n, std::uint64_t seed) {
    if (params.k0 < 0.0 || params.k2 < 0.0) throw std::invalid_argument("phase noise PSD levels must be non-negative");
    if (n == 0) throw std::invalid_argument("phase trajectory length must be positive");

    // Separate streams so each component is reproducible on its own.
    Rng wiener_rng(derive_seed(seed, {0}));
    Rng white_rng(derive_seed(seed, {1}));
    std::normal_distribution<double> wiener_normal(0.0, 1.0);
    std::normal_distribution<double> white_normal(0.0, 1.0);
    const double zeta_std = std::sqrt(params.increment_variance());
    const double white_std = std::sqrt(params.white_variance());

    PhaseTrajectory out;
    out.theta.resize(n);
    out.theta2.resize(n);
    double walk = params.initial_phase;
    for (std::size_t k = 0; k < n; ++k) {
        if (zeta_std > 0.0) walk += zeta_std * wiener_normal(wiener_rng);
        out.theta2[k] = walk;
        const double white = white_std > 0.0 ? white_std * white_normal(white_rng) : 0.0;
        out.theta[k] = walk + white;
    }
    return out;
}

double stapn(const PhaseTrajectory& trajectory, const FrameConfig& cfg, std::size_t m) {
    const SampleRange range = block_sample_range(cfg, m);
    if (range.end > trajectory.theta.size()) throw std::out_of_range("block exceeds phase trajectory");
    double sum = 0.0;
    for (std::size_t k = range.begin; k < range.end; ++k) sum += trajectory.theta[k];
    return sum / static_cast<double>(range.size());
}

std::vector<std::complex<double>> apply_channel(const ReferenceSignal& ref, const PhaseTrajectory& trajectory,
                                                double n0, const PulseShape& g, std::uint64_t seed) {
    const std::size_t n = ref.transmit.size();
    if (trajectory.theta.size() != n || ref.samples.size() != n)
        throw std::invalid_argument("signal and phase trajectory lengths differ");
    if (n0 < 0.0) throw std::invalid_argument("noise PSD N0 must be non-negative");

    std::vector<std::complex<double>> rotated(n);
    for (std::size_t k = 0; k < n; ++k) rotated[k] = ref.transmit[k] * std::polar(1.0, trajectory.theta[k]);
    std::vector<std::complex<double>> y = apply_filter(rotated, g);
    if (n0 == 0.0) return y;

    // White noise on an extended grid so every output sample sees a full
    // filter history, then coloured by g (T_s * sum g = 1 keeps in-band PSD N0).
    const std::size_t pad = g.taps.size() - 1;
    const std::size_t lead = pad - g.origin;
    Rng rng(seed);
    const double component_std = std::sqrt(n0 / (2.0 * ref.sample_period));
    std::normal_distribution<double> normal(0.0, component_std);
    std::vector<std::complex<double>> white(n + pad);
    for (auto& w : white) {
        const double re = normal(rng);
        const double im = normal(rng);
        w = {re, im};
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < g.taps.size(); ++i) acc += g.taps[i] * white[k + lead + g.origin - i];
        y[k] += acc * g.sample_period;
    }
    return y;
}

OneBitSample quantize_1bit(std::complex<double> y) {
    return {static_cast<std::int8_t>(y.real() < 0.0 ? -1 : 1), static_cast<std::int8_t>(y.imag() < 0.0 ? -1 : 1)};
}

QuantizedStream quantize_1bit(std::span<const std::complex<double>> y) {
    QuantizedStream out(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = quantize_1bit(y[k]);
    return out;
}

}  // namespace onebit
