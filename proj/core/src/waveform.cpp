#include "onebit/waveform.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "onebit/angles.hpp"
#include "onebit/errors.hpp"

namespace onebit {

PulseKind parse_pulse_kind(std::string_view name) {
    if (name == "rectangular" || name == "rect") return PulseKind::rectangular;
    if (name == "rrc" || name == "root_raised_cosine") return PulseKind::root_raised_cosine;
    throw ConfigError("unsupported pulse kind '" + std::string(name) + "'");
}

std::string_view to_string(PulseKind kind) {
    return kind == PulseKind::rectangular ? "rectangular" : "rrc";
}

double PulseShape::energy() const {
    double e = 0.0;
    for (double h : taps) e += h * h;
    return e * sample_period;
}

double PulseShape::dc_gain() const {
    return std::accumulate(taps.begin(), taps.end(), 0.0) * sample_period;
}

double PulseShape::bandwidth() const {
    if (kind == PulseKind::root_raised_cosine) return (1.0 + rolloff) / (2.0 * symbol_period);
    return 1.0 / (2.0 * sample_period * static_cast<double>(taps.size()));
}

double rrc_impulse(double t, double symbol_period, double rolloff) {
    const double T = symbol_period;
    const double a = rolloff;
    const double scale = 1.0 / std::sqrt(T);
    const double x = t / T;
    constexpr double pi = std::numbers::pi;

    if (std::abs(x) < 1e-12) return scale * (1.0 - a + 4.0 * a / pi);
    if (a > 0.0 && std::abs(std::abs(4.0 * a * x) - 1.0) < 1e-10) {
        return scale * (a / std::numbers::sqrt2) *
               ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * a)) + (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * a)));
    }
    const double num = std::sin(pi * x * (1.0 - a)) + 4.0 * a * x * std::cos(pi * x * (1.0 + a));
    const double den = pi * x * (1.0 - (4.0 * a * x) * (4.0 * a * x));
    return scale * num / den;
}

namespace {

std::size_t oversampling_ratio(double symbol_period, double sample_period) {
    if (!(symbol_period > 0.0) || !(sample_period > 0.0))
        throw ConfigError("symbol and sample periods must be positive");
    const double ratio = symbol_period / sample_period;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
        throw ConfigError("T/T_s must be an integer oversampling ratio");
    return static_cast<std::size_t>(rounded);
}

void normalize(PulseShape& p, PulseNormalization norm) {
    const double current = norm == PulseNormalization::unit_energy ? std::sqrt(p.energy()) : p.dc_gain();
    for (double& h : p.taps) h /= current;
}

}  // namespace

PulseShape make_pulse(PulseKind kind, double rolloff, double symbol_period, double sample_period,
                      std::size_t span, PulseNormalization norm) {
    PulseShape p;
    p.kind = kind;
    p.symbol_period = symbol_period;
    p.sample_period = sample_period;
    p.samples_per_symbol = oversampling_ratio(symbol_period, sample_period);

    switch (kind) {
    case PulseKind::rectangular:
        p.taps.assign(p.samples_per_symbol, 1.0 / std::sqrt(symbol_period));
        p.origin = 0;
        break;
    case PulseKind::root_raised_cosine: {
        if (rolloff < 0.0 || rolloff > 1.0) throw ConfigError("RRC rolloff must lie in [0, 1]");
        if (span < 4) throw ConfigError("RRC span must be at least 4 symbol periods");
        p.rolloff = rolloff;
        p.span = span;
        const std::size_t half = span * p.samples_per_symbol / 2;
        p.origin = half;
        p.taps.resize(2 * half + 1);
        for (std::size_t i = 0; i < p.taps.size(); ++i) {
            const double t = (static_cast<double>(i) - static_cast<double>(half)) * sample_period;
            p.taps[i] = rrc_impulse(t, symbol_period, rolloff);
        }
        break;
    }
    }
    normalize(p, norm);
    return p;
}

PulseShape make_receive_filter(PulseKind kind, double rolloff, double symbol_period,
                               double sample_period, std::size_t span) {
    if (kind == PulseKind::rectangular) {
        // One sample long: matched to the sampling rate.
        PulseShape g = make_pulse(kind, 0.0, sample_period, sample_period, 0,
                                  PulseNormalization::unit_dc_gain);
        g.symbol_period = symbol_period;
        return g;
    }
    return make_pulse(kind, rolloff, symbol_period, sample_period, span, PulseNormalization::unit_dc_gain);
}

std::vector<std::complex<double>> apply_filter(std::span<const std::complex<double>> x,
                                               const PulseShape& g) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto origin = static_cast<std::ptrdiff_t>(g.origin);
    std::vector<std::complex<double>> y(x.size());
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < g.taps.size(); ++i) {
            const std::ptrdiff_t src = k - (static_cast<std::ptrdiff_t>(i) - origin);
            if (src < 0 || src >= n) continue;
            acc += g.taps[i] * x[static_cast<std::size_t>(src)];
        }
        y[static_cast<std::size_t>(k)] = acc * g.sample_period;
    }
    return y;
}

ReferenceSignal modulate(const SymbolFrame& frame, const PulseShape& h, const PulseShape& g,
                         const FrameConfig& cfg, double if_cycles_per_sample) {
    const std::size_t n = cfg.sample_count();
    if (frame.symbols.size() != frame.start_sample.size() ||
        frame.symbols.size() != cfg.pilot_blocks * cfg.pilot_len + (cfg.pilot_blocks - 1) * cfg.data_len) {
        throw std::invalid_argument("symbol frame does not match the frame configuration");
    }
    if (h.samples_per_symbol != cfg.oversampling)
        throw std::invalid_argument("transmit pulse oversampling differs from M_rx");

    ReferenceSignal ref;
    ref.sample_period = h.sample_period;
    ref.if_cycles_per_sample = if_cycles_per_sample;
    ref.transmit.assign(n, {0.0, 0.0});

    const auto origin = static_cast<std::ptrdiff_t>(h.origin);
    const auto len = static_cast<std::ptrdiff_t>(n);
    for (std::size_t l = 0; l < frame.symbols.size(); ++l) {
        const auto start = static_cast<std::ptrdiff_t>(frame.start_sample[l]);
        for (std::size_t i = 0; i < h.taps.size(); ++i) {
            const std::ptrdiff_t k = start + static_cast<std::ptrdiff_t>(i) - origin;
            if (k < 0 || k >= len) continue;
            ref.transmit[static_cast<std::size_t>(k)] += frame.symbols[l] * h.taps[i];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double cycles = std::fmod(if_cycles_per_sample * static_cast<double>(k), 1.0);
        ref.transmit[k] *= std::polar(1.0, kTwoPi * cycles);
    }
    ref.samples = apply_filter(ref.transmit, g);
    return ref;
}

}  // namespace onebit
