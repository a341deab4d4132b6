#include "onebit/framing.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

#include "onebit/errors.hpp"
#include "onebit/seeding.hpp"

namespace onebit {

void FrameConfig::validate() const {
    if (pilot_len == 0) throw ConfigError("pilot_len (P) must be positive");
    if (pilot_blocks < 2) throw ConfigError("pilot_blocks (K) must be at least 2");
    if (ftn_factor == 0) throw ConfigError("ftn_factor (M_tx) must be at least 1");
    if (oversampling < ftn_factor)
        throw ConfigError("oversampling (M_rx) must be >= ftn_factor (M_tx)");
    if (oversampling % ftn_factor != 0)
        throw ConfigError("oversampling (M_rx) must be a multiple of ftn_factor (M_tx)");
    if (data_len % (ftn_factor * pilot_len) != 0)
        throw ConfigError("data_len (D) must be divisible by M_tx*P so that Lambda = D/(M_tx*P) is an integer");
    if (min_run() >= rll_kmax)
        throw ConfigError("RLL constraint requires d = M_tx-1 < rll_kmax");
    if (data_len > 0 && data_len < min_run() + 1)
        throw ConfigError("data_len (D) shorter than the minimum run length d+1");
}

std::size_t FrameConfig::data_blocks_per_gap() const { return data_len / (ftn_factor * pilot_len); }

std::size_t FrameConfig::block_count() const {
    return pilot_blocks + (pilot_blocks - 1) * data_blocks_per_gap();
}

bool FrameConfig::is_pilot_block(std::size_t m) const { return m % (data_blocks_per_gap() + 1) == 0; }

std::size_t FrameConfig::pilot_block(std::size_t i) const { return i * (data_blocks_per_gap() + 1); }

SampleRange block_sample_range(const FrameConfig& cfg, std::size_t m) {
    if (m >= cfg.block_count()) {
        throw std::out_of_range("block index " + std::to_string(m) + " out of range (B = " +
                                std::to_string(cfg.block_count()) + ")");
    }
    const std::size_t len = cfg.block_len();
    return {m * len, (m + 1) * len};
}

std::size_t block_of_sample(const FrameConfig& cfg, std::size_t k) { return k / cfg.block_len(); }

std::vector<int> generate_rll_stream(std::size_t d, std::size_t k_max, std::size_t length,
                                     std::uint64_t seed) {
    if (d >= k_max) throw std::invalid_argument("invalid RLL constraint: need d < k_max");
    if (length < d + 1) throw std::invalid_argument("RLL stream length shorter than d+1");

    const std::size_t min_run = d + 1;
    const std::size_t max_run = k_max + 1;

    // tileable[n]: n samples can be split into whole runs of admissible length.
    std::vector<std::uint8_t> tileable(length + 1, 0);
    tileable[0] = 1;
    for (std::size_t n = min_run; n <= length; ++n) {
        for (std::size_t r = min_run; r <= std::min(max_run, n); ++r) {
            if (tileable[n - r]) {
                tileable[n] = 1;
                break;
            }
        }
    }
    if (!tileable[length]) {
        throw std::invalid_argument("no (d,k)-admissible sequence of length " + std::to_string(length));
    }

    // Current run has length `run` and `rest` samples remain to be emitted.
    auto completable = [&](std::size_t run, std::size_t rest) {
        const std::size_t lo = run >= min_run ? 0 : min_run - run;
        const std::size_t hi = std::min(max_run - run, rest);
        for (std::size_t e = lo; e <= hi; ++e) {
            if (tileable[rest - e]) return true;
        }
        return false;
    };

    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> out;
    out.reserve(length);
    int level = coin(rng) ? 1 : -1;
    std::size_t run = 1;
    out.push_back(level);
    for (std::size_t k = 1; k < length; ++k) {
        const std::size_t rest = length - k - 1;
        const bool can_keep = run < max_run && completable(run + 1, rest);
        const bool can_flip = run >= min_run && completable(1, rest);
        bool flip = can_flip;
        if (can_keep && can_flip) flip = coin(rng);
        if (flip) {
            level = -level;
            run = 1;
        } else {
            ++run;
        }
        out.push_back(level);
    }
    return out;
}

std::vector<std::size_t> run_lengths(const std::vector<int>& seq) {
    std::vector<std::size_t> runs;
    std::size_t i = 0;
    while (i < seq.size()) {
        std::size_t j = i + 1;
        while (j < seq.size() && seq[j] == seq[i]) ++j;
        runs.push_back(j - i);
        i = j;
    }
    return runs;
}

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::complex<double> qpsk(bool re_neg, bool im_neg) {
    return {re_neg ? -kInvSqrt2 : kInvSqrt2, im_neg ? -kInvSqrt2 : kInvSqrt2};
}

}  // namespace

std::vector<std::complex<double>> pilot_symbols(const FrameConfig& cfg, std::uint64_t pilot_seed) {
    Rng rng(pilot_seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::complex<double>> out(cfg.pilot_blocks * cfg.pilot_len);
    for (auto& x : out) {
        const bool re = coin(rng);
        const bool im = coin(rng);
        x = qpsk(re, im);
    }
    return out;
}

SymbolFrame build_frame(const FrameConfig& cfg, std::uint64_t pilot_seed, std::uint64_t data_seed) {
    cfg.validate();
    const auto pilots = pilot_symbols(cfg, pilot_seed);
    const std::size_t total = cfg.pilot_blocks * cfg.pilot_len + (cfg.pilot_blocks - 1) * cfg.data_len;

    SymbolFrame frame;
    frame.symbols.reserve(total);
    frame.pilot_mask.reserve(total);
    frame.start_sample.reserve(total);
    frame.period_samples.reserve(total);

    std::size_t cursor = 0;  // sample offset of the next symbol
    auto push = [&](std::complex<double> x, bool pilot, std::size_t period) {
        frame.symbols.push_back(x);
        frame.pilot_mask.push_back(pilot ? 1 : 0);
        frame.start_sample.push_back(cursor);
        frame.period_samples.push_back(period);
        cursor += period;
    };

    for (std::size_t i = 0; i < cfg.pilot_blocks; ++i) {
        for (std::size_t p = 0; p < cfg.pilot_len; ++p) {
            push(pilots[i * cfg.pilot_len + p], true, cfg.oversampling);
        }
        if (i + 1 == cfg.pilot_blocks || cfg.data_len == 0) continue;
        const auto re = generate_rll_stream(cfg.min_run(), cfg.rll_kmax, cfg.data_len,
                                            derive_seed(data_seed, {i, 0}));
        const auto im = generate_rll_stream(cfg.min_run(), cfg.rll_kmax, cfg.data_len,
                                            derive_seed(data_seed, {i, 1}));
        for (std::size_t l = 0; l < cfg.data_len; ++l) {
            push(qpsk(re[l] < 0, im[l] < 0), false, cfg.samples_per_data_symbol());
        }
    }
    return frame;
}

}  // namespace onebit
