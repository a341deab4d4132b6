#pragma once

// Block-structured transmit frame: K pilot blocks of P known QPSK symbols,
// separated by gaps of D run-length-limited data symbols. Every block, pilot
// or data, spans P*M_rx samples; a gap holds Lambda = D/(M_tx*P) data blocks.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace onebit {

struct FrameConfig {
    std::size_t pilot_len = 60;     ///< P, pilot symbols per pilot block
    std::size_t data_len = 180;     ///< D, data symbols per gap
    std::size_t ftn_factor = 1;     ///< M_tx
    std::size_t oversampling = 1;   ///< M_rx = T / T_s
    std::size_t pilot_blocks = 10;  ///< K
    std::size_t rll_kmax = 7;       ///< k of the (d,k) constraint

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    std::size_t min_run() const { return ftn_factor - 1; }  ///< d = M_tx - 1
    std::size_t data_blocks_per_gap() const;                ///< Lambda
    std::size_t block_count() const;                        ///< B = K + (K-1)*Lambda
    std::size_t block_len() const { return pilot_len * oversampling; }
    std::size_t sample_count() const { return block_count() * block_len(); }
    std::size_t samples_per_data_symbol() const { return oversampling / ftn_factor; }

    bool is_pilot_block(std::size_t m) const;
    /// Block index of the i-th pilot block.
    std::size_t pilot_block(std::size_t i) const;
};

/// Half-open interval of sample indices.
struct SampleRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
    bool operator==(const SampleRange&) const = default;
};

/// Samples covered by block m: [m*L, (m+1)*L). Throws std::out_of_range.
SampleRange block_sample_range(const FrameConfig& cfg, std::size_t m);

/// Block containing sample k.
std::size_t block_of_sample(const FrameConfig& cfg, std::size_t k);

/// Antipodal +-1 sequence whose maximal runs all have length in
/// [d+1, k_max+1], i.e. the NRZI image of a (d, k_max) sequence. At each
/// sample the generator picks uniformly among the admissible continuations
/// (keep level / flip) that still allow the remaining samples to be completed.
std::vector<int> generate_rll_stream(std::size_t d, std::size_t k_max, std::size_t length,
                                     std::uint64_t seed);

/// Lengths of the maximal runs of identical values.
std::vector<std::size_t> run_lengths(const std::vector<int>& seq);

struct SymbolFrame {
    std::vector<std::complex<double>> symbols;
    std::vector<std::uint8_t> pilot_mask;
    std::vector<std::size_t> start_sample;    ///< sample index where symbol l starts
    std::vector<std::size_t> period_samples;  ///< M_rx for pilots, M_rx/M_tx for data
};

/// Uniformly random QPSK pilots for all K pilot blocks, reproducible from the seed.
std::vector<std::complex<double>> pilot_symbols(const FrameConfig& cfg, std::uint64_t pilot_seed);

SymbolFrame build_frame(const FrameConfig& cfg, std::uint64_t pilot_seed, std::uint64_t data_seed);

}  // namespace onebit
