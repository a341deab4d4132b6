#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace onebit {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based seed derivation. The result depends only on the master seed
/// and the path of counters, never on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Stream tags used inside one Monte Carlo trial.
enum class Stream : std::uint64_t {
    pilots = 1,
    data = 2,
    phase = 3,
    noise = 4,
    initial_phase = 5,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream s) {
    return derive_seed(master, {static_cast<std::uint64_t>(s)});
}

}  // namespace onebit
