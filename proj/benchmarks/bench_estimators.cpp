#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "onebit/estimators.hpp"
#include "onebit/special_functions.hpp"
#include "onebit/tracking.hpp"

namespace {

struct Block {
    std::vector<onebit::OneBitSample> r;
    std::vector<std::complex<double>> s;
    double noise_var;
};

Block make_block(std::size_t len, double esn0_db) {
    std::mt19937_64 rng(42);
    std::bernoulli_distribution bit(0.5);
    const double sigma = std::sqrt(std::pow(10.0, -esn0_db / 10.0));
    std::normal_distribution<double> noise(0.0, sigma / std::sqrt(2.0));
    Block b{{}, {}, sigma * sigma};
    const auto rot = std::polar(1.0, 0.3);
    for (std::size_t k = 0; k < len; ++k) {
        const std::complex<double> s{bit(rng) ? M_SQRT1_2 : -M_SQRT1_2, bit(rng) ? M_SQRT1_2 : -M_SQRT1_2};
        b.s.push_back(s);
        b.r.push_back(onebit::quantize_1bit(s * rot + std::complex<double>(noise(rng), noise(rng))));
    }
    return b;
}

void BM_QRatio(benchmark::State& state) {
    double a = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(onebit::q_ratio(a));
        a = a > 30.0 ? -5.0 : a + 0.37;
    }
}
BENCHMARK(BM_QRatio);

void BM_LsEstimate(benchmark::State& state) {
    const auto b = make_block(static_cast<std::size_t>(state.range(0)), 20.0);
    const onebit::PilotBlockView view{b.r, b.s, b.noise_var};
    for (auto _ : state) benchmark::DoNotOptimize(onebit::ls_estimate(view));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LsEstimate)->Arg(30)->Arg(60)->Arg(300);

void BM_Score(benchmark::State& state) {
    const auto b = make_block(static_cast<std::size_t>(state.range(0)), 20.0);
    const onebit::PilotBlockView view{b.r, b.s, b.noise_var};
    for (auto _ : state) benchmark::DoNotOptimize(onebit::score(view, 0.25));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Score)->Arg(30)->Arg(60)->Arg(300);

void BM_EmEstimate(benchmark::State& state) {
    const auto b = make_block(60, 20.0);
    const onebit::PilotBlockView view{b.r, b.s, b.noise_var};
    for (auto _ : state) benchmark::DoNotOptimize(onebit::em_estimate(view, 0.0, 20));
}
BENCHMARK(BM_EmEstimate);

void BM_ScoringEstimate(benchmark::State& state) {
    const auto b = make_block(60, 20.0);
    const onebit::PilotBlockView view{b.r, b.s, b.noise_var};
    const double fi_inv = onebit::fisher_info_inv({1.0, 0.01, 1, 60});
    for (auto _ : state) benchmark::DoNotOptimize(onebit::scoring_estimate(view, 0.0, 20, 0.05, fi_inv));
}
BENCHMARK(BM_ScoringEstimate);

void BM_RtsSmooth(benchmark::State& state) {
    const auto blocks = static_cast<std::size_t>(state.range(0));
    onebit::BlockObservationSeq obs(blocks);
    for (std::size_t m = 0; m < blocks; m += 4) obs[m] = 0.01 * static_cast<double>(m);
    const onebit::StapnModel model{1e-3, 3e-3, 0.0, 1e4};
    for (auto _ : state) {
        const auto filtered = onebit::kalman_forward(obs, model);
        benchmark::DoNotOptimize(onebit::rts_smooth(filtered, model));
    }
}
BENCHMARK(BM_RtsSmooth)->Arg(37)->Arg(1000);

}  // namespace
