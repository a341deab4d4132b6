#include <benchmark/benchmark.h>

#include "onebit/experiments.hpp"

namespace {

void BM_TrialDefault(benchmark::State& state) {
    onebit::ExperimentConfig cfg;
    cfg.frame.pilot_blocks = static_cast<std::size_t>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(onebit::run_trial(cfg, 20.0, onebit::trial_seed(cfg, i++)));
}
BENCHMARK(BM_TrialDefault)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_TrialFtn(benchmark::State& state) {
    const auto cfg = onebit::ftn_config(static_cast<std::size_t>(state.range(0)));
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(onebit::run_trial(cfg, 20.0, onebit::trial_seed(cfg, i++)));
}
BENCHMARK(BM_TrialFtn)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
