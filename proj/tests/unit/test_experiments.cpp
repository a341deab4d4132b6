#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "onebit/angles.hpp"
#include "onebit/config_file.hpp"
#include "onebit/errors.hpp"
#include "onebit/experiments.hpp"

using namespace onebit;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.frame.pilot_blocks = 4;
    cfg.esn0_db = {10.0, 30.0};
    cfg.trials = 12;
    cfg.seed = 99;
    return cfg;
}

std::string csv_of(const ExperimentConfig& cfg, std::size_t threads) {
    std::ostringstream os;
    write_csv(os, run_sweep(cfg, threads));
    return os.str();
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("perfect estimate gives zero error") {
    ExperimentConfig cfg;
    cfg.frame.pilot_blocks = 3;
    std::vector<double> theta(cfg.frame.sample_count());
    std::vector<double> block(cfg.frame.block_count());
    for (std::size_t m = 0; m < block.size(); ++m) {
        block[m] = 0.1 * static_cast<double>(m) - 3.0;
        for (std::size_t k = m * 60; k < (m + 1) * 60; ++k) theta[k] = block[m] + (m % 2 ? 2.0 * kPi : 0.0);
    }
    for (Interpolator i : kAllInterpolators) CHECK(mean_squared_error(theta, block, cfg.frame, i) < 1e-28);
}

TEST_CASE("pilot_only averages over pilot samples only") {
    ExperimentConfig cfg;
    cfg.frame.pilot_blocks = 2;
    std::vector<double> theta(cfg.frame.sample_count(), 0.0);
    std::vector<double> block(cfg.frame.block_count(), 0.0);
    block[1] = 1.0;  // data block
    block[4] = 0.5;  // last pilot block
    CHECK(mean_squared_error(theta, block, cfg.frame, Interpolator::pilot_only) == doctest::Approx(0.125));
    CHECK(mean_squared_error(theta, block, cfg.frame, Interpolator::rts) == doctest::Approx((1.0 + 0.25) / 5.0));
    CHECK_THROWS_AS(mean_squared_error(theta, std::vector<double>(3), cfg.frame, Interpolator::rts),
                    std::invalid_argument);
}

TEST_CASE("phase-noise-free chain at 40 dB: residual from 1-bit dither only") {
    ExperimentConfig cfg;
    cfg.k2 = 0.0;
    cfg.k0_db = -1000.0;
    cfg.esn0_db = {40.0};
    cfg.trials = 20;
    const auto sweep = run_sweep(cfg, 1);
    CHECK(sweep.degenerate_ls == 0);
    const double bound = fisher_info_inv({1.0, 1e-4, cfg.frame.oversampling, cfg.frame.pilot_len});
    for (const auto& row : sweep.rows) {
        CAPTURE(to_string(row.algorithm));
        CAPTURE(to_string(row.interpolator));
        if (row.algorithm == Algorithm::ls) {
            // Quantization bias floor of the linear estimator.
            CHECK(row.mse < 2e-3);
        } else {
            CHECK(row.mse < 1e-3);
        }
        if (row.interpolator == Interpolator::pilot_only) CHECK(row.mse > 0.5 * bound);
    }
}

TEST_CASE("trial outputs are complete and reproducible") {
    const auto cfg = small_config();
    const auto a = run_trial(cfg, 20.0, 5);
    const auto b = run_trial(cfg, 20.0, 5);
    for (Algorithm al : kAllAlgorithms) {
        for (Interpolator i : kAllInterpolators) {
            CHECK(std::isfinite(a.at(al, i)));
            CHECK(a.at(al, i) >= 0.0);
            CHECK(a.at(al, i) == b.at(al, i));
        }
    }
}

TEST_CASE("unrequested combinations are NaN") {
    auto cfg = small_config();
    cfg.algorithms = {Algorithm::em};
    cfg.modes = {Interpolator::rts};
    const auto r = run_trial(cfg, 20.0, 5);
    CHECK(std::isfinite(r.at(Algorithm::em, Interpolator::rts)));
    CHECK(std::isnan(r.at(Algorithm::ls, Interpolator::rts)));
    CHECK(std::isnan(r.at(Algorithm::em, Interpolator::kalman)));
}

TEST_CASE("one trial sweep reproduces run_trial") {
    auto cfg = small_config();
    cfg.trials = 1;
    const auto sweep = run_sweep(cfg, 1);
    const auto trial = run_trial(cfg, 10.0, trial_seed(cfg, 0));
    REQUIRE(sweep.rows.size() == 2 * 9);
    for (std::size_t j = 0; j < 9; ++j) {
        const auto& row = sweep.rows[j];
        CHECK(row.esn0_db == 10.0);
        CHECK(row.trials == 1);
        CHECK(row.stderr_mse == 0.0);
        CHECK(row.mse == trial.at(row.algorithm, row.interpolator));
    }
}

TEST_CASE("sweep output is independent of the worker count") {
    const auto cfg = small_config();
    const auto one = csv_of(cfg, 1);
    CHECK(one == csv_of(cfg, 3));
    CHECK(one == csv_of(cfg, 8));
}

TEST_CASE("trial seeds do not depend on the grid point") {
    const auto cfg = small_config();
    CHECK(trial_seed(cfg, 3) == trial_seed(cfg, 3));
    CHECK(trial_seed(cfg, 3) != trial_seed(cfg, 4));
    auto other = cfg;
    other.seed = 100;
    CHECK(trial_seed(cfg, 3) != trial_seed(other, 3));
    // Same frame and phase trajectory at two Es/N0 points.
    const auto lo = run_trial_traced(cfg, 6.0, trial_seed(cfg, 2));
    const auto hi = run_trial_traced(cfg, 40.0, trial_seed(cfg, 2));
    CHECK(lo.phase.theta == hi.phase.theta);
}

TEST_CASE("stderr scales with the trial count") {
    auto cfg = small_config();
    cfg.esn0_db = {20.0};
    cfg.algorithms = {Algorithm::ls};
    cfg.modes = {Interpolator::rts};
    cfg.trials = 100;
    const auto a = run_sweep(cfg, 1).rows.at(0);
    cfg.trials = 400;
    const auto b = run_sweep(cfg, 1).rows.at(0);
    const double ratio = (a.stderr_mse * a.stderr_mse) / (b.stderr_mse * b.stderr_mse);
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("summary statistics") {
    std::vector<TrialResult> trials(4);
    const double values[] = {1.0, 2.0, 3.0, 6.0};
    for (std::size_t i = 0; i < 4; ++i) trials[i].mse[0][0] = values[i];
    const auto row = summarize(trials, 12.0, Algorithm::ls, Interpolator::pilot_only);
    CHECK(row.mse == 3.0);
    CHECK(row.stderr_mse == doctest::Approx(std::sqrt(14.0 / 3.0 / 4.0)));
    CHECK(row.trials == 4);
}

TEST_CASE("CSV format") {
    SweepResult r;
    r.rows.push_back({10.0, Algorithm::scoring, Interpolator::kalman, 0.00125, 1e-5, 200});
    std::ostringstream os;
    write_csv(os, r);
    CHECK(os.str() == "esn0_db,algorithm,interpolator,mse,stderr,trials\n10,scoring,kalman,0.00125,1.0000000000000001e-05,200\n");
}

TEST_CASE("undamped scoring at 40 dB records non-convergence instead of NaN") {
    auto cfg = small_config();
    cfg.damping = 1.0;
    cfg.esn0_db = {40.0};
    cfg.algorithms = {Algorithm::scoring};
    const auto sweep = run_sweep(cfg, 1);
    CHECK(sweep.scoring_nonconverged > 0);
    for (const auto& row : sweep.rows) CHECK(std::isfinite(row.mse));
}

TEST_CASE("default configuration documents the white-noise study") {
    const ExperimentConfig cfg;
    CHECK(cfg.frame.pilot_len == 60);
    CHECK(cfg.frame.data_len == 180);
    CHECK(cfg.iterations == 20);
    CHECK(cfg.damping == 0.05);
    CHECK(cfg.k2 == 800.0);
    CHECK(cfg.k0_db == -130.0);
    CHECK(cfg.tx_pulse == PulseKind::rectangular);
    CHECK(cfg.if_cycles_per_sample == doctest::Approx(std::sqrt(2.0) / 100.0));
    const auto ftn = ftn_config(5);
    CHECK(ftn.frame.data_blocks_per_gap() == 20);
    CHECK(ftn.damping == 0.4);
    CHECK(ftn.rx_filter == PulseKind::root_raised_cosine);
    ftn.validate();
}

TEST_CASE("invalid experiment configurations") {
    ExperimentConfig cfg;
    SUBCASE("zero trials") { cfg.trials = 0; }
    SUBCASE("empty grid") { cfg.esn0_db.clear(); }
    SUBCASE("damping") { cfg.damping = 0.0; }
    SUBCASE("frame") { cfg.frame.data_len = 7; }
    SUBCASE("no modes") { cfg.modes.clear(); }
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("interpolator names") {
    CHECK(parse_interpolator("rts") == Interpolator::rts);
    CHECK(to_string(Interpolator::pilot_only) == "pilot_only");
    CHECK_THROWS_AS(parse_interpolator("ukf"), ConfigError);
}

TEST_CASE("thread count honours ONEBIT_THREADS as a cap") {
    ::setenv("ONEBIT_THREADS", "1", 1);
    CHECK(default_thread_count() == 1);
    ::setenv("ONEBIT_THREADS", "junk", 1);
    CHECK(default_thread_count() >= 1);
    ::unsetenv("ONEBIT_THREADS");
    CHECK(default_thread_count() >= 1);
}

}  // TEST_SUITE
