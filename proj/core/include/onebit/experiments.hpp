#pragma once

// Monte Carlo harness for the three-stage estimator
//   pilot-block LS -> optional EM / scoring refinement -> Kalman / RTS interpolation
// and the sample-averaged squared error
//   xi = (1/N) sum_k (theta[k] - theta_tilde(m(k)))^2.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/config_file.hpp"
#include "onebit/estimators.hpp"
#include "onebit/framing.hpp"
#include "onebit/impairments.hpp"
#include "onebit/tracking.hpp"
#include "onebit/waveform.hpp"

namespace onebit {

enum class Interpolator { pilot_only, kalman, rts };

Interpolator parse_interpolator(std::string_view name);
std::string_view to_string(Interpolator i);

inline constexpr std::array<Algorithm, 3> kAllAlgorithms{Algorithm::ls, Algorithm::em, Algorithm::scoring};
inline constexpr std::array<Interpolator, 3> kAllInterpolators{Interpolator::pilot_only, Interpolator::kalman,
                                                               Interpolator::rts};

/// Defaults reproduce the white-noise error-variance study: rectangular
/// filters, M_tx = M_rx = 1, P = 60, D = 180, K2 = 800, K0 = -130 dB,
/// 20 iterations, damping 0.05.
struct ExperimentConfig {
    FrameConfig frame;

    PulseKind tx_pulse = PulseKind::rectangular;
    PulseKind rx_filter = PulseKind::rectangular;
    double rolloff = 0.6;
    std::size_t span = 16;
    double symbol_period = 1.5e-10;                   ///< T, seconds
    double if_cycles_per_sample = std::numbers::sqrt2 / 100.0;  ///< f_IF * T_s

    double k0_db = -130.0;
    double k2 = 800.0;
    std::optional<double> initial_phase;  ///< unset: uniform in (-pi, pi] per trial

    std::size_t iterations = 20;
    double damping = 0.05;

    std::optional<double> obs_var;  ///< overrides r_obs = fisher_info_inv

    std::vector<double> esn0_db = default_esn0_grid();
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
    std::vector<Interpolator> modes{kAllInterpolators.begin(), kAllInterpolators.end()};

    double sample_period() const { return symbol_period / static_cast<double>(frame.oversampling); }
    void validate() const;

    static std::vector<double> default_esn0_grid();  ///< 6, 8, ..., 40 dB
};

/// FTN configuration: RRC alpha = 0.6 transmit and receive filters,
/// M_rx = M_tx, P = 30, D = 600 M_tx, K2 = 1200, damping 0.4.
ExperimentConfig ftn_config(std::size_t ftn_factor);

/// Overlays the keys present in `file` onto `base`; unknown keys are errors.
ExperimentConfig experiment_from_file(const ConfigFile& file, ExperimentConfig base = {});

/// Renders every key with its resolved value in the config file format.
std::string render_config(const ExperimentConfig& cfg);

struct TrialResult {
    /// [algorithm][interpolator]; NaN where the combination was not requested.
    std::array<std::array<double, 3>, 3> mse{};
    std::size_t degenerate_ls = 0;
    std::size_t scoring_nonconverged = 0;

    double at(Algorithm a, Interpolator i) const {
        return mse[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    }
};

/// Error between the true per-sample phase and a per-block phase estimate
/// (one value per block). pilot_only averages over pilot-block samples only.
/// Differences are wrapped to (-pi, pi].
double mean_squared_error(std::span<const double> theta, std::span<const double> block_phase,
                          const FrameConfig& cfg, Interpolator mode);

/// Per-block phase estimates for every algorithm and interpolator of one trial.
struct TrialTrace {
    PhaseTrajectory phase;
    std::array<std::vector<double>, 3> pilot_estimates;                  ///< [algorithm], unwrapped
    std::array<std::array<std::vector<double>, 3>, 3> block_phase;       ///< [algorithm][interpolator]
    TrialResult result;
};

TrialTrace run_trial_traced(const ExperimentConfig& cfg, double esn0_db, std::uint64_t trial_seed);
TrialResult run_trial(const ExperimentConfig& cfg, double esn0_db, std::uint64_t trial_seed);

/// Seed of trial i. Independent of the Es/N0 point, so every grid point sees
/// the same frames and phase trajectories (common random numbers).
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial);

/// std::thread::hardware_concurrency, capped by ONEBIT_THREADS when set and positive.
std::size_t default_thread_count();

/// All trials of one grid point, ordered by trial index regardless of threads.
std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, double esn0_db, std::size_t threads = 0);

struct SweepRow {
    double esn0_db = 0.0;
    Algorithm algorithm = Algorithm::ls;
    Interpolator interpolator = Interpolator::pilot_only;
    double mse = 0.0;
    double stderr_mse = 0.0;
    std::size_t trials = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t degenerate_ls = 0;
    std::size_t scoring_nonconverged = 0;
};

SweepRow summarize(std::span<const TrialResult> trials, double esn0_db, Algorithm a, Interpolator i);

SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t threads = 0);

inline constexpr std::string_view kCsvHeader = "esn0_db,algorithm,interpolator,mse,stderr,trials";

void write_csv(std::ostream& out, const SweepResult& result);

}  // namespace onebit
