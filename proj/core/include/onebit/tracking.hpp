#pragma once

// Block-level interpolation of pilot estimates. The STAPN is modelled as a
// scalar random walk theta(m) = theta(m-1) + Delta(m), Delta ~ N(0, q), observed
// at pilot blocks only with noise variance r_obs. Data blocks are missing
// observations.

#include <cstddef>
#include <optional>
#include <vector>

#include "onebit/estimators.hpp"
#include "onebit/framing.hpp"
#include "onebit/impairments.hpp"

namespace onebit {

struct StapnModel {
    double process_var = 0.0;  ///< q per block step, rad^2
    double obs_var = 1.0;      ///< r_obs, rad^2
    double prior_mean = 0.0;   ///< state prior at block 0
    double prior_var = 1e4;    ///< +inf selects the exact diffuse limit
};

using BlockObservationSeq = std::vector<std::optional<double>>;

struct TrackOutput {
    std::vector<double> mean;
    std::vector<double> var;
};

/// Per-block observation sequence with values at pilot blocks.
BlockObservationSeq make_observations(const FrameConfig& cfg, const std::vector<double>& pilot_estimates);

/// Forward Kalman recursion. The prior applies to block 0; every later block is
/// predicted by adding q, and updated only where an observation exists.
TrackOutput kalman_forward(const BlockObservationSeq& obs, const StapnModel& model);

/// Backward Rauch-Tung-Striebel sweep over the output of kalman_forward.
TrackOutput rts_smooth(const TrackOutput& filtered, const StapnModel& model);

/// q = (2/3) P M_rx var(zeta_2), r_obs = fisher_info_inv(fi), diffuse prior
/// (prior_var = 1e4) centred at 0; callers recentre it on the first observation.
StapnModel build_model(const FrameConfig& cfg, const PhaseNoiseParams& pn, const FisherInfoParams& fi);

}  // namespace onebit
