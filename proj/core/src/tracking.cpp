#include "onebit/tracking.hpp"

#include <cmath>
#include <stdexcept>

namespace onebit {

BlockObservationSeq make_observations(const FrameConfig& cfg, const std::vector<double>& pilot_estimates) {
    if (pilot_estimates.size() != cfg.pilot_blocks)
        throw std::invalid_argument("expected one estimate per pilot block");
    BlockObservationSeq obs(cfg.block_count());
    for (std::size_t i = 0; i < cfg.pilot_blocks; ++i) obs[cfg.pilot_block(i)] = pilot_estimates[i];
    return obs;
}

TrackOutput kalman_forward(const BlockObservationSeq& obs, const StapnModel& model) {
    if (obs.empty()) throw std::invalid_argument("kalman_forward: empty observation sequence");
    if (model.process_var < 0.0 || !(model.obs_var > 0.0))
        throw std::invalid_argument("kalman_forward: need q >= 0 and r_obs > 0");

    TrackOutput out;
    out.mean.resize(obs.size());
    out.var.resize(obs.size());
    double mean = model.prior_mean;
    double var = model.prior_var;
    for (std::size_t m = 0; m < obs.size(); ++m) {
        if (m > 0) var += model.process_var;
        if (obs[m]) {
            if (std::isinf(var)) {
                mean = *obs[m];
                var = model.obs_var;
            } else {
                const double gain = var / (var + model.obs_var);
                mean += gain * (*obs[m] - mean);
                var = var * model.obs_var / (var + model.obs_var);
            }
        }
        out.mean[m] = mean;
        out.var[m] = var;
    }
    return out;
}

TrackOutput rts_smooth(const TrackOutput& filtered, const StapnModel& model) {
    const std::size_t n = filtered.mean.size();
    if (n == 0 || filtered.var.size() != n) throw std::invalid_argument("rts_smooth: malformed filter output");
    TrackOutput out = filtered;
    for (std::size_t m = n - 1; m-- > 0;) {
        if (std::isinf(filtered.var[m])) {
            // Nothing observed up to m: the backward prediction is all there is.
            out.mean[m] = out.mean[m + 1];
            out.var[m] = out.var[m + 1] + model.process_var;
            continue;
        }
        const double predicted = filtered.var[m] + model.process_var;
        if (predicted == 0.0) continue;
        const double gain = filtered.var[m] / predicted;
        out.mean[m] = filtered.mean[m] + gain * (out.mean[m + 1] - filtered.mean[m]);
        out.var[m] = filtered.var[m] + gain * gain * (out.var[m + 1] - predicted);
    }
    return out;
}

StapnModel build_model(const FrameConfig& cfg, const PhaseNoiseParams& pn, const FisherInfoParams& fi) {
    StapnModel model;
    model.process_var = (2.0 / 3.0) * static_cast<double>(cfg.block_len()) * pn.increment_variance();
    model.obs_var = fisher_info_inv(fi);
    return model;
}

}  // namespace onebit
