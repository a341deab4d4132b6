#include "onebit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "onebit/angles.hpp"
#include "onebit/errors.hpp"
#include "onebit/seeding.hpp"

namespace onebit {

Interpolator parse_interpolator(std::string_view name) {
    if (name == "pilot_only") return Interpolator::pilot_only;
    if (name == "kalman") return Interpolator::kalman;
    if (name == "rts") return Interpolator::rts;
    throw ConfigError("unknown interpolator '" + std::string(name) + "' (expected pilot_only, kalman or rts)");
}

std::string_view to_string(Interpolator i) {
    switch (i) {
    case Interpolator::pilot_only: return "pilot_only";
    case Interpolator::kalman: return "kalman";
    case Interpolator::rts: return "rts";
    }
    return "?";
}

std::vector<double> ExperimentConfig::default_esn0_grid() {
    std::vector<double> grid;
    for (int db = 6; db <= 40; db += 2) grid.push_back(db);
    return grid;
}

void ExperimentConfig::validate() const {
    frame.validate();
    if (!(symbol_period > 0.0)) throw ConfigError("symbol_period must be positive");
    if (span < 4 && (tx_pulse == PulseKind::root_raised_cosine || rx_filter == PulseKind::root_raised_cosine))
        throw ConfigError("RRC span must be at least 4 symbol periods");
    if (rolloff < 0.0 || rolloff > 1.0) throw ConfigError("rolloff must lie in [0, 1]");
    if (k2 < 0.0) throw ConfigError("k2 must be non-negative");
    if (!(damping > 0.0) || damping > 1.0) throw ConfigError("damping (epsilon) must lie in (0, 1]");
    if (obs_var && !(*obs_var > 0.0)) throw ConfigError("obs_var override must be positive");
    if (esn0_db.empty()) throw ConfigError("esn0_db grid must not be empty");
    for (double db : esn0_db) {
        if (!std::isfinite(db)) throw ConfigError("esn0_db values must be finite");
    }
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
    if (modes.empty()) throw ConfigError("at least one interpolator mode is required");
}

ExperimentConfig ftn_config(std::size_t ftn_factor) {
    ExperimentConfig cfg;
    cfg.frame.ftn_factor = ftn_factor;
    cfg.frame.oversampling = ftn_factor;
    cfg.frame.pilot_len = 30;
    cfg.frame.data_len = 600 * ftn_factor;
    cfg.tx_pulse = PulseKind::root_raised_cosine;
    cfg.rx_filter = PulseKind::root_raised_cosine;
    cfg.rolloff = 0.6;
    cfg.k2 = 1200.0;
    cfg.damping = 0.4;
    return cfg;
}

namespace {

template <typename T, typename Parse>
std::vector<T> parse_each(const std::vector<std::string>& items, Parse parse) {
    std::vector<T> out;
    for (const auto& s : items) out.push_back(parse(s));
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || used == 0) throw ConfigError("invalid number '" + s + "'");
    return v;
}

}  // namespace

ExperimentConfig experiment_from_file(const ConfigFile& file, ExperimentConfig base) {
    static const std::set<std::string> known = {
        "framing.pilot_len",         "framing.data_len",       "framing.ftn_factor",
        "framing.oversampling",      "framing.pilot_blocks",   "framing.rll_kmax",
        "waveform.tx_pulse",         "waveform.rx_filter",     "waveform.rolloff",
        "waveform.span",             "waveform.symbol_period", "waveform.if_cycles_per_sample",
        "impairments.k0_db",         "impairments.k2",         "impairments.initial_phase",
        "estimators.iterations",     "estimators.damping",     "tracking.obs_var",
        "experiments.esn0_db",       "experiments.trials",     "experiments.seed",
        "experiments.algorithms",    "experiments.modes",
    };
    for (const auto& [key, value] : file.entries()) {
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    ExperimentConfig cfg = std::move(base);
    auto size_key = [&](const char* key, std::size_t& field) {
        if (file.contains(key)) field = file.get_size(key);
    };
    auto double_key = [&](const char* key, double& field) {
        if (file.contains(key)) field = file.get_double(key);
    };

    size_key("framing.pilot_len", cfg.frame.pilot_len);
    size_key("framing.data_len", cfg.frame.data_len);
    size_key("framing.ftn_factor", cfg.frame.ftn_factor);
    size_key("framing.oversampling", cfg.frame.oversampling);
    size_key("framing.pilot_blocks", cfg.frame.pilot_blocks);
    size_key("framing.rll_kmax", cfg.frame.rll_kmax);

    if (file.contains("waveform.tx_pulse")) cfg.tx_pulse = parse_pulse_kind(file.get_string("waveform.tx_pulse"));
    if (file.contains("waveform.rx_filter")) cfg.rx_filter = parse_pulse_kind(file.get_string("waveform.rx_filter"));
    double_key("waveform.rolloff", cfg.rolloff);
    size_key("waveform.span", cfg.span);
    double_key("waveform.symbol_period", cfg.symbol_period);
    double_key("waveform.if_cycles_per_sample", cfg.if_cycles_per_sample);

    double_key("impairments.k0_db", cfg.k0_db);
    double_key("impairments.k2", cfg.k2);
    if (file.contains("impairments.initial_phase")) {
        const std::string v = file.get_string("impairments.initial_phase");
        if (v == "random") {
            cfg.initial_phase.reset();
        } else {
            cfg.initial_phase = file.get_double("impairments.initial_phase");
        }
    }

    size_key("estimators.iterations", cfg.iterations);
    double_key("estimators.damping", cfg.damping);

    if (file.contains("tracking.obs_var")) {
        const std::string v = file.get_string("tracking.obs_var");
        if (v == "fisher") {
            cfg.obs_var.reset();
        } else {
            cfg.obs_var = file.get_double("tracking.obs_var");
        }
    }

    if (file.contains("experiments.esn0_db"))
        cfg.esn0_db = parse_each<double>(file.get_list("experiments.esn0_db"), parse_double);
    size_key("experiments.trials", cfg.trials);
    if (file.contains("experiments.seed")) cfg.seed = file.get_u64("experiments.seed");
    if (file.contains("experiments.algorithms"))
        cfg.algorithms = parse_each<Algorithm>(file.get_list("experiments.algorithms"),
                                               [](const std::string& s) { return parse_algorithm(s); });
    if (file.contains("experiments.modes"))
        cfg.modes = parse_each<Interpolator>(file.get_list("experiments.modes"),
                                             [](const std::string& s) { return parse_interpolator(s); });
    cfg.validate();
    return cfg;
}

namespace {

// Shortest representation that round-trips.
std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

template <typename Seq>
std::string join(const Seq& seq) {
    std::string out = "[";
    bool first = true;
    for (const auto& v : seq) {
        if (!first) out += ", ";
        first = false;
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
            out += fmt_double(v);
        } else {
            out += to_string(v);
        }
    }
    return out + "]";
}

}  // namespace

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[framing]\n"
       << "pilot_len = " << cfg.frame.pilot_len << "\n"
       << "data_len = " << cfg.frame.data_len << "\n"
       << "ftn_factor = " << cfg.frame.ftn_factor << "\n"
       << "oversampling = " << cfg.frame.oversampling << "\n"
       << "pilot_blocks = " << cfg.frame.pilot_blocks << "\n"
       << "rll_kmax = " << cfg.frame.rll_kmax << "\n\n"
       << "[waveform]\n"
       << "tx_pulse = " << to_string(cfg.tx_pulse) << "\n"
       << "rx_filter = " << to_string(cfg.rx_filter) << "\n"
       << "rolloff = " << fmt_double(cfg.rolloff) << "\n"
       << "span = " << cfg.span << "\n"
       << "symbol_period = " << fmt_double(cfg.symbol_period) << "\n"
       << "if_cycles_per_sample = " << fmt_double(cfg.if_cycles_per_sample) << "\n\n"
       << "[impairments]\n"
       << "k0_db = " << fmt_double(cfg.k0_db) << "\n"
       << "k2 = " << fmt_double(cfg.k2) << "\n"
       << "initial_phase = " << (cfg.initial_phase ? fmt_double(*cfg.initial_phase) : "random") << "\n\n"
       << "[estimators]\n"
       << "iterations = " << cfg.iterations << "\n"
       << "damping = " << fmt_double(cfg.damping) << "\n\n"
       << "[tracking]\n"
       << "obs_var = " << (cfg.obs_var ? fmt_double(*cfg.obs_var) : "fisher") << "\n\n"
       << "[experiments]\n"
       << "esn0_db = " << join(cfg.esn0_db) << "\n"
       << "trials = " << cfg.trials << "\n"
       << "seed = " << cfg.seed << "\n"
       << "algorithms = " << join(cfg.algorithms) << "\n"
       << "modes = " << join(cfg.modes) << "\n";
    return os.str();
}

double mean_squared_error(std::span<const double> theta, std::span<const double> block_phase,
                          const FrameConfig& cfg, Interpolator mode) {
    if (theta.size() != cfg.sample_count()) throw std::invalid_argument("phase trajectory length differs from N");
    if (block_phase.size() != cfg.block_count()) throw std::invalid_argument("expected one phase per block");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t m = 0; m < cfg.block_count(); ++m) {
        if (mode == Interpolator::pilot_only && !cfg.is_pilot_block(m)) continue;
        const SampleRange range = block_sample_range(cfg, m);
        for (std::size_t k = range.begin; k < range.end; ++k) {
            const double e = wrap_angle(theta[k] - block_phase[m]);
            sum += e * e;
        }
        count += range.size();
    }
    return sum / static_cast<double>(count);
}

TrialTrace run_trial_traced(const ExperimentConfig& cfg, double esn0_db, std::uint64_t seed) {
    const FrameConfig& frame_cfg = cfg.frame;
    const double ts = cfg.sample_period();
    const PulseShape h = make_pulse(cfg.tx_pulse, cfg.rolloff, cfg.symbol_period, ts, cfg.span);
    const PulseShape g = make_receive_filter(cfg.rx_filter, cfg.rolloff, cfg.symbol_period, ts, cfg.span);

    const SymbolFrame frame = build_frame(frame_cfg, derive_seed(seed, Stream::pilots), derive_seed(seed, Stream::data));
    const ReferenceSignal ref = modulate(frame, h, g, frame_cfg, cfg.if_cycles_per_sample);

    PhaseNoiseParams pn;
    pn.k0 = PhaseNoiseParams::k0_from_db(cfg.k0_db);
    pn.k2 = cfg.k2;
    pn.sample_period = ts;
    pn.rx_bandwidth = g.bandwidth();
    if (cfg.initial_phase) {
        pn.initial_phase = *cfg.initial_phase;
    } else {
        Rng rng(derive_seed(seed, Stream::initial_phase));
        pn.initial_phase = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    }

    TrialTrace trace;
    trace.phase = generate_phase(pn, frame_cfg.sample_count(), derive_seed(seed, Stream::phase));

    const double es = 1.0;
    const double n0 = es / std::pow(10.0, esn0_db / 10.0);
    const auto y = apply_channel(ref, trace.phase, n0, g, derive_seed(seed, Stream::noise));
    const QuantizedStream r = quantize_1bit(y);

    const FisherInfoParams fi{es, n0, frame_cfg.oversampling, frame_cfg.pilot_len};
    const double fi_inv = fisher_info_inv(fi);
    StapnModel model = build_model(frame_cfg, pn, fi);
    if (cfg.obs_var) model.obs_var = *cfg.obs_var;

    for (auto& row : trace.result.mse) row.fill(std::numeric_limits<double>::quiet_NaN());

    for (Algorithm alg : cfg.algorithms) {
        const auto ai = static_cast<std::size_t>(alg);
        const EstimatorSettings settings{alg, cfg.iterations, cfg.damping};
        std::vector<double> estimates(frame_cfg.pilot_blocks);
        for (std::size_t i = 0; i < frame_cfg.pilot_blocks; ++i) {
            const SampleRange range = block_sample_range(frame_cfg, frame_cfg.pilot_block(i));
            const PilotBlockView view{std::span(r).subspan(range.begin, range.size()),
                                      std::span(ref.samples).subspan(range.begin, range.size()), n0 / ts};
            const BlockEstimate est = estimate_block(view, settings, fi_inv);
            estimates[i] = est.phase;
            if (est.degenerate) ++trace.result.degenerate_ls;
            if (!est.converged) ++trace.result.scoring_nonconverged;
        }
        // Track on the unwrapped sequence; the error metric re-wraps.
        const std::vector<double> unwrapped = unwrap_sequence(estimates);
        trace.pilot_estimates[ai] = unwrapped;

        StapnModel local = model;
        local.prior_mean = unwrapped.front();
        const BlockObservationSeq obs = make_observations(frame_cfg, unwrapped);
        const TrackOutput filtered = kalman_forward(obs, local);

        for (Interpolator mode : cfg.modes) {
            const auto mi = static_cast<std::size_t>(mode);
            std::vector<double> phase;
            switch (mode) {
            case Interpolator::pilot_only:
                phase.assign(frame_cfg.block_count(), 0.0);
                for (std::size_t i = 0; i < frame_cfg.pilot_blocks; ++i) phase[frame_cfg.pilot_block(i)] = unwrapped[i];
                break;
            case Interpolator::kalman:
                phase = filtered.mean;
                break;
            case Interpolator::rts:
                phase = rts_smooth(filtered, local).mean;
                break;
            }
            trace.result.mse[ai][mi] = mean_squared_error(trace.phase.theta, phase, frame_cfg, mode);
            trace.block_phase[ai][mi] = std::move(phase);
        }
    }
    return trace;
}

TrialResult run_trial(const ExperimentConfig& cfg, double esn0_db, std::uint64_t seed) {
    return run_trial_traced(cfg, esn0_db, seed).result;
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial) {
    return derive_seed(cfg.seed, {0x7472ULL, trial});
}

std::size_t default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    std::size_t n = hw == 0 ? 1 : hw;
    if (const char* env = std::getenv("ONEBIT_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = std::min<std::size_t>(n, v);
    }
    return n;
}

std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, double esn0_db, std::size_t threads) {
    cfg.validate();
    if (threads == 0) threads = default_thread_count();
    threads = std::min(threads, cfg.trials);

    std::vector<TrialResult> results(cfg.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                results[i] = run_trial(cfg, esn0_db, trial_seed(cfg, i));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

SweepRow summarize(std::span<const TrialResult> trials, double esn0_db, Algorithm a, Interpolator i) {
    SweepRow row{esn0_db, a, i, 0.0, 0.0, trials.size()};
    if (trials.empty()) return row;
    double sum = 0.0;
    for (const auto& t : trials) sum += t.at(a, i);
    row.mse = sum / static_cast<double>(trials.size());
    if (trials.size() > 1) {
        double ss = 0.0;
        for (const auto& t : trials) {
            const double d = t.at(a, i) - row.mse;
            ss += d * d;
        }
        const double var = ss / static_cast<double>(trials.size() - 1);
        row.stderr_mse = std::sqrt(var / static_cast<double>(trials.size()));
    }
    return row;
}

SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t threads) {
    cfg.validate();
    SweepResult out;
    for (double db : cfg.esn0_db) {
        const auto trials = run_trials(cfg, db, threads);
        for (const auto& t : trials) {
            out.degenerate_ls += t.degenerate_ls;
            out.scoring_nonconverged += t.scoring_nonconverged;
        }
        for (Algorithm a : cfg.algorithms) {
            for (Interpolator i : cfg.modes) out.rows.push_back(summarize(trials, db, a, i));
        }
    }
    return out;
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << kCsvHeader << '\n';
    char buf[256];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%s,%s,%.17g,%.17g,%zu\n", row.esn0_db,
                      std::string(to_string(row.algorithm)).c_str(), std::string(to_string(row.interpolator)).c_str(),
                      row.mse, row.stderr_mse, row.trials);
        out << buf;
    }
}

}  // namespace onebit
