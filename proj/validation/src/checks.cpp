#include "onebit/validation/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>

#include "onebit/angles.hpp"
#include "onebit/estimators.hpp"
#include "onebit/experiments.hpp"
#include "onebit/framing.hpp"
#include "onebit/impairments.hpp"
#include "onebit/seeding.hpp"
#include "onebit/special_functions.hpp"
#include "onebit/tracking.hpp"
#include "onebit/validation/oracles.hpp"

namespace onebit::validation {

namespace {

using Clock = std::chrono::steady_clock;

template <typename... Args>
std::string format(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

template <typename F>
CheckResult timed(std::string name, F body) {
    const auto start = Clock::now();
    CheckResult res = body();
    res.name = std::move(name);
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

std::complex<double> random_qpsk(Rng& rng) {
    std::bernoulli_distribution bit(0.5);
    const double a = 1.0 / std::sqrt(2.0);
    return {bit(rng) ? a : -a, bit(rng) ? a : -a};
}

struct RandomBlock {
    std::vector<OneBitSample> r;
    std::vector<std::complex<double>> s;
    double noise_var = 1.0;

    PilotBlockView view() const { return {r, s, noise_var}; }
};

RandomBlock random_block(Rng& rng, std::size_t len, double sigma, double amplitude, double theta_true) {
    std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
    RandomBlock b;
    b.noise_var = sigma * sigma;
    b.s.resize(len);
    b.r.resize(len);
    const auto rot = std::polar(1.0, theta_true);
    for (std::size_t k = 0; k < len; ++k) {
        b.s[k] = amplitude * random_qpsk(rng);
        const std::complex<double> y = b.s[k] * rot + std::complex<double>(normal(rng), normal(rng));
        b.r[k] = quantize_1bit(y);
    }
    return b;
}

double relative_error(double value, double reference) {
    if (reference == 0.0) return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

CheckResult check_score_likelihood(std::size_t count, std::uint64_t seed) {
    return timed("score matches likelihood finite difference", [&] {
        Rng rng(seed);
        std::uniform_real_distribution<double> log_sigma(std::log(1e-3), std::log(10.0));
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        std::uniform_real_distribution<double> offset(-0.5, 0.5);
        std::uniform_int_distribution<std::size_t> length(8, 120);
        double worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const double sigma = std::exp(log_sigma(rng));
            const double theta_true = phase(rng);
            const auto block = random_block(rng, length(rng), sigma, 1.0, theta_true);
            const double theta = theta_true + offset(rng);
            const double v = score(block.view(), theta);
            const double fd = oracle::score_finite_difference(block.view(), theta);
            double err;
            if (std::abs(fd) < std::numeric_limits<double>::min()) {
                // Reference below the normal range: only a vanishing score is acceptable.
                err = std::abs(v) < 1e-250 ? 0.0 : 1.0;
            } else {
                err = relative_error(v, fd);
            }
            worst = std::max(worst, err);
            if (!(err < 1e-4)) ++failures;
        }
        CheckResult res;
        res.passed = failures == 0;
        res.detail = format("%zu triples, max relative error %.3g (limit 1e-4), %zu failures", count, worst, failures);
        return res;
    });
}

CheckResult check_smoother_oracle(std::size_t count, std::uint64_t seed) {
    return timed("Kalman/RTS match batch conditioning", [&] {
        Rng rng(seed);
        std::uniform_int_distribution<std::size_t> pilots(1, 4);
        std::uniform_int_distribution<std::size_t> gap(0, 3);
        std::uniform_real_distribution<double> log_q(std::log(1e-6), std::log(1.0));
        std::uniform_real_distribution<double> log_r(std::log(1e-4), std::log(1.0));
        std::uniform_real_distribution<double> log_p0(std::log(1e-2), std::log(1e2));
        std::uniform_real_distribution<double> centre(-3.0, 3.0);
        std::normal_distribution<double> normal(0.0, 1.0);
        double worst = 0.0;
        std::size_t instances = 0;
        while (instances < count) {
            FrameConfig cfg;
            cfg.pilot_len = 4;
            cfg.pilot_blocks = pilots(rng);
            cfg.data_len = cfg.pilot_len * gap(rng);
            if (cfg.block_count() > 12) continue;
            ++instances;

            StapnModel model;
            model.process_var = std::exp(log_q(rng));
            model.obs_var = std::exp(log_r(rng));
            model.prior_var = std::exp(log_p0(rng));
            model.prior_mean = centre(rng);

            std::vector<double> est(cfg.pilot_blocks);
            double walk = model.prior_mean;
            for (auto& e : est) {
                walk += std::sqrt(model.process_var) * normal(rng);
                e = walk + std::sqrt(model.obs_var) * normal(rng);
            }
            const auto obs = make_observations(cfg, est);
            const auto filtered = kalman_forward(obs, model);
            const auto smoothed = rts_smooth(filtered, model);
            const auto ref = oracle::batch_condition(obs, model);
            for (std::size_t m = 0; m < obs.size(); ++m) {
                worst = std::max({worst, std::abs(filtered.mean[m] - ref.filtered_mean[m]),
                                  std::abs(filtered.var[m] - ref.filtered_var[m]),
                                  std::abs(smoothed.mean[m] - ref.smoothed_mean[m]),
                                  std::abs(smoothed.var[m] - ref.smoothed_var[m])});
            }
        }
        CheckResult res;
        res.passed = worst <= 1e-10;
        res.detail = format("%zu instances (B <= 12), max abs error %.3g (limit 1e-10)", count, worst);
        return res;
    });
}

namespace {

// Sum of squares of zero-mean samples against the chi-square band
// n*var +- 3 sqrt(2n) var.
CheckResult chi_square_band(std::span<const double> x, double expected_var, const char* what) {
    double ss = 0.0;
    for (double v : x) ss += v * v;
    const double n = static_cast<double>(x.size());
    const double sample_var = ss / n;
    const double half_width = 3.0 * expected_var * std::sqrt(2.0 / n);
    CheckResult res;
    res.passed = std::abs(sample_var - expected_var) <= half_width;
    res.detail = format("%s: sample var %.6g, expected %.6g +- %.3g over %.0f samples", what, sample_var,
                        expected_var, half_width, n);
    return res;
}

}  // namespace

CheckResult check_wiener_increments(std::size_t samples, std::uint64_t seed) {
    return timed("Wiener increment variance", [&] {
        const ExperimentConfig defaults;
        PhaseNoiseParams pn;
        pn.k0 = 0.0;
        pn.k2 = defaults.k2;
        pn.sample_period = defaults.sample_period();
        const auto traj = generate_phase(pn, samples + 1, seed);
        std::vector<double> inc(samples);
        for (std::size_t k = 0; k < samples; ++k) inc[k] = traj.theta2[k + 1] - traj.theta2[k];
        return chi_square_band(inc, pn.increment_variance(), "zeta_2");
    });
}

CheckResult check_stapn_increments(std::size_t pairs, std::uint64_t seed) {
    return timed("STAPN increment variance", [&] {
        const ExperimentConfig defaults;
        FrameConfig cfg = defaults.frame;
        // One long frame, enough blocks for `pairs` disjoint (2i, 2i+1) pairs.
        const std::size_t lambda = cfg.data_blocks_per_gap();
        cfg.pilot_blocks = (2 * pairs + lambda) / (lambda + 1) + 1;
        PhaseNoiseParams pn;
        pn.k0 = 0.0;
        pn.k2 = defaults.k2;
        pn.sample_period = defaults.sample_period();
        const auto traj = generate_phase(pn, cfg.sample_count(), seed);
        std::vector<double> inc(pairs);
        for (std::size_t i = 0; i < pairs; ++i) inc[i] = stapn(traj, cfg, 2 * i + 1) - stapn(traj, cfg, 2 * i);
        const double expected = 2.0 / 3.0 * static_cast<double>(cfg.block_len()) * pn.increment_variance();
        return chi_square_band(inc, expected, "STAPN");
    });
}

CheckResult check_special_functions(std::uint64_t seed) {
    return timed("special functions and numerical safety", [&] {
        double worst_bessel = 0.0;
        double worst_ratio = 0.0;
        double worst_fisher = 0.0;
        const bool kappa_exact = kappa1(0.0) == kKappaC1;

        for (double e = -3.0; e <= std::log10(700.0); e += 0.01) {
            const double x = std::pow(10.0, e);
            worst_bessel = std::max({worst_bessel, relative_error(bessel_i0(x), oracle::bessel_i0(x)),
                                     relative_error(bessel_i1(x), oracle::bessel_i1(x))});
        }
        for (double e = -3.0; e <= 5.0; e += 0.01) {
            const double x = std::pow(10.0, e);
            worst_bessel = std::max({worst_bessel, relative_error(bessel_i0e(x), oracle::bessel_i0e(x)),
                                     relative_error(bessel_i1e(x), oracle::bessel_i1e(x))});
        }
        for (double a = -25.0; a <= 1000.0; a += (a < 40.0 ? 0.01 : 1.0)) {
            worst_ratio = std::max(worst_ratio, relative_error(q_ratio(a), oracle::q_ratio(a)));
        }
        for (double db = -10.0; db <= 50.0; db += 1.0) {
            for (std::size_t m : {1, 3, 5}) {
                FisherInfoParams fi;
                fi.n0 = std::pow(10.0, -db / 10.0);
                fi.oversampling = m;
                worst_fisher = std::max(worst_fisher, relative_error(fisher_info_inv(fi),
                                                                     oracle::fisher_info_inv(1.0 / fi.n0, m, 60)));
            }
        }

        // EM expectation and score stay finite across the operating range.
        Rng rng(seed);
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        const ExperimentConfig defaults;
        std::size_t non_finite = 0;
        std::size_t evaluations = 0;
        for (double db = -10.0; db <= 50.0; db += 0.5) {
            for (std::size_t m : {1, 2, 5}) {
                // |s|^2 = Es/T, sigma^2 = N0/T_s with Es = 1.
                const double t = defaults.symbol_period;
                const double ts = t / static_cast<double>(m);
                const double sigma = std::sqrt(std::pow(10.0, -db / 10.0) / ts);
                const double amp = std::sqrt(1.0 / t);
                const auto block = random_block(rng, 60, sigma, amp, phase(rng));
                for (int j = 0; j < 8; ++j) {
                    const double theta = phase(rng);
                    const double v = score(block.view(), theta);
                    ++evaluations;
                    if (!std::isfinite(v)) ++non_finite;
                    for (std::size_t k = 0; k < block.r.size(); ++k) {
                        const auto w = em_noise_expectation(block.r[k], block.s[k] * std::polar(1.0, theta), sigma);
                        ++evaluations;
                        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) ++non_finite;
                    }
                }
            }
        }

        CheckResult res;
        res.passed = kappa_exact && worst_bessel < 1e-6 && worst_ratio < 1e-6 && worst_fisher < 1e-6 &&
                     non_finite == 0;
        res.detail = format(
            "kappa1(0)==c1: %s; Bessel max rel err %.3g; exp/Q ratio max rel err %.3g; fisher_info_inv max rel "
            "err %.3g; %zu non-finite of %zu EM/score evaluations up to 50 dB",
            kappa_exact ? "yes" : "no", worst_bessel, worst_ratio, worst_fisher, non_finite, evaluations);
        return res;
    });
}

CheckResult check_rll_streams(std::size_t symbols, std::uint64_t seed) {
    return timed("RLL data streams admissible", [&] {
        std::string detail;
        bool passed = true;
        for (std::size_t ftn : {1, 3, 5}) {
            FrameConfig cfg;
            cfg.ftn_factor = ftn;
            cfg.oversampling = ftn;
            cfg.pilot_len = 30;
            cfg.data_len = 600 * ftn;
            cfg.pilot_blocks = 11;
            const std::size_t d = cfg.min_run();
            std::size_t checked = 0;
            std::size_t violations = 0;
            for (std::uint64_t frame_index = 0; checked < symbols; ++frame_index) {
                const auto frame = build_frame(cfg, derive_seed(seed, {ftn, frame_index, 0}),
                                               derive_seed(seed, {ftn, frame_index, 1}));
                std::vector<int> re, im;
                auto flush = [&] {
                    if (re.empty()) return;
                    if (!oracle::rll_admissible(re, d, cfg.rll_kmax)) ++violations;
                    if (!oracle::rll_admissible(im, d, cfg.rll_kmax)) ++violations;
                    checked += re.size();
                    re.clear();
                    im.clear();
                };
                for (std::size_t l = 0; l < frame.symbols.size(); ++l) {
                    if (frame.pilot_mask[l]) {
                        flush();
                        continue;
                    }
                    re.push_back(frame.symbols[l].real() < 0.0 ? -1 : 1);
                    im.push_back(frame.symbols[l].imag() < 0.0 ? -1 : 1);
                }
                flush();
            }
            passed = passed && violations == 0;
            detail += format("%sd=%zu: %zu symbols, %zu violating gaps", detail.empty() ? "" : "; ", d, checked,
                             violations);
        }
        CheckResult res;
        res.passed = passed;
        res.detail = detail;
        return res;
    });
}

std::vector<CheckResult> run_validation_suite() {
    return {check_score_likelihood(), check_smoother_oracle(), check_wiener_increments(),
            check_stapn_increments(), check_special_functions(), check_rll_streams()};
}

}  // namespace onebit::validation
