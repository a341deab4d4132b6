#include "onebit/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "onebit/angles.hpp"
#include "onebit/errors.hpp"
#include "onebit/special_functions.hpp"

namespace onebit {

double PilotBlockView::sigma() const { return std::sqrt(noise_var); }

void PilotBlockView::check() const {
    if (r.size() != s.size()) throw std::invalid_argument("pilot block: r and s lengths differ");
    if (r.empty()) throw std::invalid_argument("pilot block is empty");
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "ls") return Algorithm::ls;
    if (name == "em") return Algorithm::em;
    if (name == "scoring") return Algorithm::scoring;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected ls, em or scoring)");
}

std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::ls: return "ls";
    case Algorithm::em: return "em";
    case Algorithm::scoring: return "scoring";
    }
    return "?";
}

double kappa1(double x, double c1, double c2) {
    const double z = c2 * x;
    // e^{-z}(I0(z) + I1(z)) in scaled form, safe for large SNR.
    return c1 * (bessel_i0e(z) + bessel_i1e(z));
}

double fisher_info_inv(const FisherInfoParams& p) {
    if (!(p.es > 0.0) || !(p.n0 > 0.0)) throw std::domain_error("fisher_info_inv: Es and N0 must be positive");
    if (p.oversampling == 0 || p.pilot_len == 0) throw std::domain_error("fisher_info_inv: P and M_rx must be >= 1");
    const double esn0 = p.es / p.n0;
    const double info = kappa1(esn0 / static_cast<double>(p.oversampling), p.c1, p.c2) * esn0 *
                        static_cast<double>(p.pilot_len) / std::numbers::pi;
    return 1.0 / info;
}

std::optional<double> ls_estimate(const PilotBlockView& view) {
    view.check();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < view.r.size(); ++k) acc += std::conj(view.s[k]) * view.r[k].value();
    if (acc == std::complex<double>{0.0, 0.0}) return std::nullopt;
    return wrap_angle(std::arg(acc));
}

std::complex<double> em_noise_expectation(OneBitSample r, std::complex<double> s_theta, double sigma) {
    const double scale = sigma * 0.5 * std::numbers::inv_sqrtpi;
    const double re = r.re * scale * q_ratio(-r.re * s_theta.real() / sigma);
    const double im = r.im * scale * q_ratio(-r.im * s_theta.imag() / sigma);
    return {re, im};
}

double em_estimate(const PilotBlockView& view, double init, std::size_t iterations) {
    view.check();
    const double sigma = view.sigma();
    double theta = init;
    for (std::size_t it = 0; it < iterations; ++it) {
        const std::complex<double> rot = std::polar(1.0, theta);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < view.r.size(); ++k) {
            const std::complex<double> s_theta = view.s[k] * rot;
            acc += std::conj(view.s[k]) * (s_theta + em_noise_expectation(view.r[k], s_theta, sigma));
        }
        theta = std::arg(acc);
    }
    return wrap_angle(theta);
}

double score(const PilotBlockView& view, double theta) {
    view.check();
    const double sigma = view.sigma();
    const std::complex<double> rot = std::polar(1.0, theta);
    double v = 0.0;
    for (std::size_t k = 0; k < view.r.size(); ++k) {
        const std::complex<double> st = view.s[k] * rot;
        const double rr = view.r[k].re;
        const double ri = view.r[k].im;
        v += -rr * q_ratio(-rr * st.real() / sigma) * st.imag();
        v += ri * q_ratio(-ri * st.imag() / sigma) * st.real();
    }
    return v * std::numbers::inv_sqrtpi / sigma;
}

ScoringResult scoring_estimate(const PilotBlockView& view, double init, std::size_t iterations, double damping,
                               double fi_inv) {
    if (!(damping > 0.0) || damping > 1.0) throw std::invalid_argument("scoring damping must lie in (0, 1]");
    ScoringResult res;
    res.estimate = init;
    for (std::size_t it = 0; it < iterations; ++it) {
        const double v = score(view, res.estimate);
        const double step = damping * fi_inv * v;
        if (!std::isfinite(step)) {
            res.finite = false;
            break;
        }
        res.last_step = std::abs(step);
        res.estimate = wrap_angle(res.estimate + step);
    }
    res.estimate = wrap_angle(res.estimate);
    res.converged = res.finite && res.last_step < kScoringDivergenceThreshold;
    return res;
}

BlockEstimate estimate_block(const PilotBlockView& view, const EstimatorSettings& settings, double fi_inv) {
    BlockEstimate out;
    const auto ls = ls_estimate(view);
    out.degenerate = !ls.has_value();
    out.phase = ls.value_or(0.0);
    switch (settings.algorithm) {
    case Algorithm::ls:
        break;
    case Algorithm::em:
        out.phase = em_estimate(view, out.phase, settings.iterations);
        break;
    case Algorithm::scoring: {
        const auto res = scoring_estimate(view, out.phase, settings.iterations, settings.damping, fi_inv);
        out.phase = res.estimate;
        out.converged = res.converged;
        break;
    }
    }
    return out;
}

}  // namespace onebit
