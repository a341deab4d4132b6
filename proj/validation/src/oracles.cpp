#include "onebit/validation/oracles.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

namespace onebit::oracle {

namespace {

using Mp = boost::multiprecision::cpp_bin_float_50;
using LdMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LdVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// 32 significant digits are ample for the finite-difference score and much
// cheaper than the 50-digit type.
using Fd = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<32>>;

Mp mp_q(const Mp& x) { return boost::math::erfc(x / boost::multiprecision::sqrt(Mp(2))) / 2; }

// log Q(x). Q(-x) ~ 1 goes through log1p so its tail survives; far in the
// upper tail the asymptotic series
//   Q(x) = phi(x)/x * sum_n (-1)^n (2n-1)!! / x^(2n)
// is used instead of erfc, whose result would leave the representable range.
template <typename T>
T log_q(const T& x) {
    const T root2 = boost::multiprecision::sqrt(T(2));
    if (x < 0) return boost::multiprecision::log1p(-boost::math::erfc(-x / root2) / 2);
    if (x < 40) return boost::multiprecision::log(boost::math::erfc(x / root2) / 2);
    const T inv_x2 = 1 / (x * x);
    T term = 1;
    T series = 1;
    for (int n = 1; n <= 30; ++n) {
        term *= -T(2 * n - 1) * inv_x2;
        series += term;
    }
    const T two_pi = 2 * boost::math::constants::pi<T>();
    return -x * x / 2 - boost::multiprecision::log(x * boost::multiprecision::sqrt(two_pi)) +
           boost::multiprecision::log(series);
}

template <typename T>
T log_likelihood(const PilotBlockView& view, const T& theta) {
    const T c = boost::multiprecision::cos(theta);
    const T s = boost::multiprecision::sin(theta);
    const T scale = boost::multiprecision::sqrt(T(2)) / boost::multiprecision::sqrt(T(view.noise_var));
    T acc = 0;
    for (std::size_t k = 0; k < view.r.size(); ++k) {
        const T sr(view.s[k].real());
        const T si(view.s[k].imag());
        acc += log_q(T(-view.r[k].re) * (sr * c - si * s) * scale);
        acc += log_q(T(-view.r[k].im) * (sr * s + si * c) * scale);
    }
    return acc;
}

}  // namespace

bool rll_admissible(std::span<const int> seq, std::size_t d, std::size_t k_max) {
    if (seq.empty()) return false;
    std::size_t since_transition = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq[k] != 1 && seq[k] != -1) return false;
        ++since_transition;
        const bool run_ends = k + 1 == seq.size() || seq[k + 1] != seq[k];
        if (run_ends) {
            if (since_transition < d + 1 || since_transition > k_max + 1) return false;
            since_transition = 0;
        }
    }
    return true;
}

std::vector<std::vector<int>> enumerate_rll(std::size_t d, std::size_t k_max, std::size_t length) {
    if (length > 24) throw std::invalid_argument("enumerate_rll: length too large for brute force");
    std::vector<std::vector<int>> out;
    std::vector<int> seq(length);
    for (std::uint64_t bits = 0; bits < (1ULL << length); ++bits) {
        for (std::size_t k = 0; k < length; ++k) seq[k] = (bits >> k) & 1U ? 1 : -1;
        if (rll_admissible(seq, d, k_max)) out.push_back(seq);
    }
    return out;
}

BatchPosterior batch_condition(const BlockObservationSeq& obs, const StapnModel& model) {
    const std::size_t n = obs.size();
    LdMatrix cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cov(i, j) = static_cast<long double>(model.prior_var) +
                        static_cast<long double>(std::min(i, j)) * static_cast<long double>(model.process_var);
        }
    }
    const long double mu = model.prior_mean;

    // Posterior of every state given the observations with index < limit.
    auto condition = [&](std::size_t limit, std::size_t m, double& mean, double& var) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < limit; ++i) {
            if (obs[i]) idx.push_back(i);
        }
        if (idx.empty()) {
            mean = static_cast<double>(mu);
            var = static_cast<double>(cov(m, m));
            return;
        }
        const auto k = static_cast<Eigen::Index>(idx.size());
        LdMatrix szz(k, k);
        LdVector sxz(k);
        LdVector innov(k);
        for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) szz(a, b) = cov(idx[a], idx[b]);
            szz(a, a) += static_cast<long double>(model.obs_var);
            sxz(a) = cov(m, idx[a]);
            innov(a) = static_cast<long double>(*obs[idx[a]]) - mu;
        }
        const Eigen::LDLT<LdMatrix> ldlt(szz);
        const LdVector w = ldlt.solve(sxz);
        mean = static_cast<double>(mu + w.dot(innov));
        var = static_cast<double>(cov(m, m) - w.dot(sxz));
    };

    BatchPosterior out;
    out.filtered_mean.resize(n);
    out.filtered_var.resize(n);
    out.smoothed_mean.resize(n);
    out.smoothed_var.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        condition(m + 1, m, out.filtered_mean[m], out.filtered_var[m]);
        condition(n, m, out.smoothed_mean[m], out.smoothed_var[m]);
    }
    return out;
}

double brownian_bridge_mean(double a, double b, std::size_t n, std::size_t m) {
    const double t = static_cast<double>(m) / static_cast<double>(n);
    return a + t * (b - a);
}

long double log_likelihood_1bit(const PilotBlockView& view, long double theta) {
    return log_likelihood(view, Mp(theta)).convert_to<long double>();
}

double score_finite_difference(const PilotBlockView& view, double theta, double h) {
    const Fd th(theta);
    const Fd step(h);
    const Fd fd = (log_likelihood(view, Fd(th + step)) - log_likelihood(view, Fd(th - step))) / (2 * step);
    return fd.convert_to<double>();
}

double gaussian_q(double x) { return mp_q(Mp(x)).convert_to<double>(); }

double q_ratio(double a) {
    const Mp ma(a);
    return (boost::multiprecision::exp(-ma * ma) / mp_q(ma * boost::multiprecision::sqrt(Mp(2)))).convert_to<double>();
}

double bessel_i0(double x) { return boost::math::cyl_bessel_i(0, Mp(x)).convert_to<double>(); }
double bessel_i1(double x) { return boost::math::cyl_bessel_i(1, Mp(x)).convert_to<double>(); }

double bessel_i0e(double x) {
    const Mp mx(x);
    return (boost::math::cyl_bessel_i(0, mx) * boost::multiprecision::exp(-boost::multiprecision::abs(mx)))
        .convert_to<double>();
}

double bessel_i1e(double x) {
    const Mp mx(x);
    return (boost::math::cyl_bessel_i(1, mx) * boost::multiprecision::exp(-boost::multiprecision::abs(mx)))
        .convert_to<double>();
}

double fisher_info_inv(double esn0_linear, std::size_t oversampling, std::size_t pilot_len) {
    const Mp c1("4.0360");
    const Mp c2("0.3930");
    const Mp e(esn0_linear);
    const Mp x = c2 * e / Mp(oversampling);
    const Mp kappa = c1 * boost::multiprecision::exp(-x) *
                     (boost::math::cyl_bessel_i(0, x) + boost::math::cyl_bessel_i(1, x));
    const Mp info = kappa * e * Mp(pilot_len) / boost::math::constants::pi<Mp>();
    return (1 / info).convert_to<double>();
}

namespace {

// Composite Simpson on [a, a + width] with n (even) intervals.
template <typename F>
double simpson(F f, double a, double width, int n) {
    const double h = width / n;
    double acc = f(a) + f(a + width);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

}  // namespace

double truncated_gaussian_mean(double s, int r, double sigma) {
    // w ~ N(0, v), v = sigma^2/2. For r = +1 the event is w > -s; r = -1
    // mirrors it. With c = |s|: the first moment over the event equals the
    // tail integral of w*phi over [c, inf) (the symmetric part cancels), and
    // the probability is either that tail (s < 0) or one minus it (s > 0).
    const double v = 0.5 * sigma * sigma;
    const double sd = std::sqrt(v);
    const double signed_s = r > 0 ? s : -s;
    const double c = std::abs(signed_s);
    const double norm = 1.0 / std::sqrt(2.0 * boost::math::constants::pi<double>() * v);
    auto pdf = [&](double w) { return norm * std::exp(-w * w / (2.0 * v)); };
    const double width = 40.0 * sd;
    const int n = 200000;
    const double moment = simpson([&](double w) { return w * pdf(w); }, c, width, n);
    const double tail = simpson(pdf, c, width, n);
    const double prob = signed_s >= 0.0 ? 1.0 - tail : tail;
    const double mean = moment / prob;
    return r > 0 ? mean : -mean;
}

}  // namespace onebit::oracle
