#include "vfock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace vfock {

FockParams::FockParams(double p_, double alpha_, double bigA_) : p(p_), alpha(alpha_), bigA(bigA_) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("FockParams: p must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("FockParams: alpha must be > 0");
    if (!(bigA > 0.0) || !std::isfinite(bigA)) throw std::invalid_argument("FockParams: A must be > 0");
}

bool FockParams::integer_growth() const noexcept { return std::floor(bigA) == bigA; }

bool FockParams::even_integer_p() const noexcept {
    return std::floor(p) == p && std::fmod(p, 2.0) == 0.0;
}

double RadialNode::weight() const noexcept { return std::exp(log_weight); }

namespace detail {

double log_sum_exp(std::span<const double> v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace detail

namespace {

using MpFloat = boost::multiprecision::mpfr_float;

// Chebyshev algorithm: moments -> recurrence coefficients of the monic
// orthogonal polynomials for s e^{-s^A} ds.
void recurrence_from_moments(double bigA, std::size_t n, std::vector<double>& alphas,
                             std::vector<double>& betas) {
    const unsigned digits = static_cast<unsigned>(2 * n + 60);
    // default_precision is process-wide in this Boost version
    static std::mutex precision_mutex;
    const std::lock_guard lock(precision_mutex);
    const unsigned saved = MpFloat::default_precision();
    MpFloat::default_precision(digits);
    struct Restore {
        unsigned d;
        ~Restore() { MpFloat::default_precision(d); }
    } restore{saved};
    const MpFloat a(bigA);

    std::vector<MpFloat> sig_prev2(2 * n), sig_prev(2 * n), sig(2 * n);
    for (std::size_t l = 0; l < 2 * n; ++l) {
        sig_prev2[l] = MpFloat(0);
        sig_prev[l] = boost::math::tgamma(MpFloat(static_cast<double>(l + 2)) / a) / a;
        sig[l] = MpFloat(0);
    }

    std::vector<MpFloat> al(n), be(n);
    al[0] = sig_prev[1] / sig_prev[0];
    be[0] = sig_prev[0];
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t l = k; l + k < 2 * n; ++l) {
            sig[l] = sig_prev[l + 1] - al[k - 1] * sig_prev[l] - be[k - 1] * sig_prev2[l];
        }
        al[k] = sig[k + 1] / sig[k] - sig_prev[k] / sig_prev[k - 1];
        be[k] = sig[k] / sig_prev[k - 1];
        std::swap(sig_prev2, sig_prev);
        std::swap(sig_prev, sig);
    }

    alphas.resize(n);
    betas.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        alphas[k] = static_cast<double>(al[k]);
        betas[k] = static_cast<double>(be[k]);
        if (!(betas[k] > 0.0) || !std::isfinite(alphas[k])) {
            throw std::runtime_error("RadialGaussRule: recurrence breakdown at k = " + std::to_string(k));
        }
    }
}

struct OrthoEval {
    long double value;       // orthonormal p_n(x), unnormalized by a common factor
    long double derivative;  // its derivative, same factor
    long double log_sum_sq;  // log sum_{k<n} p_k(x)^2 (normalized)
};

// Orthonormal recurrence sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1},
// p_0 = 1/sqrt(b_0). Rescaled on the fly to stay in range.
OrthoEval eval_orthonormal(const std::vector<long double>& a, const std::vector<long double>& sb,
                           long double x) {
    const std::size_t n = a.size();
    long double pm1 = 0.0L, dm1 = 0.0L;
    long double p = 1.0L / sb[0], d = 0.0L;
    long double log_scale = 0.0L;
    long double sum_sq = 0.0L;  // in units of exp(2 log_scale)
    for (std::size_t k = 0; k < n; ++k) {
        sum_sq += p * p;
        const long double next_sb = (k + 1 < n) ? sb[k + 1] : 1.0L;
        const long double sbk = (k == 0) ? 0.0L : sb[k];
        const long double pn = ((x - a[k]) * p - sbk * pm1) / next_sb;
        const long double dn = (p + (x - a[k]) * d - sbk * dm1) / next_sb;
        pm1 = p;
        dm1 = d;
        p = pn;
        d = dn;
        const long double mag = std::max(std::fabs(p), std::fabs(pm1));
        if (mag > 1e100L) {
            pm1 /= mag; p /= mag; dm1 /= mag; d /= mag;
            sum_sq /= mag * mag;
            log_scale += std::log(mag);
        }
    }
    return {p, d, std::log(sum_sq) + 2.0L * log_scale};
}

}  // namespace

RadialGaussRule::RadialGaussRule(double bigA, std::size_t n) : bigA_(bigA) {
    if (!(bigA > 0.0)) throw std::invalid_argument("RadialGaussRule: A must be > 0");
    if (n < 1) throw std::invalid_argument("RadialGaussRule: at least one node required");
    recurrence_from_moments(bigA, n, alphas_, betas_);

    Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (std::size_t k = 0; k < n; ++k) diag[static_cast<Eigen::Index>(k)] = alphas_[k];
    for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(betas_[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("RadialGaussRule: eigensolver failed");

    std::vector<long double> a(alphas_.begin(), alphas_.end());
    std::vector<long double> sb(n);
    for (std::size_t k = 0; k < n; ++k) sb[k] = std::sqrt(static_cast<long double>(betas_[k]));

    nodes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
        for (int it = 0; it < 8; ++it) {
            const OrthoEval e = eval_orthonormal(a, sb, x);
            if (e.derivative == 0.0L) break;
            const long double step = e.value / e.derivative;
            x -= step;
            if (std::fabs(step) <= 1e-19L * std::fabs(x)) break;
        }
        if (!(x > 0.0L)) throw std::runtime_error("RadialGaussRule: non-positive node");
        const OrthoEval e = eval_orthonormal(a, sb, x);
        nodes_.push_back({static_cast<double>(x), static_cast<double>(-e.log_sum_sq)});
    }
}

std::shared_ptr<const RadialGaussRule> RadialGaussRule::get(double bigA, std::size_t nodes) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const RadialGaussRule>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{bigA, nodes}];
    if (!slot) slot = std::make_shared<const RadialGaussRule>(bigA, nodes);
    return slot;
}

QuadratureScheme::QuadratureScheme(double decay, double bigA, std::size_t radial_count,
                                   std::size_t angular_count)
    : decay_(decay), bigA_(bigA), angular_count_(angular_count) {
    if (!(decay > 0.0) || !std::isfinite(decay)) throw std::invalid_argument("QuadratureScheme: decay must be > 0");
    if (angular_count < 8 || angular_count % 2 != 0) {
        throw std::invalid_argument("QuadratureScheme: angular count must be even and >= 8");
    }
    const auto rule = RadialGaussRule::get(bigA, radial_count);
    // r = c^{-1/A} s  =>  r e^{-c r^A} dr = c^{-2/A} s e^{-s^A} ds
    const double log_c = std::log(decay);
    const double r_scale = std::exp(-log_c / bigA);
    const double log_w_shift = -2.0 * log_c / bigA;
    nodes_.reserve(radial_count);
    for (const RadialNode& n : rule->nodes()) nodes_.push_back({n.r * r_scale, n.log_weight + log_w_shift});

    unit_circle_.resize(angular_count);
    const double h = 2.0 * std::numbers::pi / static_cast<double>(angular_count);
    for (std::size_t j = 0; j < angular_count; ++j) unit_circle_[j] = std::polar(1.0, h * static_cast<double>(j));
    log_angular_weight_ = std::log(h);
}

std::size_t QuadratureScheme::required_radial(std::size_t degree, double p) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(degree) * p / 2.0)) + 32;
}

std::size_t QuadratureScheme::required_angular(std::size_t degree, double p) {
    std::size_t m = 4 * degree + 16;
    const bool even_p = std::floor(p) == p && std::fmod(p, 2.0) == 0.0;
    if (!even_p) m *= 2;
    return m;
}

QuadratureScheme QuadratureScheme::for_degree(const FockParams& params, std::size_t degree,
                                              std::size_t min_radial, std::size_t min_angular) {
    const std::size_t radial = std::max(min_radial, required_radial(degree, params.p));
    std::size_t angular = std::max(min_angular, required_angular(degree, params.p));
    angular += angular % 2;
    return QuadratureScheme(params.p * params.alpha, params.bigA, radial, angular);
}

void QuadratureScheme::check_capacity(std::size_t degree, double p) const {
    const std::size_t need_r = required_radial(degree, p);
    const std::size_t need_a = required_angular(degree, p);
    if (nodes_.size() < need_r || angular_count_ < need_a) {
        throw std::invalid_argument("QuadratureScheme: degree " + std::to_string(degree) +
                                    " at p = " + std::to_string(p) + " needs " + std::to_string(need_r) +
                                    " radial nodes and " + std::to_string(need_a) + " angles (have " +
                                    std::to_string(nodes_.size()) + ", " + std::to_string(angular_count_) + ")");
    }
}

}  // namespace vfock
