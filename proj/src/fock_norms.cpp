#include "vfock/fock_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace vfock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_scheme_matches(const FockParams& params, const QuadratureScheme& scheme) {
    const double c = params.p * params.alpha;
    if (std::abs(scheme.decay() - c) > 1e-12 * c || scheme.bigA() != params.bigA) {
        throw std::invalid_argument("QuadratureScheme was built for decay " + std::to_string(scheme.decay()) +
                                    ", A = " + std::to_string(scheme.bigA()) + "; need decay " +
                                    std::to_string(c) + ", A = " + std::to_string(params.bigA));
    }
}

// int_{|z|<1} F(z) dA(z) with Gauss-Legendre in r and the trapezoid in theta.
template <class F>
double inner_disk_integral(F&& integrand, std::size_t angular_count) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(angular_count);
    auto ring = [&](double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < angular_count; ++j) s += integrand(std::polar(r, h * static_cast<double>(j)));
        return s * h * r;
    };
    return boost::math::quadrature::gauss<double, 40>::integrate(ring, 0.0, 1.0);
}

}  // namespace

double log_monomial_norm(std::size_t n, const FockParams& params) {
    const double s = (static_cast<double>(n) * params.p + 2.0) / params.bigA;
    const double log_pow = std::log(2.0 * std::numbers::pi / params.bigA) -
                           s * std::log(params.p * params.alpha) + std::lgamma(s);
    return log_pow / params.p;
}

double monomial_norm(std::size_t n, const FockParams& params) { return std::exp(log_monomial_norm(n, params)); }

double log_series_norm_pow(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme) {
    check_scheme_matches(params, scheme);
    scheme.check_capacity(f.degree(), params.p);
    if (f.is_zero()) return kNegInf;
    const double p = params.p;
    return scheme.log_integrate([&](Complex z) { return p * log_abs_evaluate(f, z); });
}

double series_norm(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme) {
    return std::exp(log_series_norm_pow(f, params, scheme) / params.p);
}

double integral_means(const TruncatedSeries& f, double p, double radius, std::size_t angular_count) {
    if (!(radius > 0.0)) throw std::invalid_argument("integral_means: radius must be > 0");
    if (angular_count == 0) throw std::invalid_argument("integral_means: angular count must be > 0");
    const double h = 2.0 * std::numbers::pi / static_cast<double>(angular_count);
    // common scale exp(log_scale) on the circle keeps large R in range
    double log_scale = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < angular_count; ++j) {
        const ScaledValue v = evaluate_scaled(f, std::polar(radius, h * static_cast<double>(j)));
        log_scale = v.log_scale;
        sum += std::pow(std::abs(v.mantissa), p);
    }
    if (sum == 0.0) return 0.0;
    return std::exp((std::log(sum * h) + p * log_scale) / p);
}

double lp_rhs(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme) {
    check_scheme_matches(params, scheme);
    const TruncatedSeries df = differentiate(f);
    scheme.check_capacity(df.degree(), params.p);
    const double p = params.p;
    const double at_zero = std::pow(std::abs(f[0]), p);
    if (df.is_zero()) return std::abs(f[0]);
    const double damping = p * (params.bigA - 1.0);
    const double log_integral = scheme.log_integrate([&](Complex z) {
        return p * log_abs_evaluate(df, z) - damping * std::log1p(std::abs(z));
    });
    const double m = std::max(std::log(at_zero), log_integral);
    return std::exp((m + std::log(std::exp(std::log(at_zero) - m) + std::exp(log_integral - m))) / p);
}

std::string_view to_string(MembershipVerdict v) noexcept {
    switch (v) {
        case MembershipVerdict::Member: return "member";
        case MembershipVerdict::NonMember: return "non-member";
        case MembershipVerdict::CriticalCircle: return "critical-circle";
    }
    return "unknown";
}

MembershipVerdict exp_membership(const PolynomialSymbol& g, Complex lambda, const FockParams& params) {
    if (lambda == Complex{}) throw std::invalid_argument("exp_membership: lambda must be nonzero");
    const double d = static_cast<double>(g.degree());
    if (d < params.bigA) return MembershipVerdict::Member;
    if (d > params.bigA) return MembershipVerdict::NonMember;
    const double ratio = std::abs(g.leading() / lambda);
    if (std::abs(ratio - params.alpha) <= kCriticalBand * params.alpha) return MembershipVerdict::CriticalCircle;
    return ratio < params.alpha ? MembershipVerdict::Member : MembershipVerdict::NonMember;
}

double point_eval_bound_check(std::span<const TruncatedSeries> family, Complex z0, const FockParams& params,
                              const QuadratureScheme& scheme) {
    if (family.empty()) throw std::invalid_argument("point_eval_bound_check: empty family");
    const double log_damp = -params.alpha * std::pow(std::abs(z0), params.bigA);
    double best = 0.0;
    for (const TruncatedSeries& f : family) {
        const double log_norm = log_series_norm_pow(f, params, scheme) / params.p;
        if (!std::isfinite(log_norm)) throw std::invalid_argument("point_eval_bound_check: zero-norm family member");
        best = std::max(best, std::exp(log_abs_evaluate(f, z0) + log_damp - log_norm));
    }
    return best;
}

MaximumPrincipleQuantities maximum_principle_quantities(const TruncatedSeries& f, const FockParams& params,
                                                        const QuadratureScheme& scheme) {
    check_scheme_matches(params, scheme);
    if (f[0] != Complex{}) throw std::invalid_argument("maximum_principle_quantities: requires f(0) = 0");
    scheme.check_capacity(f.degree(), params.p);
    const double p = params.p;
    const double c = p * params.alpha;
    const double bigA = params.bigA;

    std::vector<Complex> shifted(f.coeffs().begin() + 1, f.coeffs().end());
    const TruncatedSeries f_over_z(std::move(shifted));

    const double plane = std::exp(scheme.log_integrate(
        [&](Complex z) { return p * (log_abs_evaluate(f, z) - std::log1p(std::abs(z))); }));
    const double plane_over_z = std::exp(scheme.log_integrate([&](Complex z) { return p * log_abs_evaluate(f_over_z, z); }));

    const std::size_t m = scheme.angular_count();
    const double inner = inner_disk_integral(
        [&](Complex z) {
            const double r = std::abs(z);
            return std::pow(std::abs(evaluate(f, z)) / (1.0 + r), p) * std::exp(-c * std::pow(r, bigA));
        },
        m);
    const double inner_over_z = inner_disk_integral(
        [&](Complex z) {
            return std::pow(std::abs(evaluate(f_over_z, z)), p) * std::exp(-c * std::pow(std::abs(z), bigA));
        },
        m);
    return {plane, plane - inner, plane_over_z - inner_over_z, plane_over_z};
}

}  // namespace vfock
