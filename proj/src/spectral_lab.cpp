#include "vfock/spectral_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "vfock/volterra.hpp"

namespace vfock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    const double m = std::max(a, b);
    if (!std::isfinite(m)) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void require_integer_growth(std::size_t bigA, const FockParams& params, const char* who) {
    if (bigA < 1 || static_cast<double>(bigA) != params.bigA) {
        throw std::invalid_argument(std::string(who) + ": A must be a positive integer equal to params.A");
    }
}

}  // namespace

std::string_view to_string(SpectrumKind k) noexcept {
    return k == SpectrumKind::Disk ? "disk" : "origin";
}

std::string_view to_string(SpectrumProvenance p) noexcept {
    switch (p) {
        case SpectrumProvenance::TheoremII: return "theorem-ii";
        case SpectrumProvenance::CompactCase: return "compact";
        case SpectrumProvenance::NonIntegerA: return "non-integer-A";
    }
    return "unknown";
}

std::string_view to_string(BoundednessTrend t) noexcept {
    switch (t) {
        case BoundednessTrend::Vanishing: return "vanishing";
        case BoundednessTrend::Bounded: return "bounded";
        case BoundednessTrend::Diverging: return "diverging";
    }
    return "unknown";
}

SpectrumDescription classify_spectrum(const PolynomialSymbol& g, const FockParams& params) {
    const double d = static_cast<double>(g.degree());
    if (d > params.bigA) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", params.bigA);
        throw UnboundedOperatorError("unbounded operator: degree(g) = " + std::to_string(g.degree()) +
                                     " exceeds A = " + buf);
    }
    if (!params.integer_growth()) return {SpectrumKind::OriginOnly, 0.0, SpectrumProvenance::NonIntegerA};
    if (d < params.bigA) return {SpectrumKind::OriginOnly, 0.0, SpectrumProvenance::CompactCase};
    return {SpectrumKind::Disk, std::abs(g.leading()) / params.alpha, SpectrumProvenance::TheoremII};
}

WeightField::WeightField(const PolynomialSymbol& g, Complex lambda, const FockParams& params)
    : b_(g.leading()), lambda_(lambda), p_(params.p), alpha_(params.alpha), bigA_(params.bigA) {
    if (!g.is_monomial()) throw std::invalid_argument("WeightField: symbol must be a monomial b z^A");
    if (static_cast<double>(g.degree()) != params.bigA) {
        throw std::invalid_argument("WeightField: degree of the symbol must equal A");
    }
    if (lambda == Complex{}) throw std::invalid_argument("WeightField: lambda must be nonzero");
    ratio_ = std::abs(b_ / lambda_);
}

double WeightField::value(Complex z) const {
    const double r = std::abs(z);
    return p_ * (b_ * std::pow(z, bigA_) / lambda_).real() - p_ * alpha_ * std::pow(r, bigA_);
}

Complex WeightField::dbar(Complex z) const {
    // p [ conj(b A / (2 lambda)) zbar^{A-1} - (alpha A / 2) |z|^{A-2} z ]
    const double r = std::abs(z);
    const Complex zbar = std::conj(z);
    const Complex analytic = std::conj(b_ * bigA_ / (2.0 * lambda_)) * std::pow(zbar, bigA_ - 1.0);
    const Complex radial = 0.5 * alpha_ * bigA_ * std::pow(r, bigA_ - 2.0) * z;
    return p_ * (analytic - radial);
}

Complex WeightField::dbar2(Complex z) const {
    // p [ conj(b A (A-1) / (2 lambda)) zbar^{A-2} - (alpha A (A/2 - 1) / 2) |z|^{A-4} z^2 ]
    const double r = std::abs(z);
    const Complex zbar = std::conj(z);
    const Complex analytic = std::conj(b_ * bigA_ * (bigA_ - 1.0) / (2.0 * lambda_)) * std::pow(zbar, bigA_ - 2.0);
    const Complex radial = 0.5 * alpha_ * bigA_ * (0.5 * bigA_ - 1.0) * std::pow(r, bigA_ - 4.0) * z * z;
    return p_ * (analytic - radial);
}

double WeightField::dbar_lower_bound(double radius) const {
    if (!(alpha_ > ratio_)) throw std::domain_error("WeightField: lower bound needs alpha > |b/lambda|");
    return 0.5 * p_ * bigA_ * (alpha_ - ratio_) * std::pow(radius, bigA_ - 1.0);
}

RadiusEstimate spectral_radius_estimate(const PolynomialSymbol& g, const FockParams& params, std::size_t kMax,
                                        std::size_t maxM) {
    if (kMax == 0) throw std::invalid_argument("spectral_radius_estimate: kMax must be >= 1");
    RadiusEstimate out{0.0, {}};
    out.sequence.reserve(kMax);
    for (std::size_t k = 1; k <= kMax; ++k) {
        const double v = std::pow(shift_power_norm(g, params, k, maxM), 1.0 / static_cast<double>(k));
        out.sequence.push_back(v);
        out.estimate = std::max(out.estimate, v);
    }
    return out;
}

double resolvent_norm_probe(const PolynomialSymbol& g, Complex lambda, const FockParams& params,
                            std::span<const TruncatedSeries> probes, std::size_t order,
                            const QuadratureScheme& scheme) {
    if (lambda == Complex{}) throw std::invalid_argument("resolvent_norm_probe: lambda must be nonzero");
    if (probes.empty()) throw std::invalid_argument("resolvent_norm_probe: no probes");
    double best = kNegInf;
    for (const TruncatedSeries& h : probes) {
        const double log_h = log_series_norm_pow(h, params, scheme);
        if (!std::isfinite(log_h)) throw std::invalid_argument("resolvent_norm_probe: zero probe");
        const TruncatedSeries f = resolvent_apply(g, lambda, h, std::max(order, h.order()));
        best = std::max(best, log_series_norm_pow(f, params, scheme) - log_h);
    }
    return std::exp(best / params.p);
}

std::vector<ScanRow> membership_scan(const PolynomialSymbol& g, const FockParams& params,
                                     std::span<const Complex> grid) {
    if (std::any_of(grid.begin(), grid.end(), [](Complex l) { return l == Complex{}; })) {
        throw std::invalid_argument("membership_scan: grid contains 0");
    }
    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (Complex lambda : grid) rows.push_back({lambda, exp_membership(g, lambda, params)});
    return rows;
}

std::vector<TruncatedSeries> lp_reference_family(std::size_t monomial_count) {
    std::vector<TruncatedSeries> family;
    for (std::size_t n = 0; n < monomial_count; ++n) family.push_back(TruncatedSeries::monomial(n));
    for (std::size_t order : {4u, 8u, 16u, 32u}) {
        std::vector<Complex> c(order + 1);
        double term = 1.0;
        for (std::size_t k = 0; k <= order; ++k) {
            if (k > 0) term /= static_cast<double>(k);
            c[k] = term;
        }
        family.emplace_back(std::move(c));
    }
    for (std::size_t half : {4u, 8u, 16u}) {
        std::vector<Complex> c(2 * half + 1);
        double term = 1.0;
        for (std::size_t k = 0; k <= half; ++k) {
            if (k > 0) term /= 4.0 * static_cast<double>(k);
            c[2 * k] = term;
        }
        family.emplace_back(std::move(c));
    }
    return family;
}

RatioRange lp_ratio_experiment(std::span<const TruncatedSeries> family, const FockParams& params,
                               const QuadratureScheme& scheme) {
    if (family.empty()) throw std::invalid_argument("lp_ratio_experiment: empty family");
    RatioRange out{std::numeric_limits<double>::infinity(), 0.0};
    for (const TruncatedSeries& f : family) {
        const double log_norm = log_series_norm_pow(f, params, scheme) / params.p;
        if (!std::isfinite(log_norm)) throw std::invalid_argument("lp_ratio_experiment: zero-norm family member");
        const double ratio = std::exp(std::log(lp_rhs(f, params, scheme)) - log_norm);
        out.min = std::min(out.min, ratio);
        out.max = std::max(out.max, ratio);
    }
    return out;
}

QuadratureScheme weighted_scheme(Complex b, Complex lambda, const FockParams& params, std::size_t radial_count,
                                 std::size_t angular_count) {
    if (lambda == Complex{}) throw std::invalid_argument("weighted_scheme: lambda must be nonzero");
    const double ratio = std::abs(b / lambda);
    if (!(params.alpha > ratio)) throw std::invalid_argument("weighted_scheme: needs alpha > |b/lambda|");
    return QuadratureScheme(params.p * (params.alpha - ratio), params.bigA, radial_count, angular_count);
}

double weighted_lp_experiment(Complex b, std::size_t bigA, Complex lambda, const FockParams& params,
                              std::span<const TruncatedSeries> family, const QuadratureScheme& scheme) {
    require_integer_growth(bigA, params, "weighted_lp_experiment");
    if (lambda == Complex{}) throw std::invalid_argument("weighted_lp_experiment: lambda must be nonzero");
    const double ratio = std::abs(b / lambda);
    if (!(params.alpha > ratio)) {
        throw std::invalid_argument("weighted_lp_experiment: hypothesis alpha > |b/lambda| violated");
    }
    const double p = params.p;
    const double c = p * (params.alpha - ratio);
    if (std::abs(scheme.decay() - c) > 1e-12 * c || scheme.bigA() != params.bigA) {
        throw std::invalid_argument("weighted_lp_experiment: scheme must come from weighted_scheme");
    }
    const double a = params.bigA;
    const Complex b_over = b / lambda;
    // exponent of |e^{g/lambda}|^p e^{-p alpha r^A} relative to the scheme weight e^{-c r^A}; always <= 0
    auto log_extra = [&](Complex z) {
        const double ra = std::pow(std::abs(z), a);
        return p * (b_over * std::pow(z, a)).real() - p * ratio * ra;
    };

    double best = 0.0;
    for (const TruncatedSeries& f : family) {
        if (f.is_zero()) continue;
        scheme.check_capacity(f.degree(), p);
        const TruncatedSeries df = differentiate(f);
        const double lhs = scheme.log_integrate([&](Complex z) { return p * log_abs_evaluate(f, z) + log_extra(z); });
        double rhs = p * std::log(std::abs(f[0]));
        if (!df.is_zero()) {
            const double damping = (a - 1.0) * p;
            rhs = log_add(rhs, scheme.log_integrate([&](Complex z) {
                return p * log_abs_evaluate(df, z) + log_extra(z) - damping * std::log1p(std::abs(z));
            }));
        }
        best = std::max(best, std::exp(lhs - rhs));
    }
    return best;
}

std::vector<std::pair<double, double>> boundary_term_decay(const TruncatedSeries& f, Complex b, std::size_t bigA,
                                                           Complex lambda, const FockParams& params,
                                                           std::span<const double> radii, std::size_t order) {
    require_integer_growth(bigA, params, "boundary_term_decay");
    const auto g = PolynomialSymbol::monomial(b, bigA);
    if (exp_membership(g, lambda, params) != MembershipVerdict::Member) {
        throw std::invalid_argument("boundary_term_decay: e^{g/lambda} must belong to the space");
    }
    const double p = params.p;
    const double a = params.bigA;
    std::vector<std::pair<double, double>> out;
    out.reserve(radii.size());
    if (f.is_zero()) {
        for (double r : radii) out.emplace_back(r, 0.0);
        return out;
    }
    const TruncatedSeries e = exp_series(g.scaled(1.0 / lambda).as_series().truncated(order));
    const TruncatedSeries psi = multiply(f, e, order + f.order());
    const std::size_t m = QuadratureScheme::required_angular(psi.degree(), p);
    const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("boundary_term_decay: radii must be positive");
        std::vector<double> ring(m);
        for (std::size_t j = 0; j < m; ++j) ring[j] = p * log_abs_evaluate(psi, std::polar(r, h * static_cast<double>(j)));
        const double log_means = detail::log_sum_exp(ring) + std::log(h);
        const double log_value = -p * params.alpha * std::pow(r, a) + (2.0 - a) * std::log(r) + log_means;
        out.emplace_back(r, std::exp(log_value));
    }
    return out;
}

BoundednessReport boundedness_diagnostic(const PolynomialSymbol& g, const FockParams& params, std::size_t N) {
    if (N < 16) throw std::invalid_argument("boundedness_diagnostic: N must be >= 16");
    BoundednessReport out{BoundednessTrend::Bounded, {}, 0.0};
    out.sequence.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) out.sequence.push_back(tg_column_norm(g, params, n));
    const std::size_t half = N / 2;
    out.slope = std::log(out.sequence[N] / out.sequence[half]) /
                std::log(static_cast<double>(N + 1) / static_cast<double>(half + 1));
    if (out.slope < -kSlopeBand) {
        out.trend = BoundednessTrend::Vanishing;
    } else if (out.slope > kSlopeBand) {
        out.trend = BoundednessTrend::Diverging;
    }
    return out;
}

}  // namespace vfock
