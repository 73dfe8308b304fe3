#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "vfock/fock_norms.hpp"
#include "vfock/quadrature.hpp"
#include "vfock/series.hpp"
#include "vfock/symbol.hpp"

namespace vfock {

/// deg g > A: T_g is not bounded on F^p_{alpha,A}.
class UnboundedOperatorError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class SpectrumKind { Disk, OriginOnly };
enum class SpectrumProvenance { TheoremII, CompactCase, NonIntegerA };

struct SpectrumDescription {
    SpectrumKind kind;
    double radius;  // |b|/alpha for Disk, 0 otherwise
    SpectrumProvenance provenance;
};

std::string_view to_string(SpectrumKind k) noexcept;
std::string_view to_string(SpectrumProvenance p) noexcept;

/**
 * Spectrum of T_g on F^p_{alpha,A}:
 *   A not an integer          -> {0} (bounded implies compact)
 *   A integer, deg g < A      -> {0} (compact)
 *   deg g = A                 -> closed disk of radius |b_A| / alpha
 * Lower-order terms of g never matter. Throws UnboundedOperatorError when deg g > A.
 */
SpectrumDescription classify_spectrum(const PolynomialSymbol& g, const FockParams& params);

/**
 * w(z) = p Re(b z^A / lambda) - p alpha |z|^A for a monomial symbol with
 * deg = A, together with its d-bar derivatives.
 */
class WeightField {
public:
    WeightField(const PolynomialSymbol& g, Complex lambda, const FockParams& params);

    double value(Complex z) const;
    Complex dbar(Complex z) const;
    Complex dbar2(Complex z) const;

    /// (pA/2)(alpha - |b/lambda|) |z|^{A-1}; throws std::domain_error unless alpha > |b/lambda|.
    double dbar_lower_bound(double radius) const;

    /// |b/lambda|
    double ratio() const noexcept { return ratio_; }

private:
    Complex b_;
    Complex lambda_;
    double p_;
    double alpha_;
    double bigA_;
    double ratio_;
};

struct RadiusEstimate {
    double estimate;               // max_k ||T^k||^{1/k}
    std::vector<double> sequence;  // ||T^k||^{1/k}, k = 1..kMax
};

/// max over k <= kMax of shift_power_norm(g, params, k, maxM)^{1/k}.
RadiusEstimate spectral_radius_estimate(const PolynomialSymbol& g, const FockParams& params, std::size_t kMax,
                                        std::size_t maxM);

/**
 * max over probes h of ||R h|| / ||h||, with R h truncated at `order`.
 * A lower bound for the resolvent norm; it stabilizes in `order` off the
 * spectrum and keeps growing inside it.
 */
double resolvent_norm_probe(const PolynomialSymbol& g, Complex lambda, const FockParams& params,
                            std::span<const TruncatedSeries> probes, std::size_t order,
                            const QuadratureScheme& scheme);

struct ScanRow {
    Complex lambda;
    MembershipVerdict verdict;
};

/// exp_membership at each grid point, in grid order. Rejects grids containing 0.
std::vector<ScanRow> membership_scan(const PolynomialSymbol& g, const FockParams& params,
                                     std::span<const Complex> grid);

struct RatioRange {
    double min;
    double max;
};

/**
 * {z^n : n < monomial_count} together with the partial sums of e^z of
 * orders 4, 8, 16, 32 and of e^{z^2/4} of degrees 8, 16, 32.
 */
std::vector<TruncatedSeries> lp_reference_family(std::size_t monomial_count);

/// Extremes of lp_rhs(f) / ||f|| over the family.
RatioRange lp_ratio_experiment(std::span<const TruncatedSeries> family, const FockParams& params,
                               const QuadratureScheme& scheme);

/// Scheme with decay p(alpha - |b/lambda|), the slowest radial decay of |e^{bz^A/lambda}|^p e^{-p alpha|z|^A}.
QuadratureScheme weighted_scheme(Complex b, Complex lambda, const FockParams& params, std::size_t radial_count,
                                 std::size_t angular_count);

/**
 * max over the family of LHS/RHS, where
 *   LHS = int |f|^p |e^{g/lambda}|^p e^{-p alpha|z|^A} dA,
 *   RHS = |f(0)|^p + int |f'|^p |e^{g/lambda}|^p e^{-p alpha|z|^A} (1+|z|)^{-(A-1)p} dA,
 * g = b z^A. Requires alpha > |b/lambda|, A = params.bigA a positive integer,
 * and a scheme from weighted_scheme. f = 0 contributes 0.
 */
double weighted_lp_experiment(Complex b, std::size_t bigA, Complex lambda, const FockParams& params,
                              std::span<const TruncatedSeries> family, const QuadratureScheme& scheme);

/**
 * e^{-p alpha R^A} R^{2-A} M_{p,R}(f e^{g/lambda})^p at each R, with
 * e^{g/lambda} truncated at `order`. Requires e^{g/lambda} in the space
 * (Member verdict) and A = params.bigA a positive integer.
 */
std::vector<std::pair<double, double>> boundary_term_decay(const TruncatedSeries& f, Complex b, std::size_t bigA,
                                                           Complex lambda, const FockParams& params,
                                                           std::span<const double> radii, std::size_t order = 96);

/**
 * Regression bands. The two-sided constants above are not quantified
 * analytically, so they were measured once and frozen:
 *   lp ratio band: lp_reference_family(41), p = 2, alpha = 1/2, A = 2
 *     (the lower end is 1/||1|| = 1/sqrt(pi), attained by constants);
 *   weighted constant: z^n with n < 20, b = 1, A = 2, alpha = 1, p = 2,
 *     max over lambda in {4, 8, -4}.
 * Both were unchanged to 12 digits when the radial and angular counts doubled.
 */
inline constexpr double kLpBandMin = 0.564189583548;
inline constexpr double kLpBandMax = 0.871948337111;
inline constexpr double kWeightedConstant = 1.62231147039;
inline constexpr double kBandSlack = 1e-9;

enum class BoundednessTrend { Vanishing, Bounded, Diverging };
std::string_view to_string(BoundednessTrend t) noexcept;

struct BoundednessReport {
    BoundednessTrend trend;
    std::vector<double> sequence;  // ||T_g e_n||, n = 0..N
    double slope;                  // log-log slope over n in [N/2, N]
};

inline constexpr double kSlopeBand = 0.1;

/**
 * Column norms a_n = ||T_g e_n|| (p = 2) and their trend. a_n behaves like
 * n^{deg g / A - 1}, so the log-log slope over the last octave separates
 * the regimes: below -kSlopeBand is Vanishing, above +kSlopeBand is
 * Diverging, otherwise Bounded. The slope does not depend on |b|/alpha,
 * which a fixed threshold on a_n would. Requires N >= 16.
 */
BoundednessReport boundedness_diagnostic(const PolynomialSymbol& g, const FockParams& params, std::size_t N);

}  // namespace vfock
