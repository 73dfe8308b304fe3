#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "vfock/quadrature.hpp"
#include "vfock/series.hpp"
#include "vfock/symbol.hpp"

namespace vfock {

/// log ||z^n||_{p,alpha,A} from the Gamma reduction
/// ||z^n||^p = (2 pi / A) (p alpha)^{-(np+2)/A} Gamma((np+2)/A).
double log_monomial_norm(std::size_t n, const FockParams& params);
double monomial_norm(std::size_t n, const FockParams& params);

/// log of ||f||^p by quadrature; -inf for f = 0.
double log_series_norm_pow(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme);

/**
 * ||f||_{p,alpha,A} by quadrature.
 *
 * The scheme must be built for decay p*alpha and growth A, and must pass
 * check_capacity for deg f; otherwise std::invalid_argument is thrown before
 * any work is done.
 */
double series_norm(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme);

/// M_{p,R}(f): the p-mean of |f| over |z| = R with an angular_count-point trapezoid.
double integral_means(const TruncatedSeries& f, double p, double radius, std::size_t angular_count);

/**
 * Littlewood-Paley side (|f(0)|^p + int |f'|^p e^{-p alpha |z|^A} (1+|z|)^{-p(A-1)} dA)^{1/p}.
 *
 * The weight carries alpha; the printed form of the estimate omits it, but
 * only the alpha-weighted version is consistent with the norm itself.
 */
double lp_rhs(const TruncatedSeries& f, const FockParams& params, const QuadratureScheme& scheme);

enum class MembershipVerdict { Member, NonMember, CriticalCircle };

std::string_view to_string(MembershipVerdict v) noexcept;

/// Relative half-width of the band around |b/lambda| = alpha reported as CriticalCircle.
inline constexpr double kCriticalBand = 1e-9;

/**
 * Whether e^{g/lambda} lies in F^p_{alpha,A}. With d = deg g and b its
 * leading coefficient: d < A is a member, d > A is not, and for d = A the
 * answer is decided by |b/lambda| against alpha. Points within kCriticalBand
 * (relative) of the circle are not decided. lambda = 0 is rejected.
 */
MembershipVerdict exp_membership(const PolynomialSymbol& g, Complex lambda, const FockParams& params);

/// max over the family of |f(z0)| e^{-alpha|z0|^A} / ||f||. Zero-norm members are rejected.
double point_eval_bound_check(std::span<const TruncatedSeries> family, Complex z0, const FockParams& params,
                              const QuadratureScheme& scheme);

/// Quantities compared by the maximum-principle argument, as p-th powers.
struct MaximumPrincipleQuantities {
    double plane;           // int_C |f|^p (1+|z|)^{-p} W dA
    double outside;         // same over |z| > 1
    double outside_over_z;  // int_{|z|>1} |f/z|^p W dA
    double plane_over_z;    // int_C |f/z|^p W dA
};

/// Requires f(0) = 0 so that f/z is entire. W = e^{-p alpha |z|^A}.
MaximumPrincipleQuantities maximum_principle_quantities(const TruncatedSeries& f, const FockParams& params,
                                                        const QuadratureScheme& scheme);

}  // namespace vfock
