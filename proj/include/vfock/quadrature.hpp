#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace vfock {

/// Parameters (p, alpha, A) of the space F^p_{alpha,A}. Construction checks p >= 1, alpha > 0, A > 0.
struct FockParams {
    double p;
    double alpha;
    double bigA;

    FockParams(double p, double alpha, double bigA);

    bool integer_growth() const noexcept;
    bool even_integer_p() const noexcept;
};

/// One radial node of the area rule. The weight already contains r e^{-c r^A}; it is stored as a log.
struct RadialNode {
    double r;
    double log_weight;

    double weight() const noexcept;
};

/**
 * Gauss rule on (0, inf) for the measure s e^{-s^A} ds.
 *
 * Recurrence coefficients come from the moments Gamma((k+2)/A)/A through the
 * Chebyshev algorithm carried out in MPFR at 2N+60 decimal digits; nodes are
 * Newton-polished on the three-term recurrence and weights are Christoffel
 * numbers, kept in log form so that tiny far-out weights keep their relative
 * accuracy. Rules are memoized per (A, N); the cache is thread-safe.
 *
 * The rule integrates s^k exactly for k <= 2N-1 in exact arithmetic.
 */
class RadialGaussRule {
public:
    static std::shared_ptr<const RadialGaussRule> get(double bigA, std::size_t nodes);

    double bigA() const noexcept { return bigA_; }
    std::span<const RadialNode> nodes() const noexcept { return nodes_; }

    /// Recurrence coefficients of the monic orthogonal polynomials (diagonal, beta_k).
    std::span<const double> alphas() const noexcept { return alphas_; }
    std::span<const double> betas() const noexcept { return betas_; }

    RadialGaussRule(double bigA, std::size_t nodes);

private:
    double bigA_;
    std::vector<RadialNode> nodes_;
    std::vector<double> alphas_;
    std::vector<double> betas_;
};

/**
 * Product rule for integrals over C against e^{-c |z|^A} dA(z):
 * radial Gauss nodes for r e^{-c r^A} dr times an equispaced trapezoid in theta.
 */
class QuadratureScheme {
public:
    QuadratureScheme(double decay, double bigA, std::size_t radial_count, std::size_t angular_count);

    /// Smallest scheme adequate for a degree-`degree` series under `params`, with at least `min_radial` nodes.
    static QuadratureScheme for_degree(const FockParams& params, std::size_t degree,
                                       std::size_t min_radial = 128, std::size_t min_angular = 0);

    /// Radial nodes needed to resolve |f|^p for deg f = degree: ceil(degree p / 2) + 32.
    static std::size_t required_radial(std::size_t degree, double p);
    /// Angular count needed: 4 degree + 16, doubled unless p is an even integer.
    static std::size_t required_angular(std::size_t degree, double p);

    double decay() const noexcept { return decay_; }
    double bigA() const noexcept { return bigA_; }
    std::span<const RadialNode> radial_nodes() const noexcept { return nodes_; }
    std::size_t radial_count() const noexcept { return nodes_.size(); }
    std::size_t angular_count() const noexcept { return angular_count_; }

    /// Throws std::invalid_argument unless the scheme resolves a degree-`degree` integrand at exponent p.
    void check_capacity(std::size_t degree, double p) const;

    /**
     * log of the integral over C of exp(log_integrand(z)) e^{-c|z|^A} dA(z).
     * log_integrand may return -inf for zeros. Summation is log-sum-exp so
     * integrands far beyond the double range are fine.
     */
    template <class LogIntegrand>
    double log_integrate(LogIntegrand&& log_integrand) const;

private:
    double decay_;
    double bigA_;
    std::vector<RadialNode> nodes_;
    std::size_t angular_count_;
    std::vector<std::complex<double>> unit_circle_;
    double log_angular_weight_;
};

namespace detail {

/// log(sum exp(v_i)); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

}  // namespace detail

template <class LogIntegrand>
double QuadratureScheme::log_integrate(LogIntegrand&& log_integrand) const {
    std::vector<double> ring(angular_count_);
    std::vector<double> node_logs(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t j = 0; j < angular_count_; ++j) {
            ring[j] = log_integrand(nodes_[i].r * unit_circle_[j]);
        }
        node_logs[i] = detail::log_sum_exp(ring) + log_angular_weight_ + nodes_[i].log_weight;
    }
    return detail::log_sum_exp(node_logs);
}

}  // namespace vfock
