#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vfock {

using Complex = std::complex<double>;

/**
 * Truncated power series c_0 + c_1 z + ... + c_N z^N with complex
 * double-precision coefficients.
 *
 * The order N is fixed at construction and is part of the value: two series
 * with equal coefficients but different orders are different objects. All
 * coefficients are finite; construction rejects NaN/Inf with
 * std::domain_error.
 */
class TruncatedSeries {
public:
    /// The zero series of order 0.
    TruncatedSeries();

    /// Builds from coefficients; order = coeffs.size() - 1. Empty input is rejected.
    explicit TruncatedSeries(std::vector<Complex> coeffs);
    TruncatedSeries(std::initializer_list<Complex> coeffs);

    static TruncatedSeries zero(std::size_t order);
    static TruncatedSeries constant(Complex c, std::size_t order = 0);
    static TruncatedSeries monomial(std::size_t power, Complex c = 1.0);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^k; zero beyond the order.
    Complex operator[](std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : Complex{};
    }

    /// Index of the highest nonzero coefficient, or 0 for the zero series.
    std::size_t degree() const noexcept;
    bool is_zero() const noexcept;

    /// Same coefficients re-truncated (or zero-padded) to `order`.
    TruncatedSeries truncated(std::size_t order) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator*=(Complex s);
    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<Complex> coeffs_;
};

/// Sum and difference take the larger of the two orders.
TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(Complex s, TruncatedSeries f);

/// Cauchy product truncated to `order`.
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t order);

/// Primitive vanishing at the origin; order grows by one.
TruncatedSeries integrate_from_zero(const TruncatedSeries& f);

/// Termwise derivative; order drops by one (order 0 maps to the zero series of order 0).
TruncatedSeries differentiate(const TruncatedSeries& f);

/**
 * Taylor coefficients of exp(f) up to order(f).
 *
 * With f = c_0 + f_1, E = exp(f_1) satisfies E' = f_1' E, which gives
 *   k E_k = sum_{j=1..k} j f_j E_{k-j},   E_0 = 1,
 * and the result is e^{c_0} E. Throws std::range_error when e^{c_0} or any
 * coefficient leaves the double range.
 */
TruncatedSeries exp_series(const TruncatedSeries& f);

/// Horner evaluation of sum c_k z^k.
Complex evaluate(const TruncatedSeries& f, Complex z);

/**
 * Overflow-safe evaluation: returns (v, s) with f(z) = v * exp(s) and
 * s = degree * log|z| when |z| > 1 (s = 0 otherwise). The scale s depends
 * only on |z|, so values on a circle share it; the phase of z^degree stays
 * in the mantissa.
 */
struct ScaledValue {
    Complex mantissa;
    double log_scale = 0.0;
};
ScaledValue evaluate_scaled(const TruncatedSeries& f, Complex z);

/// log|f(z)|, -inf where f(z) = 0.
double log_abs_evaluate(const TruncatedSeries& f, Complex z);

}  // namespace vfock
