#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vfock/series.hpp"

namespace vfock {

/**
 * Polynomial symbol g(z) = b_1 z + ... + b_d z^d with b_d != 0.
 *
 * T_g only sees g', so the constant term is not stored: building from a full
 * coefficient list drops c_0 and records whether it was nonzero. Trailing
 * zero coefficients are trimmed; a symbol with no nonzero b_k is rejected
 * with std::invalid_argument.
 */
class PolynomialSymbol {
public:
    /// `coeffs[k]` is the coefficient of z^k; coeffs[0] is dropped.
    static PolynomialSymbol from_coefficients(std::span<const Complex> coeffs);
    static PolynomialSymbol monomial(Complex b, std::size_t power);

    std::size_t degree() const noexcept { return b_.size(); }
    Complex leading() const noexcept { return b_.back(); }
    /// b_k for 1 <= k <= degree, zero otherwise.
    Complex coeff(std::size_t k) const noexcept;
    bool is_monomial() const noexcept;
    bool dropped_constant() const noexcept { return dropped_constant_; }

    /// g as a series of order degree (zero constant term).
    TruncatedSeries as_series() const;
    /// g' as a series of order degree - 1.
    TruncatedSeries derivative() const;
    /// The symbol s*g; s must be nonzero.
    PolynomialSymbol scaled(Complex s) const;

    Complex operator()(Complex z) const;

    friend bool operator==(const PolynomialSymbol& a, const PolynomialSymbol& b) { return a.b_ == b.b_; }

private:
    explicit PolynomialSymbol(std::vector<Complex> b, bool dropped);
    std::vector<Complex> b_;  // b_[k-1] = b_k
    bool dropped_constant_ = false;
};

}  // namespace vfock
