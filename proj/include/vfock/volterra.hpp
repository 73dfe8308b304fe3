#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "vfock/quadrature.hpp"
#include "vfock/series.hpp"
#include "vfock/symbol.hpp"

namespace vfock {

/// T_g f = int_0^z f g' d(zeta). The result has order order(f) + deg g and vanishes at 0.
TruncatedSeries apply_tg(const PolynomialSymbol& g, const TruncatedSeries& f);

/**
 * Matrix of T_g on span{e_0..e_N}, e_n = z^n / ||z^n|| (p = 2, where the
 * monomials are orthogonal). Only the d sub-diagonals are stored:
 *   M(n+k, n) = k b_k w_{n+k} / ((n+k) w_n),   w_m = ||z^m||.
 * Columns whose image leaves the span are truncated.
 */
class ShiftMatrix {
public:
    ShiftMatrix(std::size_t size, std::vector<std::vector<Complex>> bands);

    std::size_t size() const noexcept { return size_; }
    std::size_t band_count() const noexcept { return bands_.size(); }
    /// Entries (n+k, n) for n = 0..size-1-k.
    std::span<const Complex> band(std::size_t k) const { return bands_.at(k - 1); }

    Complex operator()(std::size_t row, std::size_t col) const noexcept;

    /// y = M x; x.size() must equal size().
    std::vector<Complex> apply(std::span<const Complex> x) const;
    Eigen::MatrixXcd to_dense() const;

private:
    std::size_t size_;
    std::vector<std::vector<Complex>> bands_;  // bands_[k-1][n] = M(n+k, n)
};

/// Requires params.p == 2 and N >= deg g.
ShiftMatrix tg_matrix(const PolynomialSymbol& g, const FockParams& params, std::size_t N);

/// ||T_g e_n|| for the untruncated column (p = 2).
double tg_column_norm(const PolynomialSymbol& g, const FockParams& params, std::size_t n);

/// Coordinates of f in the e_n basis: c_n * w_n (p = 2).
std::vector<Complex> basis_coordinates(const TruncatedSeries& f, const FockParams& params);

/**
 * For g = b z^A, p = 2: T_g e_n = s_n e_{n+A} with
 * s_n = A|b| w_{n+A} / ((n+A) w_n) (up to a unimodular factor), so
 * ||T_g^k|| restricted to e_0..e_{maxM + kA} is
 *   max_{m <= maxM} prod_{j<k} s_{m+jA}.
 * Rejects non-monomial symbols, p != 2, deg g != A, and k = 0.
 */
double shift_power_norm(const PolynomialSymbol& g, const FockParams& params, std::size_t k, std::size_t maxM);

/// log s_n for the weighted shift above.
double log_shift_weight(const PolynomialSymbol& g, const FockParams& params, std::size_t n);

/// order(h) + 4 deg g + 8.
std::size_t default_resolvent_order(const PolynomialSymbol& g, const TruncatedSeries& h);

/**
 * Truncated Taylor series of
 *   R h = h(0) e^{g/lambda} + e^{g/lambda} int_0^z e^{-g/lambda} h',
 * the solution of f - T_g f / lambda = h. Requires lambda != 0 and order >= order(h).
 */
TruncatedSeries resolvent_apply(const PolynomialSymbol& g, Complex lambda, const TruncatedSeries& h,
                                std::size_t order);

}  // namespace vfock
