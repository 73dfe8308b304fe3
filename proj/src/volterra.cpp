#include "vfock/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "vfock/fock_norms.hpp"

namespace vfock {

namespace {

void require_hilbert(const FockParams& params, const char* who) {
    if (params.p != 2.0) throw std::invalid_argument(std::string(who) + ": requires p = 2 (orthogonal monomial basis)");
}

// w_{n+k} / w_n via log-Gamma differences.
double norm_ratio(std::size_t n, std::size_t k, const FockParams& params) {
    return std::exp(log_monomial_norm(n + k, params) - log_monomial_norm(n, params));
}

}  // namespace

TruncatedSeries apply_tg(const PolynomialSymbol& g, const TruncatedSeries& f) {
    const std::size_t d = g.degree();
    // f g' has order order(f) + d - 1
    return integrate_from_zero(multiply(f, g.derivative(), f.order() + d - 1));
}

ShiftMatrix::ShiftMatrix(std::size_t size, std::vector<std::vector<Complex>> bands)
    : size_(size), bands_(std::move(bands)) {
    for (std::size_t k = 1; k <= bands_.size(); ++k) {
        const std::size_t expected = size_ > k ? size_ - k : 0;
        if (bands_[k - 1].size() != expected) throw std::invalid_argument("ShiftMatrix: band length mismatch");
    }
}

Complex ShiftMatrix::operator()(std::size_t row, std::size_t col) const noexcept {
    if (row <= col || row >= size_) return {};
    const std::size_t k = row - col;
    return k <= bands_.size() ? bands_[k - 1][col] : Complex{};
}

std::vector<Complex> ShiftMatrix::apply(std::span<const Complex> x) const {
    if (x.size() != size_) throw std::invalid_argument("ShiftMatrix::apply: dimension mismatch");
    std::vector<Complex> y(size_);
    for (std::size_t k = 1; k <= bands_.size(); ++k) {
        const auto& b = bands_[k - 1];
        for (std::size_t n = 0; n < b.size(); ++n) y[n + k] += b[n] * x[n];
    }
    return y;
}

Eigen::MatrixXcd ShiftMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(size_);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 1; k <= bands_.size(); ++k) {
        const auto& b = bands_[k - 1];
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(static_cast<Eigen::Index>(j + k), static_cast<Eigen::Index>(j)) = b[j];
        }
    }
    return m;
}

ShiftMatrix tg_matrix(const PolynomialSymbol& g, const FockParams& params, std::size_t N) {
    require_hilbert(params, "tg_matrix");
    const std::size_t d = g.degree();
    if (N < d) throw std::invalid_argument("tg_matrix: N must be >= degree(g)");
    const std::size_t size = N + 1;
    std::vector<std::vector<Complex>> bands(d);
    for (std::size_t k = 1; k <= d; ++k) {
        const Complex bk = g.coeff(k);
        auto& band = bands[k - 1];
        band.resize(size - k);
        if (bk == Complex{}) continue;
        for (std::size_t n = 0; n + k < size; ++n) {
            band[n] = static_cast<double>(k) * bk * norm_ratio(n, k, params) / static_cast<double>(n + k);
        }
    }
    return ShiftMatrix(size, std::move(bands));
}

double tg_column_norm(const PolynomialSymbol& g, const FockParams& params, std::size_t n) {
    require_hilbert(params, "tg_column_norm");
    double sum = 0.0;
    for (std::size_t k = 1; k <= g.degree(); ++k) {
        const double mag = static_cast<double>(k) * std::abs(g.coeff(k)) * norm_ratio(n, k, params) /
                           static_cast<double>(n + k);
        sum += mag * mag;
    }
    return std::sqrt(sum);
}

std::vector<Complex> basis_coordinates(const TruncatedSeries& f, const FockParams& params) {
    require_hilbert(params, "basis_coordinates");
    std::vector<Complex> x(f.order() + 1);
    for (std::size_t n = 0; n <= f.order(); ++n) x[n] = f[n] * monomial_norm(n, params);
    return x;
}

double log_shift_weight(const PolynomialSymbol& g, const FockParams& params, std::size_t n) {
    const std::size_t a = g.degree();
    return std::log(static_cast<double>(a) * std::abs(g.leading())) + log_monomial_norm(n + a, params) -
           log_monomial_norm(n, params) - std::log(static_cast<double>(n + a));
}

double shift_power_norm(const PolynomialSymbol& g, const FockParams& params, std::size_t k, std::size_t maxM) {
    require_hilbert(params, "shift_power_norm");
    if (!g.is_monomial()) throw std::invalid_argument("shift_power_norm: symbol must be a monomial b z^A");
    if (static_cast<double>(g.degree()) != params.bigA) {
        throw std::invalid_argument("shift_power_norm: degree of the symbol must equal A");
    }
    if (k == 0) throw std::invalid_argument("shift_power_norm: k must be >= 1");
    const std::size_t a = g.degree();
    const std::size_t last = maxM + (k - 1) * a;
    std::vector<double> log_s(last + 1);
    for (std::size_t n = 0; n <= last; ++n) log_s[n] = log_shift_weight(g, params, n);

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m <= maxM; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += log_s[m + j * a];
        best = std::max(best, acc);
    }
    return std::exp(best);
}

std::size_t default_resolvent_order(const PolynomialSymbol& g, const TruncatedSeries& h) {
    return h.order() + 4 * g.degree() + 8;
}

TruncatedSeries resolvent_apply(const PolynomialSymbol& g, Complex lambda, const TruncatedSeries& h,
                                std::size_t order) {
    if (lambda == Complex{}) throw std::invalid_argument("resolvent_apply: lambda must be nonzero");
    if (order < h.order()) throw std::invalid_argument("resolvent_apply: order must be >= order(h)");
    const TruncatedSeries g_over = g.scaled(1.0 / lambda).as_series().truncated(order);
    const TruncatedSeries e_plus = exp_series(g_over);
    const TruncatedSeries e_minus = exp_series(-g_over);
    const TruncatedSeries dh = differentiate(h.truncated(order));

    // int_0^z e^{-g/lambda} h' has order `order` after truncating the product to order - 1
    const TruncatedSeries inner =
        order == 0 ? TruncatedSeries::zero(0) : integrate_from_zero(multiply(e_minus, dh, order - 1));
    TruncatedSeries out = multiply(e_plus, inner, order);
    out += h[0] * e_plus;
    return out;
}

}  // namespace vfock
