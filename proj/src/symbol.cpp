#include "vfock/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace vfock {

PolynomialSymbol::PolynomialSymbol(std::vector<Complex> b, bool dropped)
    : b_(std::move(b)), dropped_constant_(dropped) {
    while (!b_.empty() && b_.back() == Complex{}) b_.pop_back();
    if (b_.empty()) throw std::invalid_argument("PolynomialSymbol: symbol must have degree >= 1");
    for (Complex c : b_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("PolynomialSymbol: non-finite coefficient");
        }
    }
}

PolynomialSymbol PolynomialSymbol::from_coefficients(std::span<const Complex> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("PolynomialSymbol: empty coefficient list");
    std::vector<Complex> b(coeffs.begin() + 1, coeffs.end());
    return PolynomialSymbol(std::move(b), coeffs[0] != Complex{});
}

PolynomialSymbol PolynomialSymbol::monomial(Complex b, std::size_t power) {
    if (power < 1) throw std::invalid_argument("PolynomialSymbol: monomial power must be >= 1");
    std::vector<Complex> v(power);
    v[power - 1] = b;
    return PolynomialSymbol(std::move(v), false);
}

Complex PolynomialSymbol::coeff(std::size_t k) const noexcept {
    return (k >= 1 && k <= b_.size()) ? b_[k - 1] : Complex{};
}

bool PolynomialSymbol::is_monomial() const noexcept {
    return std::all_of(b_.begin(), b_.end() - 1, [](Complex c) { return c == Complex{}; });
}

TruncatedSeries PolynomialSymbol::as_series() const {
    std::vector<Complex> v(b_.size() + 1);
    std::copy(b_.begin(), b_.end(), v.begin() + 1);
    return TruncatedSeries(std::move(v));
}

TruncatedSeries PolynomialSymbol::derivative() const {
    std::vector<Complex> v(b_.size());
    for (std::size_t k = 1; k <= b_.size(); ++k) v[k - 1] = static_cast<double>(k) * b_[k - 1];
    return TruncatedSeries(std::move(v));
}

PolynomialSymbol PolynomialSymbol::scaled(Complex s) const {
    if (s == Complex{}) throw std::invalid_argument("PolynomialSymbol: zero scale");
    std::vector<Complex> v = b_;
    for (auto& c : v) c *= s;
    return PolynomialSymbol(std::move(v), false);
}

Complex PolynomialSymbol::operator()(Complex z) const {
    Complex acc{};
    for (std::size_t k = b_.size(); k-- > 0;) acc = (acc + b_[k]) * z;
    return acc;
}

}  // namespace vfock
