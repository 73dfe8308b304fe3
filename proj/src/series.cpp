#include "vfock/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace vfock {

namespace {

void require_finite(const std::vector<Complex>& coeffs) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (!std::isfinite(coeffs[k].real()) || !std::isfinite(coeffs[k].imag())) {
            throw std::domain_error("TruncatedSeries: non-finite coefficient at index " +
                                    std::to_string(k));
        }
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_(1, Complex{}) {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("TruncatedSeries: at least one coefficient required");
    }
    require_finite(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Complex> coeffs)
    : TruncatedSeries(std::vector<Complex>(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
    return TruncatedSeries(std::vector<Complex>(order + 1));
}

TruncatedSeries TruncatedSeries::constant(Complex c, std::size_t order) {
    std::vector<Complex> v(order + 1);
    v[0] = c;
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::monomial(std::size_t power, Complex c) {
    std::vector<Complex> v(power + 1);
    v[power] = c;
    return TruncatedSeries(std::move(v));
}

std::size_t TruncatedSeries::degree() const noexcept {
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k] != Complex{}) return k;
    }
    return 0;
}

bool TruncatedSeries::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
    std::vector<Complex> v(order + 1);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), v.size()), v.begin());
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncatedSeries& TruncatedSeries::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    require_finite(coeffs_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    require_finite(coeffs_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
    return *this += -rhs;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(Complex s, TruncatedSeries f) { return f *= s; }

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t order) {
    std::vector<Complex> out(order + 1);
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    for (std::size_t i = 0; i < ac.size() && i <= order; ++i) {
        if (ac[i] == Complex{}) continue;
        const std::size_t jmax = std::min(bc.size() - 1, order - i);
        for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += ac[i] * bc[j];
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries integrate_from_zero(const TruncatedSeries& f) {
    const auto c = f.coeffs();
    std::vector<Complex> out(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
    return TruncatedSeries(std::move(out));
}

TruncatedSeries differentiate(const TruncatedSeries& f) {
    const auto c = f.coeffs();
    if (c.size() == 1) return TruncatedSeries::zero(0);
    std::vector<Complex> out(c.size() - 1);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) out[k] = static_cast<double>(k + 1) * c[k + 1];
    return TruncatedSeries(std::move(out));
}

TruncatedSeries exp_series(const TruncatedSeries& f) {
    const auto c = f.coeffs();
    const std::size_t n = f.order();

    // k*f_k, the coefficients of z f'(z)
    std::vector<Complex> kf(n + 1);
    for (std::size_t k = 1; k <= n; ++k) kf[k] = static_cast<double>(k) * c[k];

    std::vector<Complex> e(n + 1);
    e[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        Complex acc{};
        for (std::size_t j = 1; j <= k; ++j) acc += kf[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
    }

    const Complex scale = std::exp(c[0]);
    if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw std::range_error("exp_series: exp of the constant term overflows");
    }
    for (auto& v : e) {
        v *= scale;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::range_error("exp_series: coefficient overflow");
        }
    }
    return TruncatedSeries(std::move(e));
}

Complex evaluate(const TruncatedSeries& f, Complex z) {
    const auto c = f.coeffs();
    Complex acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

ScaledValue evaluate_scaled(const TruncatedSeries& f, Complex z) {
    const double r = std::abs(z);
    if (r <= 1.0) return {evaluate(f, z), 0.0};
    const std::size_t d = f.degree();
    const auto c = f.coeffs();
    const Complex w = 1.0 / z;
    // sum_k c_k z^{k-d} = sum_k c_k w^{d-k}
    Complex acc{};
    for (std::size_t k = 0; k <= d; ++k) acc = acc * w + c[k];
    // f(z) = z^d * acc; keep the phase of z^d in the mantissa
    return {acc * std::polar(1.0, static_cast<double>(d) * std::arg(z)), static_cast<double>(d) * std::log(r)};
}

double log_abs_evaluate(const TruncatedSeries& f, Complex z) {
    const ScaledValue v = evaluate_scaled(f, z);
    const double m = std::abs(v.mantissa);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(m) + v.log_scale;
}

}  // namespace vfock
