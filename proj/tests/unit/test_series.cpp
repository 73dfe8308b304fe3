#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "vfock/series.hpp"

using vfock::Complex;
using vfock::TruncatedSeries;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, std::size_t order, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Complex> c(order + 1);
    for (auto& v : c) v = {u(rng), u(rng)};
    return TruncatedSeries(std::move(c));
}

// Closed form sum_k b^k z^{kA}/k!, independent of the recurrence.
TruncatedSeries exp_of_monomial(Complex b, std::size_t power, std::size_t order) {
    std::vector<Complex> c(order + 1);
    Complex term = 1.0;
    for (std::size_t k = 0; k * power <= order; ++k) {
        c[k * power] = term;
        term *= b / static_cast<double>(k + 1);
    }
    return TruncatedSeries(std::move(c));
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    double m = 0.0;
    for (std::size_t k = 0; k <= std::max(a.order(), b.order()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST_CASE("construction rejects non-finite coefficients") {
    CHECK_THROWS_AS(TruncatedSeries({1.0, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)}), std::domain_error);
    CHECK_THROWS_AS(TruncatedSeries(std::vector<Complex>{}), std::invalid_argument);
    CHECK(TruncatedSeries().order() == 0);
}

TEST_CASE("multiply") {
    SUBCASE("difference of squares") {
        const auto r = vfock::multiply({1.0, 1.0}, {1.0, -1.0}, 2);
        CHECK(r == TruncatedSeries({1.0, 0.0, -1.0}));
    }
    SUBCASE("identity element") {
        std::mt19937_64 rng(7);
        const auto f = random_series(rng, 12);
        CHECK(vfock::multiply(f, TruncatedSeries::constant(1.0), 12) == f);
    }
    SUBCASE("e^z e^{-z} = 1") {
        const auto a = exp_of_monomial(1.0, 1, 8);
        const auto b = exp_of_monomial(-1.0, 1, 8);
        const auto r = vfock::multiply(a, b, 8);
        CHECK(std::abs(r[0] - 1.0) < 1e-15);
        double worst = 0.0;
        for (std::size_t k = 1; k <= 8; ++k) worst = std::max(worst, std::abs(r[k]));
        CHECK(worst < 1e-15);
    }
    SUBCASE("order clamps") {
        const auto r = vfock::multiply({1.0, 1.0}, {1.0, 1.0}, 0);
        CHECK(r.order() == 0);
        CHECK(r[0] == Complex(1.0));
    }
}

TEST_CASE("ring axioms up to truncation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto a = random_series(rng, n);
        const auto b = random_series(rng, n);
        const auto c = random_series(rng, n);
        CHECK(max_abs_diff(vfock::multiply(a, b, n), vfock::multiply(b, a, n)) < 1e-13);
        const auto ab_c = vfock::multiply(vfock::multiply(a, b, n), c, n);
        const auto a_bc = vfock::multiply(a, vfock::multiply(b, c, n), n);
        CHECK(max_abs_diff(ab_c, a_bc) < 1e-12);
    }
}

TEST_CASE("integrate_from_zero and differentiate") {
    CHECK(vfock::integrate_from_zero(TruncatedSeries::constant(1.0)) == TruncatedSeries({0.0, 1.0}));
    CHECK(vfock::integrate_from_zero(TruncatedSeries::monomial(3)) == TruncatedSeries({0.0, 0.0, 0.0, 0.0, 0.25}));
    CHECK(vfock::integrate_from_zero({0.0, 2.0, 3.0}) == TruncatedSeries({0.0, 0.0, 1.0, 1.0}));

    CHECK(vfock::differentiate({0.0, 0.0, 0.0, 0.0, 0.25}) == TruncatedSeries::monomial(3));
    CHECK(vfock::differentiate(TruncatedSeries::constant(5.0)) == TruncatedSeries::zero(0));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_series(rng, rng() % 64, 10.0);
        const auto back = vfock::differentiate(vfock::integrate_from_zero(f));
        REQUIRE(back.order() == f.order());
        for (std::size_t k = 0; k <= f.order(); ++k) {
            const double tol = std::abs(f[k]) * std::numeric_limits<double>::epsilon();
            CHECK(std::abs(back[k] - f[k]) <= tol);
        }
    }
}

TEST_CASE("exp_series") {
    CHECK(vfock::exp_series(TruncatedSeries::zero(5)) == TruncatedSeries::constant(1.0, 5));

    SUBCASE("monomial substitution") {
        const Complex b(0.3, -1.2);
        const auto e = vfock::exp_series(TruncatedSeries::monomial(3, b).truncated(30));
        CHECK(max_abs_diff(e, exp_of_monomial(b, 3, 30)) < 1e-15);
    }
    SUBCASE("z + z^2 against the product of the two exponentials") {
        const auto e = vfock::exp_series({0.0, 1.0, 1.0, 0.0, 0.0});
        const auto oracle = vfock::multiply(exp_of_monomial(1.0, 1, 4), exp_of_monomial(1.0, 2, 4), 4);
        CHECK(max_abs_diff(e, oracle) < 1e-15);
        CHECK(e[2].real() == doctest::Approx(1.5));
        CHECK(e[3].real() == doctest::Approx(7.0 / 6.0));
        CHECK(e[4].real() == doctest::Approx(25.0 / 24.0));
    }
    SUBCASE("constant term factors out") {
        const auto e = vfock::exp_series({Complex(0.5, 0.25), 1.0, 0.0});
        const Complex s = std::exp(Complex(0.5, 0.25));
        CHECK(std::abs(e[0] - s) < 1e-15);
        CHECK(std::abs(e[2] - 0.5 * s) < 1e-15);
    }
    SUBCASE("overflow is a range error") {
        CHECK_THROWS_AS(vfock::exp_series(TruncatedSeries::constant(1000.0)), std::range_error);
    }
    SUBCASE("exp(f) exp(-f) = 1 for bounded coefficients") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 1 + rng() % 64;
            auto f = random_series(rng, n, 1.0 / std::sqrt(2.0));
            const auto r = vfock::multiply(vfock::exp_series(f), vfock::exp_series(-f), n);
            CHECK(std::abs(r[0] - 1.0) < 1e-12);
            for (std::size_t k = 1; k <= n; ++k) CHECK(std::abs(r[k]) < 1e-12);
        }
    }
}

TEST_CASE("evaluate") {
    CHECK(vfock::evaluate({1.0, 1.0}, Complex(0.0, 1.0)) == Complex(1.0, 1.0));
    CHECK(vfock::evaluate(TruncatedSeries::monomial(2), 2.0) == Complex(4.0));

    std::vector<Complex> c(21);
    c[1] = 1.0;
    const auto e = vfock::exp_series(TruncatedSeries(c));
    CHECK(std::abs(vfock::evaluate(e, 1.0) - std::numbers::e) < 1e-12);
}

TEST_CASE("scaled evaluation agrees with Horner and survives large radii") {
    std::mt19937_64 rng(17);
    const auto f = random_series(rng, 30);
    for (double r : {0.3, 1.0, 1.7, 4.0}) {
        const Complex z = std::polar(r, 0.7);
        const auto v = vfock::evaluate_scaled(f, z);
        const Complex direct = vfock::evaluate(f, z);
        CHECK(std::abs(v.mantissa * std::exp(v.log_scale) - direct) <= 1e-12 * std::abs(direct));
    }
    const auto big = TruncatedSeries::monomial(400);
    CHECK(vfock::log_abs_evaluate(big, 1e3) == doctest::Approx(400.0 * std::log(1e3)));
    CHECK(vfock::log_abs_evaluate(TruncatedSeries::zero(3), 2.0) == -std::numeric_limits<double>::infinity());
}
