// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/grammar_corpus.hpp"
#include "cli.hpp"
#include "symbol_parser.hpp"
#include "vfock/fock_norms.hpp"
#include "vfock/quadrature.hpp"
#include "vfock/spectral_lab.hpp"
#include "vfock/volterra.hpp"

using namespace vfock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

std::vector<TruncatedSeries> monomials(std::size_t count) {
    std::vector<TruncatedSeries> out;
    for (std::size_t n = 0; n < count; ++n) out.push_back(TruncatedSeries::monomial(n));
    return out;
}

Outcome norm_oracle() {
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    for (double p : {1.0, 2.0, 4.0}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (double a : {1.0, 2.0, 3.0, 2.5}) {
                const FockParams params(p, alpha, a);
                const auto scheme = QuadratureScheme::for_degree(params, 60);
                for (std::size_t n = 0; n <= 60; ++n) {
                    const double exact = monomial_norm(n, params);
                    const double q = series_norm(TruncatedSeries::monomial(n), params, scheme);
                    worst = std::max(worst, std::abs(q - exact) / exact);
                }
            }
        }
    }
    return {worst <= kTol, fmt("max relative error %.3g over 2196 cases (bound 1e-10)", worst)};
}

Outcome resolvent_identity() {
    constexpr double kTol = 1e-12;
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<Complex> lambdas{Complex(2.0), Complex(-3.0), Complex(0.0, 1.5), Complex(1.0, 1.0),
                                       Complex(0.75)};
    double worst = 0.0;
    for (std::size_t d = 1; d <= 3; ++d) {
        std::vector<Complex> gc(d + 1);
        for (auto& v : gc) v = {u(rng), u(rng)};
        gc[d] += 1.0;
        const auto g = PolynomialSymbol::from_coefficients(gc);
        for (std::size_t hd : {0u, 4u, 8u}) {
            std::vector<Complex> hc(hd + 1);
            double scale = 0.0;
            for (auto& v : hc) {
                v = {u(rng), u(rng)};
                scale = std::max(scale, std::abs(v));
            }
            TruncatedSeries h(hc);
            h *= 1.0 / scale;
            for (Complex lambda : lambdas) {
                const std::size_t order = default_resolvent_order(g, h);
                const TruncatedSeries f = resolvent_apply(g, lambda, h, order);
                TruncatedSeries residual = f - (1.0 / lambda) * apply_tg(g, f).truncated(order) - h.truncated(order);
                for (Complex c : residual.coeffs()) worst = std::max(worst, std::abs(c));
            }
        }
    }
    return {worst <= kTol, fmt("max residual coefficient %.3g over 45 cases (bound 1e-12)", worst)};
}

Outcome spectral_radius() {
    bool ok = true;
    std::string detail;
    for (auto [b, alpha] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
        const auto g = PolynomialSymbol::monomial(b, 2);
        const FockParams params(2.0, alpha, 2.0);
        const double target = b / alpha;
        const double est = spectral_radius_estimate(g, params, 64, 512).estimate;
        const bool close = std::abs(est - target) <= 0.03 * target;
        bool monotone = true;
        double prev = 0.0;
        for (std::size_t m : {32u, 64u, 128u, 256u, 512u}) {
            const double v = spectral_radius_estimate(g, params, 64, m).estimate;
            monotone = monotone && v >= prev;
            prev = v;
        }
        ok = ok && close && monotone;
        detail += fmt("(b=%g,alpha=%g) ", b, alpha) + fmt("%.6f vs %.6f", est, target) +
                  (monotone ? " monotone; " : " NOT monotone; ");
    }
    return {ok, detail};
}

Outcome spectrum_region() {
    const auto g = PolynomialSymbol::monomial(1.0, 2);
    const FockParams params(2.0, 1.0, 2.0);
    const double radius = classify_spectrum(g, params).radius;
    std::vector<Complex> grid;
    for (double r : {0.5, 0.9, 1.1, 2.0}) {
        for (int j = 0; j < 50; ++j) grid.push_back(std::polar(r, 2.0 * std::numbers::pi * j / 50.0));
    }
    std::size_t agree = 0;
    std::size_t critical = 0;
    for (const ScanRow& row : membership_scan(g, params, grid)) {
        const auto expected = std::abs(row.lambda) < radius ? MembershipVerdict::NonMember : MembershipVerdict::Member;
        agree += row.verdict == expected;
        critical += row.verdict == MembershipVerdict::CriticalCircle;
    }
    return {agree == grid.size() && critical == 0,
            fmt("%g/%g points agree with the disk of radius %g, ", static_cast<double>(agree),
                static_cast<double>(grid.size()), radius) +
                std::to_string(critical) + " critical-circle verdicts"};
}

Outcome boundedness_trichotomy() {
    std::size_t agree = 0;
    std::string detail;
    for (std::size_t d = 1; d <= 3; ++d) {
        for (std::size_t a = 1; a <= 3; ++a) {
            const auto rep =
                boundedness_diagnostic(PolynomialSymbol::monomial(1.0, d), FockParams(2.0, 1.0, static_cast<double>(a)), 400);
            const auto expected = d < a ? BoundednessTrend::Vanishing
                                        : (d == a ? BoundednessTrend::Bounded : BoundednessTrend::Diverging);
            agree += rep.trend == expected;
            detail += "d" + std::to_string(d) + "A" + std::to_string(a) + "=" + std::string(to_string(rep.trend)) + " ";
        }
    }
    return {agree == 9, std::to_string(agree) + "/9 match: " + detail};
}

Outcome lp_equivalence() {
    const FockParams params(2.0, 0.5, 2.0);
    const auto family = lp_reference_family(41);
    std::size_t degree = 0;
    for (const auto& f : family) degree = std::max(degree, f.degree());
    const auto coarse = QuadratureScheme::for_degree(params, degree);
    const auto fine = QuadratureScheme::for_degree(params, degree, 2 * coarse.radial_nodes().size(),
                                                   2 * coarse.angular_count());
    const RatioRange a = lp_ratio_experiment(family, params, coarse);
    const RatioRange b = lp_ratio_experiment(family, params, fine);
    const double qa = a.max / a.min;
    const double qb = b.max / b.min;
    const double drift = std::abs(qb - qa) / qa;
    const bool in_band = a.min >= kLpBandMin * (1.0 - kBandSlack) && a.max <= kLpBandMax * (1.0 + kBandSlack);
    return {in_band && std::isfinite(qa) && drift <= 0.01,
            fmt("ratios in [%.10f, %.10f], ", a.min, a.max) +
                fmt("frozen band [%.10f, %.10f], ", kLpBandMin, kLpBandMax) +
                fmt("max/min %.6f, drift under doubling %.2g", qa, drift)};
}

Outcome weighted_inequality() {
    const FockParams params(2.0, 1.0, 2.0);
    const auto family = monomials(20);
    const std::size_t angular = QuadratureScheme::required_angular(19, 2.0);
    bool ok = true;
    std::string detail;
    for (Complex lambda : {Complex(4.0), Complex(8.0), Complex(-4.0)}) {
        const double c1 = weighted_lp_experiment(1.0, 2, lambda, params, family,
                                                 weighted_scheme(1.0, lambda, params, 128, angular));
        const double c2 = weighted_lp_experiment(1.0, 2, lambda, params, family,
                                                 weighted_scheme(1.0, lambda, params, 256, 2 * angular));
        const double drift = std::abs(c2 - c1) / c1;
        ok = ok && c1 <= kWeightedConstant * (1.0 + kBandSlack) && drift <= 0.1;
        detail += fmt("lambda=%g: %.8f (drift %.2g); ", lambda.real(), c1, drift);
    }
    return {ok, detail + fmt("single constant %.8f", kWeightedConstant)};
}

Outcome boundary_decay() {
    const std::vector<double> radii{1, 2, 3, 4, 5, 6};
    const auto values =
        boundary_term_decay(TruncatedSeries::constant(1.0), 1.0, 2, 4.0, FockParams(2.0, 1.0, 2.0), radii);
    bool decreasing = true;
    for (std::size_t i = 2; i < values.size(); ++i) decreasing = decreasing && values[i].second < values[i - 1].second;
    const double last = values.back().second;
    return {decreasing && last < 1e-8,
            fmt("R=2: %.3g, R=6: %.3g, ", values[1].second, last) + (decreasing ? "strictly decreasing" : "NOT decreasing")};
}

Outcome resolvent_blowup() {
    const auto g = PolynomialSymbol::monomial(1.0, 2);
    const FockParams params(2.0, 1.0, 2.0);
    const auto probes = monomials(25);
    const auto scheme = QuadratureScheme::for_degree(params, 128);
    const double in32 = resolvent_norm_probe(g, 0.5, params, probes, 32, scheme);
    const double in96 = resolvent_norm_probe(g, 0.5, params, probes, 96, scheme);
    const double out64 = resolvent_norm_probe(g, 3.0, params, probes, 64, scheme);
    const double out128 = resolvent_norm_probe(g, 3.0, params, probes, 128, scheme);
    const double growth = in96 / in32;
    const double change = std::abs(out128 - out64) / out64;
    return {growth >= 10.0 && change < 0.05,
            fmt("lambda=1/2 growth x%.3g (need >= 10), ", growth) + fmt("lambda=3 change %.2g (need < 0.05)", change)};
}

std::string run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"vfock"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome determinism_and_parsing() {
    const std::vector<std::vector<std::string>> invocations{
        {"scan", "--g", "z^2", "--grid-inner", "0.5", "--grid-outer", "2", "--grid-count", "10"},
        {"spectrum", "--g", "(1+2i)z^2 - z + 3"},
        {"verify", "boundary"},
        {"resolvent", "--g", "z^2", "--lambda", "2+0i", "--h", "1+z", "--format", "json"},
    };
    bool identical = true;
    for (const auto& args : invocations) identical = identical && run_cli(args) == run_cli(args);

    std::mt19937_64 rng(50);
    std::size_t round_trips = 0;
    for (int i = 0; i < 50; ++i) {
        const corpus::Case c = corpus::generate(rng);
        try {
            const auto parsed = cli::parse_polynomial(c.text);
            auto expected = c.coeffs;
            auto got = parsed;
            while (expected.size() > 1 && expected.back() == Complex{}) expected.pop_back();
            while (got.size() > 1 && got.back() == Complex{}) got.pop_back();
            const auto again = cli::parse_polynomial(cli::format_polynomial(parsed));
            round_trips += got == expected && again == got;
        } catch (const cli::ParseError&) {
        }
    }
    return {identical && round_trips == 50,
            std::string(identical ? "repeated invocations byte-identical" : "repeated invocations DIFFER") + ", " +
                std::to_string(round_trips) + "/50 corpus strings round-trip"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"norm oracle agreement", norm_oracle},
        {"resolvent identity", resolvent_identity},
        {"spectral radius", spectral_radius},
        {"spectrum region agreement", spectrum_region},
        {"boundedness trichotomy", boundedness_trichotomy},
        {"Littlewood-Paley equivalence", lp_equivalence},
        {"weighted inequality", weighted_inequality},
        {"boundary-term decay", boundary_decay},
        {"resolvent blow-up inside the disk", resolvent_blowup},
        {"determinism and parsing", determinism_and_parsing},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("criterion %2zu %s: %s | %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
