#include "symbol_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace vfock::cli {

namespace {

constexpr std::size_t kMaxPower = 100000;

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(pos_, what + (pos_ < text_.size() ? std::string(" near '") + text_[pos_] + "'" : " at end of input"));
    }

    // Optional sign, returned as +-1.
    double sign() {
        if (accept('+')) return 1.0;
        if (accept('-')) return -1.0;
        return 1.0;
    }

    bool at_number() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    // digits ['.' digits] [('e'|'E') ['+'|'-'] digits], no leading sign
    double decimal() {
        if (!at_number()) fail("expected a number");
        const std::size_t start = pos_;
        std::size_t i = pos_;
        auto digits = [&] {
            const std::size_t from = i;
            while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
            return i - from;
        };
        std::size_t mantissa = digits();
        if (i < text_.size() && text_[i] == '.') {
            ++i;
            mantissa += digits();
        }
        if (mantissa == 0) fail("expected digits");
        if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
            ++i;
            if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
            if (digits() == 0) {
                pos_ = i;
                fail("expected exponent digits");
            }
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + i, value);
        if (ec != std::errc() || end != text_.data() + i || !std::isfinite(value)) fail("number out of range");
        pos_ = i;
        return value;
    }

    std::size_t power() {
        skip_ws();
        std::size_t value = 0;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (value > kMaxPower) {
                pos_ = start;
                fail("exponent too large");
            }
            ++pos_;
        }
        if (pos_ == start) fail("expected a non-negative integer exponent");
        return value;
    }

    // '(' [sign] decimal sign decimal 'i' ')' with the opening parenthesis already consumed
    Complex parenthesized() {
        const double re = sign() * decimal();
        double s = 0.0;
        if (accept('+')) {
            s = 1.0;
        } else if (accept('-')) {
            s = -1.0;
        } else {
            fail("expected '+' or '-' before the imaginary part");
        }
        const double im = s * decimal();
        expect('i', "'i'");
        expect(')', "')'");
        return {re, im};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

void add_term(std::vector<Complex>& out, std::size_t power, Complex c) {
    if (out.size() <= power) out.resize(power + 1);
    out[power] += c;
}

std::size_t highest_nonzero(const std::vector<Complex>& c) {
    std::size_t last = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] != Complex{}) last = k;
    }
    return last;
}

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

std::vector<Complex> parse_polynomial(std::string_view text) {
    Cursor cur(text);
    if (cur.at_end()) cur.fail("empty expression");
    std::vector<Complex> out(1);
    double s = cur.sign();
    for (;;) {
        s *= cur.sign();  // "+ -3z" carries a second sign on the coefficient
        Complex c = 1.0;
        bool has_coeff = true;
        if (cur.accept('(')) {
            c = cur.parenthesized();
        } else if (cur.at_number()) {
            c = cur.decimal();
        } else if (cur.peek() == 'z') {
            has_coeff = false;
        } else {
            cur.fail("expected a coefficient or 'z'");
        }
        std::size_t power = 0;
        if (cur.accept('z')) {
            power = cur.accept('^') ? cur.power() : 1;
        } else if (!has_coeff) {
            cur.fail("expected 'z'");
        }
        add_term(out, power, s * c);
        if (cur.at_end()) break;
        if (cur.accept('+')) {
            s = 1.0;
        } else if (cur.accept('-')) {
            s = -1.0;
        } else {
            cur.fail("expected '+' or '-'");
        }
        if (cur.at_end()) cur.fail("expected a term");
    }
    return out;
}

PolynomialSymbol parse_symbol(std::string_view text) {
    return PolynomialSymbol::from_coefficients(parse_polynomial(text));
}

TruncatedSeries parse_series(std::string_view text) {
    return TruncatedSeries(parse_polynomial(text));
}

Complex parse_complex(std::string_view text) {
    Cursor cur(text);
    if (cur.at_end()) cur.fail("empty number");
    const bool paren = cur.accept('(');
    double s = cur.sign();
    Complex value;
    double first = s * cur.decimal();
    if (cur.accept('i')) {
        value = {0.0, first};
    } else if (cur.peek() == '+' || cur.peek() == '-') {
        s = cur.sign();
        const double im = s * cur.decimal();
        cur.expect('i', "'i'");
        value = {first, im};
    } else {
        value = {first, 0.0};
    }
    if (paren) cur.expect(')', "')'");
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return value;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0 && !std::signbit(c.imag())) return format_real(c.real());
    const double im = c.imag();
    return "(" + format_real(c.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i)";
}

std::string format_polynomial(const std::vector<Complex>& coeffs) {
    const std::size_t last = highest_nonzero(coeffs);
    std::string out;
    for (std::size_t k = last + 1; k-- > 0;) {
        const Complex c = coeffs.empty() ? Complex{} : coeffs[k];
        if (c == Complex{} && !(k == 0 && out.empty())) continue;
        std::string term;
        if (k > 0 && c == Complex(1.0)) {
        } else if (k > 0 && c == Complex(-1.0)) {
            term = "-";
        } else {
            term = format_complex(c);
        }
        if (k > 0) term += k == 1 ? "z" : "z^" + std::to_string(k);
        if (!out.empty() && term.front() != '-') out += '+';
        out += term;
    }
    return out;
}

std::string format_symbol(const PolynomialSymbol& g) {
    std::vector<Complex> c(g.degree() + 1);
    for (std::size_t k = 1; k <= g.degree(); ++k) c[k] = g.coeff(k);
    return format_polynomial(c);
}

}  // namespace vfock::cli
