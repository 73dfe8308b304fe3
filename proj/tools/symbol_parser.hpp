#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vfock/series.hpp"
#include "vfock/symbol.hpp"

namespace vfock::cli {

/// Rejected input; offset() is the byte offset into the original text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/**
 * Polynomial text in the grammar
 *
 *   expr  := ['+'|'-'] term (('+'|'-') term)*
 *   term  := coeff ['z' ['^' digits]] | 'z' ['^' digits]
 *   coeff := decimal | '(' ['+'|'-'] decimal ('+'|'-') decimal 'i' ')'
 *
 * Whitespace is ignored between tokens. Repeated powers add up. The result
 * holds the coefficient of z^k at index k and has at least one entry.
 */
std::vector<Complex> parse_polynomial(std::string_view text);

/// parse_polynomial followed by PolynomialSymbol::from_coefficients.
PolynomialSymbol parse_symbol(std::string_view text);

/// parse_polynomial as a TruncatedSeries whose order is the highest power written.
TruncatedSeries parse_series(std::string_view text);

/// "2", "-0.5", "2+0i", "1-2i", "3i", or any of those in parentheses.
Complex parse_complex(std::string_view text);

/// 17 significant digits, so parsing the output gives back the same double.
std::string format_real(double x);
std::string format_complex(Complex c);

/// Highest power first; parse_polynomial(format_polynomial(c)) reproduces c up to trailing zeros.
std::string format_polynomial(const std::vector<Complex>& coeffs);
std::string format_symbol(const PolynomialSymbol& g);

}  // namespace vfock::cli
