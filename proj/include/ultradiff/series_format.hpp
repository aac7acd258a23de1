#pragma once

#include <string>
#include <string_view>

#include "ultradiff/laurent_series.hpp"

namespace ultradiff {

// Literal grammar:
//   term   := [coeff '*'] 'X' ['^' int] | coeff
//   series := term {('+'|'-') term} ['+' 'O(X^' int ')']  |  'O(X^' int ')'
// Coefficients must lie in 0..p-1. A literal without an O-term is taken to
// be known up to X^default_prec.
LaurentSeries parse_series(std::string_view text, PrimeField field, int default_prec);

// Inverse of parse_series: "1 + X^2 + O(X^16)", "0 + O(X^8)".
std::string to_string(const LaurentSeries& x);

} // namespace ultradiff
