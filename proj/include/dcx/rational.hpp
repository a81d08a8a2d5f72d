#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace dcx {

// Exact rational scalar used throughout the library.
// All feasibility verdicts and distances are computed in this type;
// floating point appears nowhere on a verdict path.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses "p/q", "-p/q", integers, and finite decimals ("0.25" -> 1/4).
// The result is always canonical. Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

// Renders as "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Lossy decimal rendering, for opt-in human-readable output only.
std::string to_decimal_string(const Rational& value, int digits = 6);

}  // namespace dcx
