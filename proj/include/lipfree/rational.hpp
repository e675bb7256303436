#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lipfree {

/// Exact rational number. Every quantity in the toolkit (distances, coefficients,
/// function values, LP data) is carried in this type.
using Rational = mpq_class;

/// Builds num/den in canonical form. `den` must be nonzero.
Rational make_rational(long num, long den = 1);

/// Accepts "p/q", integers and terminating decimals ("-0.125"), converted exactly.
/// Throws Error(ErrorCode::ParseError) on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" or an integer string.
std::string to_string(const Rational& value);

inline Rational abs_value(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace lipfree
