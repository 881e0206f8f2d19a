#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dist235 {

/// Arbitrary precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Serializes as "p/q" (denominator always present, e.g. "0/1", "-3/2").
std::string to_pq_string(const Rational& value);

/// Parses "p", "p/q", "-p/q" or a terminating decimal such as "1.25".
/// Throws ParseError on malformed input and ZeroDivisionError on q = 0.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace dist235
