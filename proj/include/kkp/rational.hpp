#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kkp {

// Exact arbitrary-precision rational. All model-level profits, weights and
// budgets use this type so that feasibility is decided without rounding.
using Rational = mpq_class;

// Parses "num/den", a plain integer, or a decimal such as "-12.375".
// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "num" when the denominator is 1, "num/den" otherwise.
// parse_rational(to_string(q)) == q for every q.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// floor(value) as a 64-bit integer; throws std::overflow_error if it does not fit.
std::int64_t floor_to_int64(const Rational& value);
std::int64_t ceil_to_int64(const Rational& value);

// base^exponent for a possibly negative exponent (base != 0 when exponent < 0).
Rational pow(const Rational& base, long exponent);

Rational from_int(std::int64_t value);

}  // namespace kkp
