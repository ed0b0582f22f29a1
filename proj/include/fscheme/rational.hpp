#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fscheme {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Always "p/q" with q >= 1 in lowest terms, e.g. "7/2", "3/1", "0/1".
std::string to_fraction_string(const Rational& value);

/// Accepts "p/q" or an integer "p"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Decimal rendering for display only.
std::string to_decimal(const Rational& value, int significant_digits = 12);

Rational make_ratio(const BigInt& numerator, const BigInt& denominator);

}  // namespace fscheme
