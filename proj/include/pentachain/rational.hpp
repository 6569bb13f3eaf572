#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pentachain {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", a plain integer, or a decimal literal ("0.125", "1e-3" is not
/// accepted). Decimals are converted exactly, so "0.3" becomes 3/10.
Rational parse_rational(std::string_view text);

/// Always "p/q", with q > 0 and the fraction in lowest terms ("60/1").
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

Rational from_int128(__int128 numerator, std::int64_t denominator = 1);

/// Exact power with a non-negative integer exponent.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace pentachain
