#include "pentachain/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pentachain {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  // Leading zeros would select octal parsing.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt digits = parse_integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Rational value(digits, scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(text));
}

std::string to_fraction_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_int128(__int128 numerator, std::int64_t denominator) {
  bool negative = numerator < 0;
  unsigned __int128 magnitude =
      negative ? static_cast<unsigned __int128>(-(numerator + 1)) + 1 : static_cast<unsigned __int128>(numerator);
  BigInt big = static_cast<std::uint64_t>(magnitude >> 64);
  big <<= 64;
  big += static_cast<std::uint64_t>(magnitude);
  if (negative) big = -big;
  return Rational(big, BigInt(denominator));
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational factor = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= factor;
    factor *= factor;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace pentachain
