#include "pentachain/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pentachain {

namespace {

std::string plain(const Rational& value) {
  if (boost::multiprecision::denominator(value) == 1) return boost::multiprecision::numerator(value).str();
  return to_fraction_string(value);
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Rational Polynomial::coefficient(std::size_t power) const {
  return power < coefficients_.size() ? coefficients_[power] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational value = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * x + *it;
  return value;
}

double Polynomial::operator()(double x) const {
  double value = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * x + to_double(*it);
  return value;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  for (auto& c : coefficients_) c *= scalar;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> product(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) product[i + j] += a.coefficients_[i] * b.coefficients_[j];
  }
  return Polynomial(std::move(product));
}

std::string Polynomial::to_string(const std::string& variable) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t power = 0; power < coefficients_.size(); ++power) {
    const Rational& c = coefficients_[power];
    if (c == 0) continue;
    Rational magnitude = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (power == 0 || magnitude != 1) out << plain(magnitude);
    if (power >= 1) out << (power == 0 || magnitude != 1 ? " " : "") << variable;
    if (power >= 2) out << '^' << power;
  }
  return out.str();
}

Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate needs matching, non-empty inputs");
  Polynomial result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis(std::vector<Rational>{1});
    Rational denominator = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw std::invalid_argument("interpolation nodes must be distinct");
      basis = basis * Polynomial(std::vector<Rational>{-xs[j], 1});
      denominator *= xs[i] - xs[j];
    }
    result += basis * (ys[i] / denominator);
  }
  return result;
}

BivariatePolynomial::BivariatePolynomial(std::vector<Polynomial> n_powers) : n_powers_(std::move(n_powers)) { trim(); }

void BivariatePolynomial::trim() {
  while (!n_powers_.empty() && n_powers_.back().is_zero()) n_powers_.pop_back();
}

std::size_t BivariatePolynomial::p_degree() const {
  std::size_t degree = 0;
  for (const auto& poly : n_powers_) degree = std::max(degree, poly.degree());
  return degree;
}

Polynomial BivariatePolynomial::in_p(std::size_t power) const {
  return power < n_powers_.size() ? n_powers_[power] : Polynomial{};
}

Rational BivariatePolynomial::operator()(const Rational& n, const Rational& p) const {
  Rational value = 0;
  for (auto it = n_powers_.rbegin(); it != n_powers_.rend(); ++it) value = value * n + (*it)(p);
  return value;
}

double BivariatePolynomial::operator()(double n, double p) const {
  double value = 0.0;
  for (auto it = n_powers_.rbegin(); it != n_powers_.rend(); ++it) value = value * n + (*it)(p);
  return value;
}

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  std::vector<Polynomial> diff(std::max(a.n_powers_.size(), b.n_powers_.size()));
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.in_p(i) - b.in_p(i);
  return BivariatePolynomial(std::move(diff));
}

std::string BivariatePolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t power = n_powers_.size(); power-- > 0;) {
    const Polynomial& c = n_powers_[power];
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << '(' << c.to_string("p") << ')';
    if (power >= 1) out << " n";
    if (power >= 2) out << '^' << power;
  }
  return out.str();
}

}  // namespace pentachain
