#pragma once

#include <span>
#include <string>
#include <vector>

#include "pentachain/rational.hpp"

namespace pentachain {

/// Dense univariate polynomial with exact coefficients, lowest power first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  Rational coefficient(std::size_t power) const;
  std::span<const Rational> coefficients() const { return coefficients_; }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// e.g. "144/5 - 24/5 p" for variable "p".
  std::string to_string(const std::string& variable) const;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

/// The unique polynomial of degree < xs.size() through the points (Lagrange form,
/// expanded exactly).
Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Sum over i of n^i * P_i(p), with each P_i a polynomial in p.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Polynomial> n_powers);

  std::size_t n_degree() const { return n_powers_.empty() ? 0 : n_powers_.size() - 1; }
  std::size_t p_degree() const;
  bool is_zero() const { return n_powers_.empty(); }
  /// Coefficient polynomial of n^power.
  Polynomial in_p(std::size_t power) const;

  Rational operator()(const Rational& n, const Rational& p) const;
  double operator()(double n, double p) const;

  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  /// e.g. "(72 - 24 p) n^3 + (-12 + 72 p) n^2 + ..."
  std::string to_string() const;

 private:
  void trim();
  std::vector<Polynomial> n_powers_;
};

}  // namespace pentachain
