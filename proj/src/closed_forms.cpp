#include "pentachain/closed_forms.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace pentachain {

namespace {

Rational q(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

template <class T>
T cast(const Rational& value) {
  if constexpr (std::is_same_v<T, Rational>) {
    return value;
  } else {
    return to_double(value);
  }
}

// Coefficient of n^i is (base + slope * p1), i = 0..3.
struct AffineCoefficient {
  Rational base;
  Rational slope;
};
using ExpectationTable = std::array<AffineCoefficient, 4>;

std::size_t stochastic_slot(TopologicalIndex index) {
  switch (index) {
    case TopologicalIndex::Gutman: return 0;
    case TopologicalIndex::Schultz: return 1;
    case TopologicalIndex::KfStar: return 2;
    case TopologicalIndex::KfPlus: return 3;
    default: break;
  }
  throw std::invalid_argument("no closed form for the " + std::string(index_key(index)) + " index");
}

const ExpectationTable& expectation_table(TopologicalIndex index) {
  static const std::array<ExpectationTable, 4> tables{{
      // (72-24p)n^3 + (72p-12)n^2 + (1-48p)n - 1
      {{{q(-1), q(0)}, {q(1), q(-48)}, {q(-12), q(72)}, {q(72), q(-24)}}},
      // (60-20p)n^3 + (60p+7)n^2 - (40p+7)n
      {{{q(0), q(0)}, {q(-7), q(-40)}, {q(7), q(60)}, {q(60), q(-20)}}},
      // (264/5 - 48/5 p)n^3 + (144/5 p - 12/5)n^2 + (193/5 - 96/5 p)n - 49
      {{{q(-49), q(0)}, {q(193, 5), q(-96, 5)}, {q(-12, 5), q(144, 5)}, {q(264, 5), q(-48, 5)}}},
      // (44-8p)n^3 + (48p+11)n^2 - (88p+15)n + 48p
      {{{q(0), q(48)}, {q(-15), q(-88)}, {q(11), q(48)}, {q(44), q(-8)}}},
  }};
  return tables[stochastic_slot(index)];
}

const std::array<IncrementConstants, 4>& increment_tables() {
  static const std::array<IncrementConstants, 4> tables{{
      {q(288), q(432), q(156), q(300)},
      {q(240), q(360), q(113), q(233)},
      {q(1296, 5), q(1584, 5), q(876, 5), q(1164, 5)},
      {q(216), q(264), q(133), q(181)},
  }};
  return tables;
}

template <class T>
T bernoulli_covariance(const T& x1, const T& x2, const T& y1, const T& y2, const T& p1) {
  const T one(1);
  const T mean_x = x1 * p1 + x2 * (one - p1);
  const T mean_y = y1 * p1 + y2 * (one - p1);
  return x1 * y1 * p1 + x2 * y2 * (one - p1) - mean_x * mean_y;
}

template <class T>
T variance_shape(const MomentParams<T>& m, const T& n) {
  const T& s = m.sigma2;
  const T& t = m.sigma2_tilde;
  const T& r = m.r;
  const T n2 = n * n;
  const T n3 = n2 * n;
  return (s * n3 * n2 - T(5) * r * n2 * n2 + T(10) * t * n3 + (T(65) * r - T(30) * s - T(45) * t) * n2 +
          (T(59) * s + T(65) * t - T(120) * r) * n + (T(60) * r - T(30) * s - T(30) * t)) /
         T(30);
}

}  // namespace

const IncrementConstants& published_increments(TopologicalIndex index) {
  return increment_tables()[stochastic_slot(index)];
}

template <class T>
T expected_index(TopologicalIndex index, std::int64_t n, const T& p1) {
  const ExpectationTable& table = expectation_table(index);
  const T nn(n);
  T value(0);
  for (std::size_t power = table.size(); power-- > 0;) {
    value = value * nn + cast<T>(table[power].base) + cast<T>(table[power].slope) * p1;
  }
  return value;
}

template <class T>
MomentParams<T> moment_params(TopologicalIndex index, const T& p1) {
  const IncrementConstants& c = published_increments(index);
  const T a = cast<T>(c.mode1_slope), b = cast<T>(c.mode2_slope);
  const T u = cast<T>(c.mode1_intercept), v = cast<T>(c.mode2_intercept);
  return {index, bernoulli_covariance(a, b, a, b, p1), bernoulli_covariance(u, v, u, v, p1),
          bernoulli_covariance(a, b, u, v, p1)};
}

template <class T>
T variance_index(TopologicalIndex index, std::int64_t n, const T& p1) {
  return variance_shape(moment_params(index, p1), T(n));
}

template <class T>
T sequence_value(Sequence kind, std::int64_t n, const T& p) {
  const T nn(n);
  const T n2 = nn * nn;
  switch (kind) {
    case Sequence::A:  // (18-6p)n^2 + (6p-7)n + 1
      return (T(18) - T(6) * p) * n2 + (T(6) * p - T(7)) * nn + T(1);
    case Sequence::B:  // (15/2 - 5/2 p)n^2 + (5/2 p - 3/2)n
      return (cast<T>(q(15, 2)) - cast<T>(q(5, 2)) * p) * n2 + (cast<T>(q(5, 2)) * p - cast<T>(q(3, 2))) * nn;
    case Sequence::C:  // (66/5 - 12/5 p)n^2 + (12/5 p - 31/5)n + 1
      return (cast<T>(q(66, 5)) - cast<T>(q(12, 5)) * p) * n2 + (cast<T>(q(12, 5)) * p - cast<T>(q(31, 5))) * nn +
             T(1);
    case Sequence::D:  // (11/2 - p)n^2 + (5p - 3/2)n - 4p
      return (cast<T>(q(11, 2)) - p) * n2 + (T(5) * p - cast<T>(q(3, 2))) * nn - T(4) * p;
  }
  throw std::invalid_argument("unknown sequence");
}

BivariatePolynomial published_expectation_polynomial(TopologicalIndex index) {
  const ExpectationTable& table = expectation_table(index);
  std::vector<Polynomial> powers;
  for (const auto& c : table) powers.emplace_back(std::vector<Rational>{c.base, c.slope});
  return BivariatePolynomial(std::move(powers));
}

BivariatePolynomial published_variance_polynomial(TopologicalIndex index) {
  const IncrementConstants& c = published_increments(index);
  // Each moment is a polynomial in p: for X in {x1 w.p. p, x2 w.p. 1-p},
  // Cov(X, Y) = x2 y2 + (x1 y1 - x2 y2) p - (x2 + (x1-x2) p)(y2 + (y1-y2) p).
  auto covariance = [](const Rational& x1, const Rational& x2, const Rational& y1, const Rational& y2) {
    Polynomial mean_x(std::vector<Rational>{x2, x1 - x2});
    Polynomial mean_y(std::vector<Rational>{y2, y1 - y2});
    return Polynomial(std::vector<Rational>{x2 * y2, x1 * y1 - x2 * y2}) - mean_x * mean_y;
  };
  const Polynomial s = covariance(c.mode1_slope, c.mode2_slope, c.mode1_slope, c.mode2_slope);
  const Polynomial t = covariance(c.mode1_intercept, c.mode2_intercept, c.mode1_intercept, c.mode2_intercept);
  const Polynomial r = covariance(c.mode1_slope, c.mode2_slope, c.mode1_intercept, c.mode2_intercept);
  const Rational k = q(1, 30);
  return BivariatePolynomial({
      (q(60) * r - q(30) * s - q(30) * t) * k,
      (q(59) * s + q(65) * t - q(120) * r) * k,
      (q(65) * r - q(30) * s - q(45) * t) * k,
      q(10) * t * k,
      q(-5) * r * k,
      s * k,
  });
}

template double expected_index<double>(TopologicalIndex, std::int64_t, const double&);
template Rational expected_index<Rational>(TopologicalIndex, std::int64_t, const Rational&);
template MomentParams<double> moment_params<double>(TopologicalIndex, const double&);
template MomentParams<Rational> moment_params<Rational>(TopologicalIndex, const Rational&);
template double variance_index<double>(TopologicalIndex, std::int64_t, const double&);
template Rational variance_index<Rational>(TopologicalIndex, std::int64_t, const Rational&);
template double sequence_value<double>(Sequence, std::int64_t, const double&);
template Rational sequence_value<Rational>(Sequence, std::int64_t, const Rational&);

}  // namespace pentachain
