#pragma once

#include <cstdint>

#include "pentachain/indices.hpp"
#include "pentachain/polynomial.hpp"
#include "pentachain/rational.hpp"

namespace pentachain {

/// Bernoulli moment triple of the per-step increment slope U and intercept V:
/// sigma2 = Var(U), sigma2_tilde = Var(V), r = Cov(U, V).
template <class T>
struct MomentParams {
  TopologicalIndex index;
  T sigma2;
  T sigma2_tilde;
  T r;
};

/// Published Mode1/Mode2 slopes and intercepts of the carry increments
/// (carry_k - carry_{k-1} = slope * k - intercept).
struct IncrementConstants {
  Rational mode1_slope, mode2_slope, mode1_intercept, mode2_intercept;
};
const IncrementConstants& published_increments(TopologicalIndex index);

/// Published expectation, cubic in n and affine in p1, evaluated verbatim.
/// Defined for the four stochastic indices only (std::invalid_argument otherwise).
template <class T>
T expected_index(TopologicalIndex index, std::int64_t n, const T& p1);

template <class T>
MomentParams<T> moment_params(TopologicalIndex index, const T& p1);

/// Published variance:
/// (1/30)(s n^5 - 5 r n^4 + 10 t n^3 + (65r - 30s - 45t) n^2
///        + (59s + 65t - 120r) n + (60r - 30s - 30t)),  s = sigma2, t = sigma2_tilde.
template <class T>
T variance_index(TopologicalIndex index, std::int64_t n, const T& p1);

/// Expected exit sums of PG_n:
///   A = E sum d(v) d(u_n,v),  B = E sum d(u_n,v),
///   C = E sum d(v) r(u_n,v),  D = E sum r(u_n,v).
enum class Sequence { A, B, C, D };

template <class T>
T sequence_value(Sequence kind, std::int64_t n, const T& p1);

/// The published expectation and variance as exact polynomials in (n, p1).
BivariatePolynomial published_expectation_polynomial(TopologicalIndex index);
BivariatePolynomial published_variance_polynomial(TopologicalIndex index);

}  // namespace pentachain
