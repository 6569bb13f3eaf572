#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pentachain/chain.hpp"
#include "pentachain/indices.hpp"
#include "pentachain/polynomial.hpp"
#include "pentachain/rational.hpp"

namespace pentachain {

/// Expectation and variance polynomials in (n, p1) recovered from the
/// enumeration oracle: exact interpolation of the moments at n = 1..6 and
/// p1 in {0, 1/2, 1}. Fitted on first use and cached.
struct VerifiedMoments {
  BivariatePolynomial expectation;
  BivariatePolynomial variance;
};

/// Defined for the four stochastic indices. Throws std::runtime_error if the
/// fitted expectation is not cubic in n and affine in p1.
const VerifiedMoments& verified_moments(TopologicalIndex index);

enum class Quantity { Expectation, Variance };
std::string_view quantity_key(Quantity quantity);  // "expectation" / "variance"

/// A published formula known to disagree with the oracle, with the cause.
struct KnownDiscrepancy {
  TopologicalIndex index;
  Quantity quantity;
  std::string_view cause;
  /// verified - published, as stated in closed form.
  std::string_view correction;
};

std::span<const KnownDiscrepancy> known_discrepancies();
const KnownDiscrepancy* find_known_discrepancy(TopologicalIndex index, Quantity quantity);

/// Published typos that change no result; listed in reports for completeness.
std::span<const std::string_view> published_notes();

struct DetectedDiscrepancy {
  TopologicalIndex index;
  Quantity quantity;
  BivariatePolynomial published;
  BivariatePolynomial verified;
  /// verified - published.
  BivariatePolynomial difference;
  const KnownDiscrepancy* known;  // null when unexplained
};

/// Compares every published polynomial with its verified counterpart exactly.
std::vector<DetectedDiscrepancy> detect_discrepancies();

/// Closed-form moments to trust. These evaluate the verified polynomials,
/// which coincide with the published ones wherever those agree with the oracle.
double closed_form_expectation(TopologicalIndex index, std::size_t n, double p1);
double closed_form_variance(TopologicalIndex index, std::size_t n, double p1);
Rational closed_form_expectation(TopologicalIndex index, std::size_t n, const Rational& p1);
Rational closed_form_variance(TopologicalIndex index, std::size_t n, const Rational& p1);

/// |claimed - oracle| <= 1e-9 * max(1, |oracle|), evaluated exactly.
bool moments_match(const Rational& claimed, const Rational& oracle);

struct MomentRow {
  TopologicalIndex index;
  std::size_t n;
  Rational p1;
  Rational expected_published;
  Rational variance_published;
  Rational expected_verified;
  Rational variance_verified;
  std::optional<Rational> expected_oracle;
  std::optional<Rational> variance_oracle;
  bool expectation_match = true;  // published vs oracle
  bool variance_match = true;
  bool verified_match = true;  // both verified moments vs oracle
  double expectation_gap = 0.0;  // published - oracle
  double expectation_relative_gap = 0.0;
  double variance_gap = 0.0;
  double variance_relative_gap = 0.0;
  /// Every published mismatch in this row has a known cause and the verified
  /// moments agree with the oracle.
  bool explained = true;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  std::vector<DetectedDiscrepancy> discrepancies;

  /// Rows with a published mismatch.
  std::size_t mismatch_count() const;
  /// True when every mismatch is explained and every discrepancy is known.
  bool all_explained() const;
};

/// Rows for n = 1..nmax and every p1 in `p_values`, over the four stochastic
/// indices; oracle columns are filled when n is within `cap`.
MomentReport build_moment_report(std::size_t nmax, std::span<const ProbabilityParams> p_values,
                                 std::size_t cap = enumeration_cap_from_env());

nlohmann::json to_json(const MomentRow& row);
nlohmann::json to_json(const DetectedDiscrepancy& discrepancy);
nlohmann::json to_json(const MomentReport& report);

}  // namespace pentachain
