#include <set>

#include "catch_amalgamated.hpp"

#include "pentachain/closed_forms.hpp"
#include "pentachain/distribution.hpp"
#include "pentachain/verification.hpp"

using namespace pentachain;

namespace {

// (n - 1) and p1 (n - 1)(n - 2) as polynomials in (n, p1).
BivariatePolynomial constant_shift(std::int64_t scale) {
  return BivariatePolynomial({Polynomial({Rational(-scale)}), Polynomial({Rational(scale)})});
}

BivariatePolynomial quadratic_shift(std::int64_t scale) {
  return BivariatePolynomial({Polynomial({Rational(0), Rational(2 * scale)}),
                              Polynomial({Rational(0), Rational(-3 * scale)}),
                              Polynomial({Rational(0), Rational(scale)})});
}

}  // namespace

TEST_CASE("verified polynomials have the expected shape") {
  for (TopologicalIndex index : kStochasticIndices) {
    const VerifiedMoments& m = verified_moments(index);
    CHECK(m.expectation.n_degree() == 3);
    CHECK(m.expectation.p_degree() == 1);
    CHECK(m.variance.n_degree() == 5);
    CHECK(m.variance.p_degree() == 2);
  }
  CHECK_THROWS_AS(verified_moments(TopologicalIndex::Wiener), std::invalid_argument);
}

TEST_CASE("verified polynomials predict the oracle outside the fitting range") {
  for (std::size_t n : {7, 8, 11}) {
    for (const Rational& p : {Rational(1, 5), Rational(1, 3), Rational(9, 10)}) {
      const auto oracle = exact_moments(n, ProbabilityParams(p));
      for (TopologicalIndex index : kStochasticIndices) {
        const ExactMoments& truth = oracle[static_cast<std::size_t>(index)];
        REQUIRE(closed_form_expectation(index, n, p) == truth.mean);
        REQUIRE(closed_form_variance(index, n, p) == truth.variance);
      }
    }
  }
}

TEST_CASE("detected discrepancies are exactly the two documented corrections") {
  const auto found = detect_discrepancies();
  REQUIRE(found.size() == 2);
  std::set<std::pair<TopologicalIndex, Quantity>> keys;
  for (const DetectedDiscrepancy& d : found) {
    keys.emplace(d.index, d.quantity);
    REQUIRE(d.known != nullptr);
    CHECK(d.difference == d.verified - d.published);
    CHECK(d.quantity == Quantity::Expectation);
  }
  CHECK(keys.count({TopologicalIndex::KfStar, Quantity::Expectation}) == 1);
  CHECK(keys.count({TopologicalIndex::KfPlus, Quantity::Expectation}) == 1);

  for (const DetectedDiscrepancy& d : found) {
    if (d.index == TopologicalIndex::KfStar) CHECK(d.difference == constant_shift(-48));
    if (d.index == TopologicalIndex::KfPlus) CHECK(d.difference == quadratic_shift(-24));
  }
}

TEST_CASE("the remaining published polynomials coincide with the verified ones") {
  for (TopologicalIndex index : kStochasticIndices) {
    CHECK(published_variance_polynomial(index) == verified_moments(index).variance);
  }
  CHECK(published_expectation_polynomial(TopologicalIndex::Gutman) ==
        verified_moments(TopologicalIndex::Gutman).expectation);
  CHECK(published_expectation_polynomial(TopologicalIndex::Schultz) ==
        verified_moments(TopologicalIndex::Schultz).expectation);
}

TEST_CASE("known discrepancy registry") {
  CHECK(known_discrepancies().size() == 2);
  CHECK(find_known_discrepancy(TopologicalIndex::KfStar, Quantity::Expectation) != nullptr);
  CHECK(find_known_discrepancy(TopologicalIndex::Gutman, Quantity::Expectation) == nullptr);
  CHECK(find_known_discrepancy(TopologicalIndex::KfStar, Quantity::Variance) == nullptr);
  CHECK(published_notes().size() == 2);
  CHECK(quantity_key(Quantity::Variance) == "variance");
}

TEST_CASE("moment tolerance") {
  CHECK(moments_match(Rational(1000), Rational(1000)));
  CHECK(moments_match(Rational(1000000000) + Rational(1, 2), Rational(1000000000)));
  CHECK_FALSE(moments_match(Rational(1000000000) + Rational(2), Rational(1000000000)));
  CHECK(moments_match(Rational(1, 10000000000LL), Rational(0)));
  CHECK_FALSE(moments_match(Rational(1, 100000000), Rational(0)));
}

TEST_CASE("moment report over n <= 8") {
  const std::vector<ProbabilityParams> ps{ProbabilityParams(0.2), ProbabilityParams(0.5), ProbabilityParams(0.8)};
  const MomentReport report = build_moment_report(8, ps);
  REQUIRE(report.rows.size() == 8 * 3 * 4);
  CHECK(report.all_explained());
  std::size_t mismatches = 0;
  for (const MomentRow& row : report.rows) {
    REQUIRE(row.expected_oracle.has_value());
    REQUIRE(row.variance_oracle.has_value());
    REQUIRE(row.verified_match);
    REQUIRE(row.variance_match);
    REQUIRE(row.explained);
    REQUIRE(*row.expected_oracle == row.expected_verified);
    const bool kf_star = row.index == TopologicalIndex::KfStar;
    const bool kf_plus = row.index == TopologicalIndex::KfPlus;
    // Kf* is off from n = 2 on, Kf+ from n = 3 on.
    const bool should_mismatch = (kf_star && row.n >= 2) || (kf_plus && row.n >= 3);
    REQUIRE(row.expectation_match == !should_mismatch);
    mismatches += !row.expectation_match;
  }
  CHECK(report.mismatch_count() == mismatches);
  CHECK(mismatches == 3 * (7 + 6));

  const auto doc = to_json(report);
  CHECK(doc.at("rows").size() == report.rows.size());
  CHECK(doc.at("discrepancies").size() == 2);
  CHECK(doc.at("all_explained").get<bool>());
}

TEST_CASE("report rows above the cap carry no oracle") {
  const std::vector<ProbabilityParams> ps{ProbabilityParams(0.5)};
  const MomentReport report = build_moment_report(5, ps, 3);
  for (const MomentRow& row : report.rows) {
    CHECK(row.expected_oracle.has_value() == (row.n <= 3));
  }
  CHECK(report.all_explained());
}
