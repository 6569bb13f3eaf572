#include <cmath>

#include "catch_amalgamated.hpp"

#include "oracle.hpp"
#include "pentachain/errors.hpp"
#include "pentachain/indices.hpp"

using namespace pentachain;

namespace {

IndexBundle matrix_indices(const ChainBlueprint& b) {
  const PentagonChainGraph g(b);
  return compute_indices(g, bfs_all_pairs(g), structured_metrics(b).resistance);
}

std::vector<int> exits_of(const ChainBlueprint& b) {
  std::vector<int> exits;
  for (AttachmentMode m : b.choices()) exits.push_back(m == AttachmentMode::Mode1 ? 2 : 3);
  return exits;
}

const ChainBlueprint kThreeMode1(3, {AttachmentMode::Mode1});
const ChainBlueprint kThreeMode2(3, {AttachmentMode::Mode2});

}  // namespace

TEST_CASE("single pentagon values") {
  const IndexBundle b = incremental_indices(ChainBlueprint(1, {}));
  CHECK(b.gutman == 60);
  CHECK(b.schultz == 60);
  CHECK(b.kf_star == 40);
  CHECK(b.kf_plus == 40);
  CHECK(b.wiener == 15);
  CHECK(b.kirchhoff == 10);
  CHECK(matrix_indices(ChainBlueprint(1, {})) == b);
}

TEST_CASE("frozen oracle values for two and three pentagons") {
  // Frozen from the independent brute force (Floyd-Warshall plus an exact
  // grounded-Laplacian inverse); the check below recomputes them.
  struct Case {
    ChainBlueprint blueprint;
    Rational gutman, schultz, kf_star, kf_plus;
  };
  const std::vector<Case> cases{
      {ChainBlueprint(2, {}), 529, 494, 393, 366},
      {kThreeMode1, 1694, 1542, Rational(6586, 5), 1194},
      {kThreeMode2, 1838, 1662, Rational(6874, 5), 1242},
  };
  for (const Case& c : cases) {
    const auto truth = oracle::indices(oracle::chain(static_cast<int>(c.blueprint.n()), exits_of(c.blueprint)));
    CHECK(truth.gutman == c.gutman);
    CHECK(truth.schultz == c.schultz);
    CHECK(truth.kf_star == c.kf_star);
    CHECK(truth.kf_plus == c.kf_plus);

    const IndexBundle b = incremental_indices(c.blueprint);
    CHECK(b.gutman == c.gutman);
    CHECK(b.schultz == c.schultz);
    CHECK(b.kf_star == c.kf_star);
    CHECK(b.kf_plus == c.kf_plus);
  }
}

TEST_CASE("two pentagons: the multiplicative Kirchhoff index is 393, not 441") {
  // 441 is what an accumulation step of 228k + 77 would give; the pentagon
  // term is 48 lower.
  const ChainBlueprint two(2, {});
  CHECK(incremental_indices(two).kf_star == 393);
  CHECK(matrix_indices(two).kf_star == 393);
}

TEST_CASE("recurrence engine equals the independent oracle on every chain up to n = 5") {
  for (std::size_t n = 1; n <= 5; ++n) {
    enumerate_blueprints(n, ProbabilityParams(0.5), [&](const ChainBlueprint& b, const Rational&) {
      const auto truth = oracle::indices(oracle::chain(static_cast<int>(n), exits_of(b)));
      const IndexBundle mine = incremental_indices(b);
      REQUIRE(mine.wiener == truth.wiener);
      REQUIRE(mine.gutman == truth.gutman);
      REQUIRE(mine.schultz == truth.schultz);
      REQUIRE(mine.kirchhoff == truth.kirchhoff);
      REQUIRE(mine.kf_star == truth.kf_star);
      REQUIRE(mine.kf_plus == truth.kf_plus);
    });
  }
}

TEST_CASE("recurrence and matrix engines agree on every chain up to n = 8") {
  for (std::size_t n = 1; n <= 8; ++n) {
    enumerate_blueprints(n, ProbabilityParams(0.5), [&](const ChainBlueprint& b, const Rational&) {
      REQUIRE(incremental_indices(b) == matrix_indices(b));
    });
  }
}

TEST_CASE("recurrence and matrix engines agree on 100 random chains up to n = 40") {
  RandomStream rng(314);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.next() % 40;
    const ChainBlueprint b = sample_blueprint(n, ProbabilityParams(0.5), rng);
    REQUIRE(incremental_indices(b) == matrix_indices(b));
  }
}

TEST_CASE("recurrence constants follow from the pentagon tables") {
  const RecurrenceTable& t = recurrence_table();
  // Lone pentagon: every vertex has degree 2 and metric rows {0,1,2,2,1} / {0,4,6,6,4}/5.
  int distance_row = 0, resistance_row = 0;
  for (int i = 0; i < 5; ++i) {
    distance_row += kPentagonDistance[i];
    resistance_row += kPentagonResistanceFifths[i];
  }
  REQUIRE(distance_row == 6);
  REQUIRE(resistance_row == 20);  // 4 in fifths

  // Indices of PG_1, in scaled units.
  CHECK(t.initial[0] == 5 * distance_row / 2);                // W = 15
  CHECK(t.initial[1] == 4 * 5 * distance_row / 2);            // Gut = 60
  CHECK(t.initial[2] == 4 * 5 * distance_row / 2);            // S = 60
  CHECK(t.initial[3] == 5 * resistance_row / 2);              // Kf = 10, in fifths
  CHECK(t.initial[4] == 4 * 5 * resistance_row / 2);          // Kf* = 40, in fifths
  CHECK(t.initial[5] == 4 * 5 * resistance_row / 2);          // Kf+ = 40, in fifths

  // Carries out of u_1: weights 5 (Wiener), 12 d(v) (Gutman), 5 d(v) + 12 (Schultz).
  CHECK(t.initial_carry[0] == 5 * distance_row);
  CHECK(t.initial_carry[1] == 12 * 2 * distance_row);
  CHECK(t.initial_carry[2] == (5 * 2 + 12) * distance_row);
  CHECK(t.initial_carry[3] == 5 * resistance_row);
  CHECK(t.initial_carry[4] == 12 * 2 * resistance_row);
  CHECK(t.initial_carry[5] == (5 * 2 + 12) * resistance_row);
}

TEST_CASE("a single Mode1 to Mode2 swap strictly increases the stochastic indices") {
  for (std::size_t n = 3; n <= 8; ++n) {
    enumerate_blueprints(n, ProbabilityParams(0.5), [&](const ChainBlueprint& b, const Rational&) {
      const IndexBundle base = incremental_indices(b);
      for (std::size_t i = 0; i < b.choices().size(); ++i) {
        if (b.choices()[i] != AttachmentMode::Mode1) continue;
        std::vector<AttachmentMode> swapped(b.choices().begin(), b.choices().end());
        swapped[i] = AttachmentMode::Mode2;
        const IndexBundle next = incremental_indices(ChainBlueprint(n, swapped));
        REQUIRE(next.gutman > base.gutman);
        REQUIRE(next.schultz > base.schultz);
        REQUIRE(next.kf_star > base.kf_star);
        REQUIRE(next.kf_plus > base.kf_plus);
      }
    });
  }
}

TEST_CASE("degenerate chains grow as n^3") {
  for (AttachmentMode mode : {AttachmentMode::Mode1, AttachmentMode::Mode2}) {
    const IndexBundle small = incremental_indices(ChainBlueprint::uniform(200, mode));
    const IndexBundle large = incremental_indices(ChainBlueprint::uniform(400, mode));
    for (TopologicalIndex index : kAllIndices) {
      const double ratio = to_double(large.get(index)) / to_double(small.get(index));
      CHECK(std::abs(ratio - 8.0) <= 0.05 * 8.0);
    }
  }
}

TEST_CASE("bundle invariants") {
  RandomStream rng(8);
  for (int i = 0; i < 30; ++i) {
    const ChainBlueprint b = sample_blueprint(1 + rng.next() % 30, ProbabilityParams(0.3), rng);
    const IndexBundle v = incremental_indices(b);
    for (TopologicalIndex index : kAllIndices) REQUIRE(v.get(index) > 0);
    REQUIRE(v.kirchhoff <= v.wiener);
    REQUIRE(v.kf_star <= v.gutman);
    REQUIRE(v.kf_plus <= v.schultz);
    REQUIRE((boost::multiprecision::denominator(v.kf_star) == 1 || boost::multiprecision::denominator(v.kf_star) == 5));
    REQUIRE((boost::multiprecision::denominator(v.kirchhoff) == 1 || boost::multiprecision::denominator(v.kirchhoff) == 5));
    REQUIRE(boost::multiprecision::denominator(v.gutman) == 1);
  }
}

TEST_CASE("bundle JSON") {
  const IndexBundle b = incremental_indices(ChainBlueprint(1, {}));
  const auto doc = to_json(b);
  CHECK(doc.at("gutman") == "60/1");
  CHECK(doc.at("kirchhoff") == "10/1");
  CHECK(doc.at("n") == 1);
  CHECK(bundle_from_json(doc) == b);
  CHECK(to_json(incremental_indices(kThreeMode1)).at("kf_star") == "6586/5");
}

TEST_CASE("index keys") {
  for (TopologicalIndex index : kAllIndices) CHECK(parse_index_key(index_key(index)) == index);
  CHECK_FALSE(parse_index_key("kf*").has_value());
  CHECK(is_resistance_based(TopologicalIndex::KfPlus));
  CHECK_FALSE(is_resistance_based(TopologicalIndex::Schultz));
}

TEST_CASE("dimension checks") {
  const PentagonChainGraph g = build_graph(ChainBlueprint(2, {}));
  const auto small = structured_metrics(ChainBlueprint(1, {}));
  const auto right = structured_metrics(ChainBlueprint(2, {}));
  CHECK_THROWS_AS(compute_indices(g, small.distance, right.resistance), DimensionMismatch);
  CHECK_THROWS_AS(compute_indices(g, right.distance, small.resistance), DimensionMismatch);
}

TEST_CASE("recurrence misuse") {
  ChainRecurrence r;
  CHECK_THROWS_AS(r.set_exit(AttachmentMode::Mode1), std::logic_error);
  r.attach();
  CHECK_THROWS_AS(r.attach(), std::logic_error);
  r.set_exit(AttachmentMode::Mode2);
  CHECK_THROWS_AS(r.set_exit(AttachmentMode::Mode1), std::logic_error);
  CHECK(r.pentagons() == 2);
}

TEST_CASE("a million pentagons through the recurrence") {
  const IndexBundle b = incremental_indices(ChainBlueprint::uniform(1000000, AttachmentMode::Mode1));
  CHECK(b.n == 1000000);
  CHECK(b.gutman > 0);
}
