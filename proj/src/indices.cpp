#include "pentachain/indices.hpp"

#include <stdexcept>
#include <string>

#include "pentachain/errors.hpp"

namespace pentachain {

namespace {

constexpr std::size_t slot(TopologicalIndex index) { return static_cast<std::size_t>(index); }

// Order: Wiener, Gutman, Schultz, Kirchhoff, KfStar, KfPlus.
constexpr RecurrenceTable kTable{
    .scale = {1, 1, 1, 5, 5, 5},
    .initial = {15, 60, 60, 50, 200, 200},
    .initial_carry = {30, 144, 132, 100, 480, 440},
    .accumulate = {{{55, 15}, {276, 49}, {247, 55}, {225, 50}, {1140, 145}, {1015, 175}}},
    .step = {{
        {{{50, -20}, {75, -45}}},
        {{{288, -156}, {432, -300}}},
        {{{240, -113}, {360, -233}}},
        {{{225, -125}, {275, -175}}},
        {{{1296, -876}, {1584, -1164}}},
        {{{1080, -665}, {1320, -905}}},
    }},
};

}  // namespace

std::string_view index_key(TopologicalIndex index) {
  switch (index) {
    case TopologicalIndex::Wiener: return "wiener";
    case TopologicalIndex::Gutman: return "gutman";
    case TopologicalIndex::Schultz: return "schultz";
    case TopologicalIndex::Kirchhoff: return "kirchhoff";
    case TopologicalIndex::KfStar: return "kf_star";
    case TopologicalIndex::KfPlus: return "kf_plus";
  }
  return "";
}

std::optional<TopologicalIndex> parse_index_key(std::string_view key) {
  for (TopologicalIndex index : kAllIndices) {
    if (index_key(index) == key) return index;
  }
  return std::nullopt;
}

const Rational& IndexBundle::get(TopologicalIndex index) const {
  switch (index) {
    case TopologicalIndex::Wiener: return wiener;
    case TopologicalIndex::Gutman: return gutman;
    case TopologicalIndex::Schultz: return schultz;
    case TopologicalIndex::Kirchhoff: return kirchhoff;
    case TopologicalIndex::KfStar: return kf_star;
    case TopologicalIndex::KfPlus: return kf_plus;
  }
  throw std::invalid_argument("unknown index");
}

Rational& IndexBundle::get(TopologicalIndex index) {
  return const_cast<Rational&>(static_cast<const IndexBundle&>(*this).get(index));
}

nlohmann::json to_json(const IndexBundle& bundle) {
  nlohmann::json doc;
  doc["n"] = bundle.n;
  for (TopologicalIndex index : kAllIndices) doc[std::string(index_key(index))] = to_fraction_string(bundle.get(index));
  return doc;
}

IndexBundle bundle_from_json(const nlohmann::json& doc) {
  IndexBundle bundle;
  bundle.n = doc.at("n").get<std::size_t>();
  for (TopologicalIndex index : kAllIndices) {
    bundle.get(index) = parse_rational(doc.at(std::string(index_key(index))).get<std::string>());
  }
  return bundle;
}

IndexBundle compute_indices(const PentagonChainGraph& graph, const DistanceMatrix& distance,
                            const ExactResistanceMatrix& resistance) {
  const std::size_t size = graph.vertex_count();
  if (distance.size() != size || resistance.size() != size) {
    throw DimensionMismatch("metric matrices are " + std::to_string(distance.size()) + "x and " +
                            std::to_string(resistance.size()) + "x for a graph of " + std::to_string(size) +
                            " vertices");
  }
  if (distance.kind() != MetricKind::Distance || resistance.kind() != MetricKind::Resistance) {
    throw DimensionMismatch("compute_indices expects a distance matrix and a resistance matrix");
  }

  __int128 wiener = 0, gutman = 0, schultz = 0;
  Rational kirchhoff = 0, kf_star = 0, kf_plus = 0;
  for (VertexId u = 0; u < size; ++u) {
    const int du = graph.degree(u);
    for (VertexId v = u + 1; v < size; ++v) {
      const int dv = graph.degree(v);
      const std::int64_t d = distance(u, v);
      wiener += d;
      gutman += static_cast<__int128>(du * dv) * d;
      schultz += static_cast<__int128>(du + dv) * d;
      const Rational& r = resistance(u, v);
      kirchhoff += r;
      kf_star += du * dv * r;
      kf_plus += (du + dv) * r;
    }
  }
  return IndexBundle{graph.n(), from_int128(wiener), from_int128(gutman), from_int128(schultz),
                     kirchhoff,  kf_star,            kf_plus};
}

const RecurrenceTable& recurrence_table() { return kTable; }

ChainRecurrence::ChainRecurrence() {
  for (std::size_t i = 0; i < 6; ++i) {
    totals_[i] = kTable.initial[i];
    carry_[i] = kTable.initial_carry[i];
  }
}

void ChainRecurrence::attach() {
  if (!exit_ready_) throw std::logic_error("set_exit must be called before attaching the next pentagon");
  const auto k = static_cast<std::int64_t>(pentagons_);
  for (std::size_t i = 0; i < 6; ++i) totals_[i] += carry_[i] + kTable.accumulate[i].at(k);
  ++pentagons_;
  exit_ready_ = false;
}

void ChainRecurrence::set_exit(AttachmentMode mode) {
  if (pentagons_ < 2 || exit_ready_) throw std::logic_error("set_exit applies once to each pentagon k >= 2");
  const auto k = static_cast<std::int64_t>(pentagons_);
  const auto m = static_cast<std::size_t>(mode);
  for (std::size_t i = 0; i < 6; ++i) carry_[i] += kTable.step[i][m].at(k);
  exit_ready_ = true;
}

double ChainRecurrence::value(TopologicalIndex index) const {
  return static_cast<double>(totals_[slot(index)]) / static_cast<double>(kTable.scale[slot(index)]);
}

IndexBundle ChainRecurrence::bundle() const {
  IndexBundle bundle;
  bundle.n = pentagons_;
  for (TopologicalIndex index : kAllIndices) {
    bundle.get(index) = from_int128(totals_[slot(index)], kTable.scale[slot(index)]);
  }
  return bundle;
}

void run_recurrence(ChainRecurrence& recurrence, const ChainBlueprint& blueprint) {
  for (std::size_t k = 2; k <= blueprint.n(); ++k) {
    recurrence.attach();
    if (k < blueprint.n()) recurrence.set_exit(blueprint.exit_mode(k));
  }
}

IndexBundle incremental_indices(const ChainBlueprint& blueprint) {
  ChainRecurrence recurrence;
  run_recurrence(recurrence, blueprint);
  return recurrence.bundle();
}

}  // namespace pentachain
