#include "pentachain/chain.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pentachain/errors.hpp"

namespace pentachain {

std::string_view mode_token(AttachmentMode mode) { return mode == AttachmentMode::Mode1 ? "M1" : "M2"; }

AttachmentMode parse_mode_token(std::string_view token) {
  if (token == "M1") return AttachmentMode::Mode1;
  if (token == "M2") return AttachmentMode::Mode2;
  throw std::invalid_argument("attachment mode must be \"M1\" or \"M2\", got \"" + std::string(token) + "\"");
}

ProbabilityParams::ProbabilityParams(Rational p1) : p1_(std::move(p1)), p1_value_(to_double(p1_)) {
  if (p1_ < 0 || p1_ > 1) {
    throw std::invalid_argument("p1 must lie in [0, 1], got " + to_fraction_string(p1_));
  }
}

ProbabilityParams::ProbabilityParams(double p1) : ProbabilityParams(Rational(p1)) {}

ProbabilityParams ProbabilityParams::parse(std::string_view text) { return ProbabilityParams(parse_rational(text)); }

ChainBlueprint::ChainBlueprint(std::size_t n, std::vector<AttachmentMode> choices)
    : n_(n), choices_(std::move(choices)) {
  if (n_ == 0) throw std::invalid_argument("n must be >= 1 (a chain needs at least one pentagon)");
  if (choices_.size() != choice_count(n_)) {
    throw std::invalid_argument("a chain with n=" + std::to_string(n_) + " needs " +
                                std::to_string(choice_count(n_)) + " choices, got " +
                                std::to_string(choices_.size()));
  }
}

ChainBlueprint ChainBlueprint::uniform(std::size_t n, AttachmentMode mode) {
  if (n == 0) throw std::invalid_argument("n must be >= 1 (a chain needs at least one pentagon)");
  return ChainBlueprint(n, std::vector<AttachmentMode>(choice_count(n), mode));
}

std::size_t ChainBlueprint::mode1_count() const {
  return static_cast<std::size_t>(std::count(choices_.begin(), choices_.end(), AttachmentMode::Mode1));
}

nlohmann::json to_json(const ChainBlueprint& blueprint) {
  nlohmann::json choices = nlohmann::json::array();
  for (AttachmentMode mode : blueprint.choices()) choices.push_back(std::string(mode_token(mode)));
  return {{"n", blueprint.n()}, {"choices", std::move(choices)}};
}

ChainBlueprint blueprint_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n")) throw std::invalid_argument("blueprint JSON needs an \"n\" field");
  const auto& n_field = doc.at("n");
  if (!n_field.is_number_integer() || n_field.get<std::int64_t>() < 1) {
    throw std::invalid_argument("blueprint \"n\" must be an integer >= 1");
  }
  std::vector<AttachmentMode> choices;
  if (doc.contains("choices")) {
    const auto& list = doc.at("choices");
    if (!list.is_array()) throw std::invalid_argument("blueprint \"choices\" must be an array");
    choices.reserve(list.size());
    for (const auto& item : list) {
      if (!item.is_string()) throw std::invalid_argument("blueprint choices must be \"M1\" or \"M2\" strings");
      choices.push_back(parse_mode_token(item.get_ref<const std::string&>()));
    }
  }
  return ChainBlueprint(n_field.get<std::size_t>(), std::move(choices));
}

PentagonChainGraph::PentagonChainGraph(const ChainBlueprint& blueprint)
    : n_(blueprint.n()), adjacency_(5 * blueprint.n()) {
  edges_.reserve(6 * n_ - 1);
  exits_.reserve(n_ - 1);
  auto connect = [this](VertexId a, VertexId b) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    edges_.emplace_back(a, b);
  };
  for (std::size_t k = 1; k <= n_; ++k) {
    for (std::size_t j = 1; j <= 5; ++j) connect(vertex_id(k, j), vertex_id(k, j % 5 + 1));
    if (k == n_) break;
    std::size_t position = 1;
    if (k >= 2) position = blueprint.exit_mode(k) == AttachmentMode::Mode1 ? 2 : 3;
    VertexId tail = vertex_id(k, position);
    exits_.push_back(tail);
    connect(tail, vertex_id(k + 1, 1));
  }
}

PentagonChainGraph build_graph(const ChainBlueprint& blueprint) { return PentagonChainGraph(blueprint); }

void write_edge_list(std::ostream& out, const PentagonChainGraph& graph) {
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

ChainBlueprint sample_blueprint(std::size_t n, const ProbabilityParams& params, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("n must be >= 1 (a chain needs at least one pentagon)");
  std::vector<AttachmentMode> choices(ChainBlueprint::choice_count(n));
  const double p1 = params.p1_value();
  for (auto& choice : choices) choice = rng.bernoulli(p1) ? AttachmentMode::Mode1 : AttachmentMode::Mode2;
  return ChainBlueprint(n, std::move(choices));
}

std::size_t enumeration_cap_from_env() {
  const char* raw = std::getenv("PENTACHAIN_ENUM_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) {
    throw std::invalid_argument(std::string("PENTACHAIN_ENUM_CAP must be a positive integer, got '") + raw + "'");
  }
  return static_cast<std::size_t>(value);
}

Rational blueprint_probability(const ChainBlueprint& blueprint, const ProbabilityParams& params) {
  std::size_t ones = blueprint.mode1_count();
  std::size_t twos = blueprint.choices().size() - ones;
  return pow(params.p1(), static_cast<unsigned>(ones)) * pow(params.p2(), static_cast<unsigned>(twos));
}

void enumerate_blueprints(std::size_t n, const ProbabilityParams& params, const BlueprintVisitor& visit,
                          std::size_t cap) {
  if (n == 0) throw std::invalid_argument("n must be >= 1 (a chain needs at least one pentagon)");
  if (n > cap) {
    throw EnumerationCapExceeded("enumeration of n=" + std::to_string(n) + " exceeds the cap of " +
                                 std::to_string(cap) + " (2^" + std::to_string(ChainBlueprint::choice_count(n)) +
                                 " realizations)");
  }
  const std::size_t m = ChainBlueprint::choice_count(n);
  // Probability depends only on the Mode1 count.
  std::vector<Rational> weight(m + 1);
  for (std::size_t ones = 0; ones <= m; ++ones) {
    weight[ones] = pow(params.p1(), static_cast<unsigned>(ones)) * pow(params.p2(), static_cast<unsigned>(m - ones));
  }
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<AttachmentMode> choices(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < m; ++i) {
      bool second = (code >> (m - 1 - i)) & 1U;
      choices[i] = second ? AttachmentMode::Mode2 : AttachmentMode::Mode1;
      ones += second ? 0 : 1;
    }
    visit(ChainBlueprint(n, choices), weight[ones]);
  }
}

}  // namespace pentachain
