#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pentachain/rational.hpp"
#include "pentachain/rng.hpp"

namespace pentachain {

/// Which vertex of a pentagon hosts the bridge to the next pentagon.
/// Mode1 is adjacent to the entry vertex (x2, mirror x5); Mode2 is at cycle
/// distance two (x3, mirror x4).
enum class AttachmentMode : std::uint8_t { Mode1, Mode2 };

std::string_view mode_token(AttachmentMode mode);  // "M1" / "M2"
AttachmentMode parse_mode_token(std::string_view token);

/// Probability that a stochastic step uses Mode1. Stored exactly; decimal input
/// is converted to the exact decimal fraction.
class ProbabilityParams {
 public:
  explicit ProbabilityParams(Rational p1);
  explicit ProbabilityParams(double p1);
  static ProbabilityParams parse(std::string_view text);

  const Rational& p1() const { return p1_; }
  Rational p2() const { return Rational(1) - p1_; }
  double p1_value() const { return p1_value_; }
  /// p1 is 0 or 1, so every realization is the same chain.
  bool degenerate() const { return p1_ == 0 || p1_ == 1; }

 private:
  Rational p1_;
  double p1_value_;
};

/// One realization of the random growth process: n pentagons plus the mode
/// chosen at pentagons 2..n-1 (the first two pentagons are forced).
class ChainBlueprint {
 public:
  ChainBlueprint(std::size_t n, std::vector<AttachmentMode> choices);

  static ChainBlueprint uniform(std::size_t n, AttachmentMode mode);
  static std::size_t choice_count(std::size_t n) { return n > 2 ? n - 2 : 0; }

  std::size_t n() const { return n_; }
  std::span<const AttachmentMode> choices() const { return choices_; }
  /// Exit mode of pentagon k, 2 <= k <= n-1.
  AttachmentMode exit_mode(std::size_t k) const { return choices_.at(k - 2); }
  std::size_t mode1_count() const;

  friend bool operator==(const ChainBlueprint&, const ChainBlueprint&) = default;

 private:
  std::size_t n_;
  std::vector<AttachmentMode> choices_;
};

nlohmann::json to_json(const ChainBlueprint& blueprint);
ChainBlueprint blueprint_from_json(const nlohmann::json& doc);

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// (pentagon k in 1..n, position j in 1..5) of a vertex x_{k,j}.
struct VertexLabel {
  std::uint32_t pentagon;
  std::uint32_t position;
};

/// Labeled pentagonal chain. Vertex x_{k,j} has id 5(k-1) + (j-1).
class PentagonChainGraph {
 public:
  explicit PentagonChainGraph(const ChainBlueprint& blueprint);

  std::size_t n() const { return n_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// Pentagon by pentagon: the five cycle edges of pentagon k, then bridge k.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }
  /// Tail u_k of bridge k (1 <= k <= n-1); its head is x_{k+1,1}.
  VertexId exit_vertex(std::size_t k) const { return exits_.at(k - 1); }

  static VertexId vertex_id(std::size_t pentagon, std::size_t position) {
    return static_cast<VertexId>(5 * (pentagon - 1) + (position - 1));
  }
  static VertexLabel label(VertexId v) { return {v / 5 + 1, v % 5 + 1}; }

 private:
  std::size_t n_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<VertexId> exits_;
};

PentagonChainGraph build_graph(const ChainBlueprint& blueprint);

/// Edge list, one "u v" pair per line in edges() order.
void write_edge_list(std::ostream& out, const PentagonChainGraph& graph);

ChainBlueprint sample_blueprint(std::size_t n, const ProbabilityParams& params, RandomStream& rng);

inline constexpr std::size_t kDefaultEnumerationCap = 22;

/// PENTACHAIN_ENUM_CAP when set to a positive integer, the default otherwise.
std::size_t enumeration_cap_from_env();

using BlueprintVisitor = std::function<void(const ChainBlueprint&, const Rational& probability)>;

/// Visits all 2^(n-2) realizations once, in lexicographic order with Mode1 < Mode2.
/// Throws EnumerationCapExceeded when n > cap.
void enumerate_blueprints(std::size_t n, const ProbabilityParams& params, const BlueprintVisitor& visit,
                          std::size_t cap = kDefaultEnumerationCap);

/// p1^(#Mode1) * p2^(#Mode2).
Rational blueprint_probability(const ChainBlueprint& blueprint, const ProbabilityParams& params);

}  // namespace pentachain
