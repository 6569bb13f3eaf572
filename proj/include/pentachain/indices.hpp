#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pentachain/chain.hpp"
#include "pentachain/metrics.hpp"
#include "pentachain/rational.hpp"

namespace pentachain {

enum class TopologicalIndex : std::uint8_t { Wiener, Gutman, Schultz, Kirchhoff, KfStar, KfPlus };

inline constexpr std::array<TopologicalIndex, 6> kAllIndices{
    TopologicalIndex::Wiener,    TopologicalIndex::Gutman, TopologicalIndex::Schultz,
    TopologicalIndex::Kirchhoff, TopologicalIndex::KfStar, TopologicalIndex::KfPlus};

/// The four indices whose moments have closed forms.
inline constexpr std::array<TopologicalIndex, 4> kStochasticIndices{
    TopologicalIndex::Gutman, TopologicalIndex::Schultz, TopologicalIndex::KfStar, TopologicalIndex::KfPlus};

/// JSON / CLI key: "wiener", "gutman", "schultz", "kirchhoff", "kf_star", "kf_plus".
std::string_view index_key(TopologicalIndex index);
std::optional<TopologicalIndex> parse_index_key(std::string_view key);
constexpr bool is_resistance_based(TopologicalIndex index) {
  return index == TopologicalIndex::Kirchhoff || index == TopologicalIndex::KfStar ||
         index == TopologicalIndex::KfPlus;
}

struct IndexBundle {
  std::size_t n = 0;
  Rational wiener, gutman, schultz, kirchhoff, kf_star, kf_plus;

  const Rational& get(TopologicalIndex index) const;
  Rational& get(TopologicalIndex index);

  friend bool operator==(const IndexBundle&, const IndexBundle&) = default;
};

nlohmann::json to_json(const IndexBundle& bundle);
IndexBundle bundle_from_json(const nlohmann::json& doc);

/// Pair sums of the degree-weighted metrics. Throws DimensionMismatch when the
/// matrices do not match the graph's size or kinds.
IndexBundle compute_indices(const PentagonChainGraph& graph, const DistanceMatrix& distance,
                            const ExactResistanceMatrix& resistance);

/// value(k) = slope * k + intercept, in scaled units.
struct LinearStep {
  std::int64_t slope;
  std::int64_t intercept;
  constexpr __int128 at(std::int64_t k) const { return static_cast<__int128>(slope) * k + intercept; }
};

/// Per-index constants of the growth recurrence
///
///   index(PG_{k+1}) = index(PG_k) + carry_k + accumulate(k)
///   carry_k        = carry_{k-1} + step[mode of pentagon k](k),  k >= 2
///
/// where carry_k is the degree-weighted metric sum from the exit u_k
/// (12*sum d(v)d(u_k,v) for Gutman, sum (5d(v)+12) d(u_k,v) for Schultz,
/// 5*sum d(u_k,v) for Wiener, and the resistance analogues). Distance-based
/// entries are integers; resistance-based ones are in fifths.
struct RecurrenceTable {
  std::array<std::int64_t, 6> scale;
  std::array<std::int64_t, 6> initial;        // index(PG_1)
  std::array<std::int64_t, 6> initial_carry;  // carry_1
  std::array<LinearStep, 6> accumulate;
  std::array<std::array<LinearStep, 2>, 6> step;  // [index][mode]
};

const RecurrenceTable& recurrence_table();

/// O(1)-state growth engine over a chain. Starts at PG_1 with u_1 = x_{1,1}.
class ChainRecurrence {
 public:
  ChainRecurrence();

  std::size_t pentagons() const { return pentagons_; }

  /// Appends pentagon k+1 with a bridge from the current exit u_k.
  void attach();
  /// Fixes the exit of the newest pentagon (pentagon count >= 2).
  void set_exit(AttachmentMode mode);

  /// Index values in units of 1/scale.
  const std::array<__int128, 6>& scaled_totals() const { return totals_; }
  __int128 scaled_total(TopologicalIndex index) const { return totals_[static_cast<std::size_t>(index)]; }
  double value(TopologicalIndex index) const;
  IndexBundle bundle() const;

 private:
  std::size_t pentagons_ = 1;
  bool exit_ready_ = true;
  std::array<__int128, 6> totals_{};
  std::array<__int128, 6> carry_{};
};

/// All six indices in O(n) time with exact arithmetic.
IndexBundle incremental_indices(const ChainBlueprint& blueprint);

/// Runs `recurrence` through every step of `blueprint`.
void run_recurrence(ChainRecurrence& recurrence, const ChainBlueprint& blueprint);

}  // namespace pentachain
