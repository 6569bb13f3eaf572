#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "pentachain/chain.hpp"
#include "pentachain/rational.hpp"

namespace pentachain {

enum class MetricKind { Distance, Resistance };

/// Dense symmetric all-pairs matrix with a zero diagonal; only the strict upper
/// triangle is stored.
template <class T>
class MetricMatrix {
 public:
  MetricMatrix(std::size_t size, MetricKind kind)
      : size_(size), kind_(kind), upper_(size == 0 ? 0 : size * (size - 1) / 2) {}

  std::size_t size() const { return size_; }
  MetricKind kind() const { return kind_; }

  T operator()(std::size_t i, std::size_t j) const {
    if (i == j) return T{};
    return upper_[slot(i, j)];
  }
  void set(std::size_t i, std::size_t j, T value) {
    if (i == j) throw std::invalid_argument("the diagonal of a metric matrix is fixed at zero");
    upper_[slot(i, j)] = std::move(value);
  }

  friend bool operator==(const MetricMatrix&, const MetricMatrix&) = default;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * size_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t size_;
  MetricKind kind_;
  std::vector<T> upper_;
};

using DistanceMatrix = MetricMatrix<std::int64_t>;
using ExactResistanceMatrix = MetricMatrix<Rational>;
using ResistanceMatrix = MetricMatrix<double>;

/// Metric from any vertex of a lone pentagon, indexed by cycle offset.
inline constexpr std::array<int, 5> kPentagonDistance{0, 1, 2, 2, 1};
/// Same, for resistance, in fifths: {0, 4/5, 6/5, 6/5, 4/5}.
inline constexpr std::array<int, 5> kPentagonResistanceFifths{0, 4, 6, 6, 4};

inline constexpr std::size_t kDefaultDenseCap = 5000;

/// Breadth-first search from every vertex.
DistanceMatrix bfs_all_pairs(const PentagonChainGraph& graph);

/// Effective resistance from the inverse of L + J/N, which equals L^+ + J/N on a
/// connected graph; the J/N terms cancel in M_uu + M_vv - 2 M_uv.
/// Throws SingularLaplacian on a disconnected graph or when the solve residual
/// exceeds 1e-10, and std::length_error above `dense_cap` vertices.
ResistanceMatrix laplacian_resistance(const PentagonChainGraph& graph, std::size_t dense_cap = kDefaultDenseCap);

struct StructuredMetrics {
  DistanceMatrix distance;
  ExactResistanceMatrix resistance;
};

/// Both metrics assembled from the lone-pentagon tables, using additivity
/// across the bridges (every bridge is a cut edge).
StructuredMetrics structured_metrics(const ChainBlueprint& blueprint);

/// CSV with a header row of vertex ids; resistance entries written as "p/q"
/// (exact) or with 17 significant digits (floating).
void write_csv(std::ostream& out, const DistanceMatrix& matrix);
void write_csv(std::ostream& out, const ExactResistanceMatrix& matrix);
void write_csv(std::ostream& out, const ResistanceMatrix& matrix);

}  // namespace pentachain
