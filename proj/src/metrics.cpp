#include "pentachain/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "pentachain/errors.hpp"

namespace pentachain {

namespace {

constexpr double kResidualTolerance = 1e-10;

std::vector<int> bfs_row(const PentagonChainGraph& graph, VertexId source) {
  std::vector<int> dist(graph.vertex_count(), -1);
  std::vector<VertexId> queue;
  queue.reserve(graph.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId at = queue[head];
    for (VertexId next : graph.neighbors(at)) {
      if (dist[next] < 0) {
        dist[next] = dist[at] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

template <class T, class Format>
void write_matrix_csv(std::ostream& out, const MetricMatrix<T>& matrix, Format format) {
  out << "vertex";
  for (std::size_t j = 0; j < matrix.size(); ++j) out << ',' << j;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << i;
    for (std::size_t j = 0; j < matrix.size(); ++j) out << ',' << format(matrix(i, j));
    out << '\n';
  }
}

}  // namespace

DistanceMatrix bfs_all_pairs(const PentagonChainGraph& graph) {
  const std::size_t size = graph.vertex_count();
  DistanceMatrix result(size, MetricKind::Distance);
  for (VertexId source = 0; source < size; ++source) {
    std::vector<int> row = bfs_row(graph, source);
    for (std::size_t target = source + 1; target < size; ++target) {
      if (row[target] < 0) throw std::invalid_argument("bfs_all_pairs needs a connected graph");
      result.set(source, target, row[target]);
    }
  }
  return result;
}

ResistanceMatrix laplacian_resistance(const PentagonChainGraph& graph, std::size_t dense_cap) {
  const std::size_t size = graph.vertex_count();
  if (size > dense_cap) {
    throw std::length_error("laplacian_resistance: " + std::to_string(size) + " vertices exceeds the dense cap of " +
                            std::to_string(dense_cap));
  }
  for (int d : bfs_row(graph, 0)) {
    if (d < 0) throw SingularLaplacian("graph Laplacian is singular beyond rank one: the graph is disconnected");
  }

  const auto N = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd shifted = Eigen::MatrixXd::Constant(N, N, 1.0 / static_cast<double>(size));
  for (VertexId v = 0; v < size; ++v) {
    shifted(v, v) += graph.degree(v);
    for (VertexId w : graph.neighbors(v)) shifted(v, w) -= 1.0;
  }

  Eigen::LLT<Eigen::MatrixXd> factor(shifted);
  if (factor.info() != Eigen::Success) throw SingularLaplacian("L + J/N is not positive definite");
  Eigen::MatrixXd inverse = factor.solve(Eigen::MatrixXd::Identity(N, N));

  double residual = (shifted * inverse - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  double scale = 1.0 + inverse.cwiseAbs().maxCoeff();
  if (!(residual <= kResidualTolerance * scale)) {
    throw SingularLaplacian("Laplacian solve residual " + std::to_string(residual) + " exceeds tolerance");
  }

  ResistanceMatrix result(size, MetricKind::Resistance);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      result.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                 inverse(i, i) + inverse(j, j) - 2.0 * inverse(i, j));
    }
  }
  return result;
}

StructuredMetrics structured_metrics(const ChainBlueprint& blueprint) {
  PentagonChainGraph graph(blueprint);
  const std::size_t n = blueprint.n();
  const std::size_t size = 5 * n;

  auto offset = [](std::size_t from_position, std::size_t to_position) {
    return (to_position + 5 - from_position) % 5;
  };

  // exit_position[k] is the 1-based position of u_k. Entry vertices sit at
  // position 1, so the chain "coordinate" of x_{k,1} accumulates
  // local(x_{k,1}, u_k) + 1 per bridge.
  std::vector<std::size_t> exit_position(n + 1, 1);
  for (std::size_t k = 1; k < n; ++k) exit_position[k] = PentagonChainGraph::label(graph.exit_vertex(k)).position;

  std::vector<std::int64_t> entry_distance(n + 1, 0);
  std::vector<std::int64_t> entry_fifths(n + 1, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t through = offset(1, exit_position[k]);
    entry_distance[k + 1] = entry_distance[k] + kPentagonDistance[through] + 1;
    entry_fifths[k + 1] = entry_fifths[k] + kPentagonResistanceFifths[through] + 5;
  }

  StructuredMetrics out{DistanceMatrix(size, MetricKind::Distance),
                        ExactResistanceMatrix(size, MetricKind::Resistance)};
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t i = 1; i <= 5; ++i) {
      const VertexId v = PentagonChainGraph::vertex_id(a, i);
      for (std::size_t j = i + 1; j <= 5; ++j) {
        const VertexId w = PentagonChainGraph::vertex_id(a, j);
        out.distance.set(v, w, kPentagonDistance[offset(i, j)]);
        out.resistance.set(v, w, Rational(kPentagonResistanceFifths[offset(i, j)], 5));
      }
      if (a == n) continue;
      // From v to the exit of pentagon a, then along the chain.
      const std::size_t to_exit = offset(i, exit_position[a]);
      const std::size_t entry_to_exit = offset(1, exit_position[a]);
      const std::int64_t lead_distance = kPentagonDistance[to_exit] - entry_distance[a] -
                                         kPentagonDistance[entry_to_exit];
      const std::int64_t lead_fifths = kPentagonResistanceFifths[to_exit] - entry_fifths[a] -
                                       kPentagonResistanceFifths[entry_to_exit];
      for (std::size_t b = a + 1; b <= n; ++b) {
        for (std::size_t j = 1; j <= 5; ++j) {
          const VertexId w = PentagonChainGraph::vertex_id(b, j);
          out.distance.set(v, w, lead_distance + entry_distance[b] + kPentagonDistance[offset(1, j)]);
          out.resistance.set(
              v, w, Rational(lead_fifths + entry_fifths[b] + kPentagonResistanceFifths[offset(1, j)], 5));
        }
      }
    }
  }
  return out;
}

void write_csv(std::ostream& out, const DistanceMatrix& matrix) {
  write_matrix_csv(out, matrix, [](std::int64_t d) { return std::to_string(d); });
}

void write_csv(std::ostream& out, const ExactResistanceMatrix& matrix) {
  write_matrix_csv(out, matrix, [](const Rational& r) { return to_fraction_string(r); });
}

void write_csv(std::ostream& out, const ResistanceMatrix& matrix) {
  write_matrix_csv(out, matrix, [](double r) {
    std::ostringstream text;
    text << std::setprecision(17) << r;
    return text.str();
  });
}

}  // namespace pentachain
