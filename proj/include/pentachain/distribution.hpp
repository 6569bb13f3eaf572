#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pentachain/chain.hpp"
#include "pentachain/indices.hpp"
#include "pentachain/rational.hpp"

namespace pentachain {

/// Exact law of one index over all realizations of PG_n.
struct ExactDistribution {
  TopologicalIndex index;
  std::size_t n;
  Rational p1;
  /// Distinct values in increasing order with their probabilities.
  std::vector<std::pair<Rational, Rational>> support;
  Rational mean;
  Rational variance;
};

/// Enumerates every blueprint through the recurrence engine. For small n the
/// uniform Mode1 and Mode2 chains are also run through the matrix engines and an
/// EngineDisagreement is thrown if they differ.
ExactDistribution exact_distribution(TopologicalIndex index, std::size_t n, const ProbabilityParams& params,
                                     std::size_t cap = enumeration_cap_from_env());

struct ExactMoments {
  Rational mean;
  Rational variance;
};

/// Exact mean and variance of all six indices, indexed by TopologicalIndex.
/// Realizations are grouped by Mode1 count, so no per-blueprint probability is
/// ever formed.
std::array<ExactMoments, 6> exact_moments(std::size_t n, const ProbabilityParams& params,
                                          std::size_t cap = enumeration_cap_from_env());

/// CSV with header "value,probability", both as "p/q".
void write_distribution_csv(std::ostream& out, const ExactDistribution& distribution);

/// Streaming mean/variance (Welford) with the pairwise merge of Chan et al.
struct SampleStats {
  TopologicalIndex index = TopologicalIndex::Gutman;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double value);
  void merge(const SampleStats& other);
  /// Unbiased sample variance; 0 below two samples.
  double variance() const;
  double population_variance() const;
};

nlohmann::json to_json(const SampleStats& stats);

/// Samples are drawn in blocks of this size; block b always uses stream
/// derive(seed, b), whichever worker runs it.
inline constexpr std::uint64_t kSamplesPerBlock = 4096;

struct MonteCarloConfig {
  std::size_t n = 1;
  ProbabilityParams params{Rational(1, 2)};
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// One SampleStats per requested index. Workers take blocks in stride and the
/// per-block states are merged in block order, so results are bit-identical for
/// every worker count.
std::vector<SampleStats> monte_carlo(std::span<const TopologicalIndex> indices, const MonteCarloConfig& config);

/// Raw sample values of one index, in sample order.
std::vector<double> sample_values(TopologicalIndex index, const MonteCarloConfig& config);

/// CSV with header "sample,value".
void write_samples_csv(std::ostream& out, std::span<const double> values);

/// Two-sided KS distance between the empirical law of `values` and N(0, 1):
/// max over sorted z_i of max(i/m - Phi(z_i), Phi(z_i) - (i-1)/m).
double ks_statistic(std::vector<double> values);

double standard_normal_cdf(double z);

/// c(alpha)/sqrt(m); c(0.01) = 1.628 and c(0.05) = 1.358, other levels use
/// sqrt(-ln(alpha/2)/2).
double ks_critical_value(double alpha, std::uint64_t sample_count);

enum class Standardization { PublishedMoments, VerifiedMoments, SampleMoments };

std::string_view standardization_key(Standardization source);  // "published" / "verified" / "sample"
std::optional<Standardization> parse_standardization(std::string_view key);

struct NormalityResult {
  TopologicalIndex index;
  std::size_t n;
  Rational p1;
  std::uint64_t sample_count;
  std::uint64_t seed;
  unsigned workers;
  Standardization source;
  double center;
  double scale;
  double ks_statistic;
  double alpha;
  double threshold;
  bool below_threshold;
};

/// Standardizes fresh samples by the chosen moments and measures the KS
/// distance to N(0, 1). Throws std::invalid_argument for n <= 2 or a degenerate
/// p1, where the index is constant.
NormalityResult normality_test(TopologicalIndex index, const MonteCarloConfig& config, Standardization source,
                               double alpha = 0.01);

nlohmann::json to_json(const NormalityResult& result);

}  // namespace pentachain
