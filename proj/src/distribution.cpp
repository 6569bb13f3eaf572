#include "pentachain/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "pentachain/closed_forms.hpp"
#include "pentachain/errors.hpp"
#include "pentachain/metrics.hpp"
#include "pentachain/verification.hpp"

namespace pentachain {

namespace {

constexpr std::size_t kSpotCheckMaxN = 10;

// Calls leaf(state, mode1_count) for every completion of `state` to n pentagons.
template <class Leaf>
void walk(const ChainRecurrence& state, std::size_t n, std::size_t mode1_count, Leaf& leaf) {
  if (state.pentagons() == n) {
    leaf(state, mode1_count);
    return;
  }
  ChainRecurrence next = state;
  next.attach();
  if (next.pentagons() == n) {
    leaf(next, mode1_count);
    return;
  }
  ChainRecurrence branch = next;
  branch.set_exit(AttachmentMode::Mode1);
  walk(branch, n, mode1_count + 1, leaf);
  next.set_exit(AttachmentMode::Mode2);
  walk(next, n, mode1_count, leaf);
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (n > cap) {
    throw EnumerationCapExceeded("enumeration of n = " + std::to_string(n) + " exceeds the cap of " +
                                 std::to_string(cap));
  }
}

// p1^a (1-p1)^(m-a) for a = 0..m.
std::vector<Rational> weights_by_mode1_count(std::size_t choices, const ProbabilityParams& params) {
  std::vector<Rational> weights(choices + 1);
  for (std::size_t a = 0; a <= choices; ++a) {
    weights[a] = pow(params.p1(), static_cast<unsigned>(a)) * pow(params.p2(), static_cast<unsigned>(choices - a));
  }
  return weights;
}

void spot_check(std::size_t n) {
  if (n > kSpotCheckMaxN) return;
  for (AttachmentMode mode : {AttachmentMode::Mode1, AttachmentMode::Mode2}) {
    const ChainBlueprint blueprint = ChainBlueprint::uniform(n, mode);
    const PentagonChainGraph graph(blueprint);
    const StructuredMetrics metrics = structured_metrics(blueprint);
    const IndexBundle from_matrices = compute_indices(graph, bfs_all_pairs(graph), metrics.resistance);
    const IndexBundle from_recurrence = incremental_indices(blueprint);
    if (from_matrices != from_recurrence) {
      throw EngineDisagreement("matrix and recurrence engines disagree on " + to_json(blueprint).dump() +
                               ": " + to_json(from_matrices).dump() + " vs " + to_json(from_recurrence).dump());
    }
  }
}

}  // namespace

ExactDistribution exact_distribution(TopologicalIndex index, std::size_t n, const ProbabilityParams& params,
                                     std::size_t cap) {
  check_cap(n, cap);
  spot_check(n);
  const std::size_t choices = ChainBlueprint::choice_count(n);
  std::map<std::pair<__int128, std::size_t>, std::uint64_t> counts;
  auto leaf = [&](const ChainRecurrence& state, std::size_t mode1_count) {
    ++counts[{state.scaled_total(index), mode1_count}];
  };
  walk(ChainRecurrence{}, n, 0, leaf);

  const std::vector<Rational> weights = weights_by_mode1_count(choices, params);
  const std::int64_t scale = recurrence_table().scale[static_cast<std::size_t>(index)];
  std::map<Rational, Rational> law;
  for (const auto& [key, count] : counts) {
    const Rational probability = weights[key.second] * count;
    if (probability == 0) continue;
    law[from_int128(key.first, scale)] += probability;
  }

  ExactDistribution result{index, n, params.p1(), {}, 0, 0};
  Rational second = 0;
  for (auto& [value, probability] : law) {
    result.mean += value * probability;
    second += value * value * probability;
    result.support.emplace_back(value, probability);
  }
  result.variance = second - result.mean * result.mean;
  return result;
}

std::array<ExactMoments, 6> exact_moments(std::size_t n, const ProbabilityParams& params, std::size_t cap) {
  check_cap(n, cap);
  spot_check(n);
  const std::size_t choices = ChainBlueprint::choice_count(n);
  // Power sums of the scaled totals, grouped by Mode1 count.
  std::vector<std::array<__int128, 6>> first(choices + 1), second(choices + 1);
  for (auto& row : first) row.fill(0);
  for (auto& row : second) row.fill(0);
  auto leaf = [&](const ChainRecurrence& state, std::size_t mode1_count) {
    const auto& totals = state.scaled_totals();
    for (std::size_t i = 0; i < 6; ++i) {
      first[mode1_count][i] += totals[i];
      second[mode1_count][i] += totals[i] * totals[i];
    }
  };
  walk(ChainRecurrence{}, n, 0, leaf);

  const std::vector<Rational> weights = weights_by_mode1_count(choices, params);
  std::array<ExactMoments, 6> moments;
  for (std::size_t i = 0; i < 6; ++i) {
    Rational m1 = 0, m2 = 0;
    for (std::size_t a = 0; a <= choices; ++a) {
      m1 += weights[a] * from_int128(first[a][i]);
      m2 += weights[a] * from_int128(second[a][i]);
    }
    const Rational scale = recurrence_table().scale[i];
    m1 /= scale;
    m2 /= scale * scale;
    moments[i] = {m1, m2 - m1 * m1};
  }
  return moments;
}

void write_distribution_csv(std::ostream& out, const ExactDistribution& distribution) {
  out << "value,probability\n";
  for (const auto& [value, probability] : distribution.support) {
    out << to_fraction_string(value) << ',' << to_fraction_string(probability) << '\n';
  }
}

void SampleStats::add(double value) {
  ++count;
  const double delta = value - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (value - mean);
  min = std::min(min, value);
  max = std::max(max, value);
}

void SampleStats::merge(const SampleStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    const auto keep_index = index;
    const auto keep_seed = seed;
    *this = other;
    index = keep_index;
    seed = keep_seed;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double total = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / total;
  m2 += other.m2 + delta * delta * na * nb / total;
  count += other.count;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

double SampleStats::variance() const { return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1); }

double SampleStats::population_variance() const { return count == 0 ? 0.0 : m2 / static_cast<double>(count); }

nlohmann::json to_json(const SampleStats& stats) {
  return {{"index", std::string(index_key(stats.index))},
          {"seed", stats.seed},
          {"count", stats.count},
          {"mean", stats.mean},
          {"m2", stats.m2},
          {"variance", stats.variance()},
          {"min", stats.min},
          {"max", stats.max}};
}

namespace {

// Runs sample block `block`, handing each realization's recurrence state to `sink`.
template <class Sink>
void run_block(const MonteCarloConfig& config, std::uint64_t block, Sink& sink) {
  RandomStream rng = RandomStream::derive(config.seed, block);
  const std::uint64_t begin = block * kSamplesPerBlock;
  const std::uint64_t end = std::min(config.samples, begin + kSamplesPerBlock);
  const double p1 = config.params.p1_value();
  for (std::uint64_t s = begin; s < end; ++s) {
    ChainRecurrence recurrence;
    for (std::size_t k = 2; k <= config.n; ++k) {
      recurrence.attach();
      if (k < config.n) recurrence.set_exit(rng.bernoulli(p1) ? AttachmentMode::Mode1 : AttachmentMode::Mode2);
    }
    sink(s, recurrence);
  }
}

std::uint64_t block_count(const MonteCarloConfig& config) {
  return (config.samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
}

// Calls work(block) for every block, spreading blocks over the workers in stride.
template <class Work>
void for_each_block(const MonteCarloConfig& config, Work work) {
  const std::uint64_t blocks = block_count(config);
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(config.workers, blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) work(b);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t b = w; b < blocks; b += workers) work(b);
    });
  }
}

void validate(const MonteCarloConfig& config) {
  if (config.n == 0) throw std::invalid_argument("n must be at least 1");
  if (config.samples == 0) throw std::invalid_argument("sample count must be at least 1");
  if (config.workers == 0) throw std::invalid_argument("worker count must be at least 1");
}

}  // namespace

std::vector<SampleStats> monte_carlo(std::span<const TopologicalIndex> indices, const MonteCarloConfig& config) {
  validate(config);
  const std::uint64_t blocks = block_count(config);
  std::vector<std::vector<SampleStats>> partial(blocks, std::vector<SampleStats>(indices.size()));
  for_each_block(config, [&](std::uint64_t b) {
    auto& stats = partial[b];
    auto sink = [&](std::uint64_t, const ChainRecurrence& recurrence) {
      for (std::size_t i = 0; i < indices.size(); ++i) stats[i].add(recurrence.value(indices[i]));
    };
    run_block(config, b, sink);
  });

  std::vector<SampleStats> merged(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    merged[i].index = indices[i];
    merged[i].seed = config.seed;
    for (std::uint64_t b = 0; b < blocks; ++b) merged[i].merge(partial[b][i]);
  }
  return merged;
}

std::vector<double> sample_values(TopologicalIndex index, const MonteCarloConfig& config) {
  validate(config);
  std::vector<double> values(config.samples);
  for_each_block(config, [&](std::uint64_t b) {
    auto sink = [&](std::uint64_t s, const ChainRecurrence& recurrence) { values[s] = recurrence.value(index); };
    run_block(config, b, sink);
  });
  return values;
}

void write_samples_csv(std::ostream& out, std::span<const double> values) {
  out << "sample,value\n";
  char buffer[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%.17g", values[i]);
    out << i << ',' << buffer << '\n';
  }
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_statistic(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("KS statistic of an empty sample");
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = standard_normal_cdf(values[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - cdf, cdf - static_cast<double>(i) / m});
  }
  return d;
}

double ks_critical_value(double alpha, std::uint64_t sample_count) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (sample_count == 0) throw std::invalid_argument("sample count must be positive");
  double c;
  if (alpha == 0.01) {
    c = 1.628;
  } else if (alpha == 0.05) {
    c = 1.358;
  } else {
    c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  }
  return c / std::sqrt(static_cast<double>(sample_count));
}

std::string_view standardization_key(Standardization source) {
  switch (source) {
    case Standardization::PublishedMoments: return "published";
    case Standardization::VerifiedMoments: return "verified";
    case Standardization::SampleMoments: return "sample";
  }
  return "";
}

std::optional<Standardization> parse_standardization(std::string_view key) {
  for (auto source :
       {Standardization::PublishedMoments, Standardization::VerifiedMoments, Standardization::SampleMoments}) {
    if (standardization_key(source) == key) return source;
  }
  return std::nullopt;
}

NormalityResult normality_test(TopologicalIndex index, const MonteCarloConfig& config, Standardization source,
                               double alpha) {
  if (config.n <= 2) throw std::invalid_argument("normality needs n >= 3; PG_1 and PG_2 are deterministic");
  if (config.params.degenerate()) throw std::invalid_argument("normality needs 0 < p1 < 1; the chain is deterministic");
  if (std::find(kStochasticIndices.begin(), kStochasticIndices.end(), index) == kStochasticIndices.end() &&
      source != Standardization::SampleMoments) {
    throw std::invalid_argument("no closed-form moments for the " + std::string(index_key(index)) + " index");
  }

  std::vector<double> values = sample_values(index, config);
  const auto n = static_cast<std::int64_t>(config.n);
  const double p1 = config.params.p1_value();
  double center = 0.0, scale = 0.0;
  switch (source) {
    case Standardization::PublishedMoments:
      center = expected_index(index, n, p1);
      scale = std::sqrt(variance_index(index, n, p1));
      break;
    case Standardization::VerifiedMoments: {
      const VerifiedMoments& fit = verified_moments(index);
      center = fit.expectation(static_cast<double>(n), p1);
      scale = std::sqrt(fit.variance(static_cast<double>(n), p1));
      break;
    }
    case Standardization::SampleMoments: {
      SampleStats stats;
      for (double v : values) stats.add(v);
      center = stats.mean;
      scale = std::sqrt(stats.variance());
      break;
    }
  }
  if (!(scale > 0.0)) throw std::invalid_argument("standardizing scale is not positive");
  for (double& v : values) v = (v - center) / scale;

  NormalityResult result{index, config.n, config.params.p1(), config.samples, config.seed, config.workers, source,
                         center, scale, 0.0, alpha, ks_critical_value(alpha, config.samples), false};
  result.ks_statistic = ks_statistic(std::move(values));
  result.below_threshold = result.ks_statistic < result.threshold;
  return result;
}

nlohmann::json to_json(const NormalityResult& result) {
  return {{"index", std::string(index_key(result.index))},
          {"n", result.n},
          {"p1", to_fraction_string(result.p1)},
          {"sample_count", result.sample_count},
          {"seed", result.seed},
          {"standardization", std::string(standardization_key(result.source))},
          {"center", result.center},
          {"scale", result.scale},
          {"ks_statistic", result.ks_statistic},
          {"alpha", result.alpha},
          {"threshold", result.threshold},
          {"below_threshold", result.below_threshold}};
}

}  // namespace pentachain
