// Acceptance checks. `acceptance --criterion N` runs one criterion and exits 0
// on PASS; without arguments all eight run in order.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "pentachain/closed_forms.hpp"
#include "pentachain/distribution.hpp"
#include "pentachain/indices.hpp"
#include "pentachain/metrics.hpp"
#include "pentachain/verification.hpp"

using namespace pentachain;

namespace {

// Pinned tolerances and budgets.
constexpr double kResistanceTolerance = 1e-9;
constexpr double kStandardErrors = 4.0;
constexpr double kVarianceTolerance = 0.05;
constexpr double kKsConstant = 1.628;  // alpha = 0.01
constexpr double kSpeedupTarget = 3.0;
constexpr double kBudgetAc1 = 1.0;
constexpr double kBudgetAc2 = 120.0;
constexpr double kBudgetAc3 = 60.0;
constexpr double kBudgetAc4 = 60.0;
constexpr double kBudgetAc5 = 30.0;
constexpr double kBudgetAc6 = 120.0;
constexpr double kBudgetMillion = 1.0;

const std::array<Rational, 3> kGridP{Rational(1, 5), Rational(1, 2), Rational(4, 5)};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string fixed(double value, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string key(TopologicalIndex index) { return std::string(index_key(index)); }

void budget(Outcome& o, const Stopwatch& watch, double limit) {
  const double elapsed = watch.seconds();
  o.note("runtime " + fixed(elapsed, 3) + " s (limit " + fixed(limit, 0) + " s)");
  o.require(elapsed < limit, "runtime within " + fixed(limit, 0) + " s");
}

// ---- 1: base values ----------------------------------------------------------

Outcome base_values() {
  Outcome o;
  const Stopwatch watch;
  const IndexBundle one = incremental_indices(ChainBlueprint(1, {}));
  const PentagonChainGraph graph(ChainBlueprint(1, {}));
  const IndexBundle matrix = compute_indices(graph, bfs_all_pairs(graph), structured_metrics(ChainBlueprint(1, {})).resistance);
  const std::array<std::pair<TopologicalIndex, int>, 4> expected{{{TopologicalIndex::Gutman, 60},
                                                                  {TopologicalIndex::Schultz, 60},
                                                                  {TopologicalIndex::KfStar, 40},
                                                                  {TopologicalIndex::KfPlus, 40}}};
  for (const auto& [index, value] : expected) {
    o.require(one.get(index) == value, key(index) + "(PG_1) = " + std::to_string(value));
    o.require(matrix.get(index) == value, "matrix " + key(index) + "(PG_1) = " + std::to_string(value));
    o.require(expected_index(index, 1, Rational(1, 2)) == value, "published initial " + key(index));
  }
  o.note("Gut, S, Kf*, Kf+ of PG_1 = " + to_fraction_string(one.gutman) + ", " + to_fraction_string(one.schultz) +
         ", " + to_fraction_string(one.kf_star) + ", " + to_fraction_string(one.kf_plus));
  budget(o, watch, kBudgetAc1);
  return o;
}

// ---- 2: engine agreement -----------------------------------------------------

bool engines_agree(const ChainBlueprint& b, std::string& problem) {
  const PentagonChainGraph g(b);
  const DistanceMatrix bfs = bfs_all_pairs(g);
  const StructuredMetrics structured = structured_metrics(b);
  if (!(bfs == structured.distance)) {
    problem = "distance matrices differ";
    return false;
  }
  const ResistanceMatrix lap = laplacian_resistance(g);
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
      if (std::abs(lap(u, v) - to_double(structured.resistance(u, v))) > kResistanceTolerance) {
        problem = "resistance differs at (" + std::to_string(u) + ", " + std::to_string(v) + ")";
        return false;
      }
    }
  }
  if (!(compute_indices(g, bfs, structured.resistance) == incremental_indices(b))) {
    problem = "matrix and recurrence indices differ";
    return false;
  }
  return true;
}

Outcome engine_agreement() {
  Outcome o;
  const Stopwatch watch;
  std::size_t checked = 0;
  std::string problem;
  RandomStream rng(20240601);
  for (int i = 0; i < 50; ++i) {
    const ChainBlueprint b = sample_blueprint(1 + rng.next() % 12, ProbabilityParams(Rational(1, 2)), rng);
    o.require(engines_agree(b, problem), "random blueprint " + to_json(b).dump() + ": " + problem);
    ++checked;
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    enumerate_blueprints(n, ProbabilityParams(Rational(1, 2)), [&](const ChainBlueprint& b, const Rational&) {
      o.require(engines_agree(b, problem), "blueprint " + to_json(b).dump() + ": " + problem);
      ++checked;
    });
  }
  o.note(std::to_string(checked) + " blueprints checked");
  budget(o, watch, kBudgetAc2);
  return o;
}

// ---- 3 and 4: closed forms against the oracle --------------------------------

struct GridCheck {
  std::size_t checks = 0;
  std::size_t published_failures = 0;
  std::size_t verified_failures = 0;
  std::vector<std::string> failing;  // "kf_star n=2 p1=1/5"
};

void report_discrepancies(Outcome& o, Quantity quantity) {
  for (const DetectedDiscrepancy& d : detect_discrepancies()) {
    if (d.quantity != quantity) continue;
    std::string line = "discrepancy: published " + key(d.index) + " " + std::string(quantity_key(quantity)) +
                       "; verified - published = " + d.difference.to_string();
    if (d.known) line += " (documented: " + std::string(d.known->correction) + ")";
    o.note(line);
  }
}

// A published failure is acceptable only when every failing index has a
// documented discrepancy and the verified polynomial passes everywhere.
void apply_fallback(Outcome& o, const GridCheck& grid, Quantity quantity) {
  o.note(std::to_string(grid.checks) + " grid checks; published " +
         std::to_string(grid.checks - grid.published_failures) + "/" + std::to_string(grid.checks) + ", verified " +
         std::to_string(grid.checks - grid.verified_failures) + "/" + std::to_string(grid.checks));
  if (grid.published_failures == 0) return;
  bool documented = true;
  for (const DetectedDiscrepancy& d : detect_discrepancies()) {
    if (d.quantity == quantity && !d.known) documented = false;
  }
  for (TopologicalIndex index : kStochasticIndices) {
    const bool fails = std::any_of(grid.failing.begin(), grid.failing.end(),
                                   [&](const std::string& s) { return s.rfind(key(index) + " ", 0) == 0; });
    if (fails && !find_known_discrepancy(index, quantity)) documented = false;
  }
  o.note("published formula fails on " + std::to_string(grid.published_failures) + " checks, first: " +
         grid.failing.front() + "; falling back to the verified polynomial");
  report_discrepancies(o, quantity);
  o.require(documented, "every published failure has a documented discrepancy");
  o.require(grid.verified_failures == 0, "verified polynomial matches the oracle on the grid");
}

Outcome expectation_closed_forms() {
  Outcome o;
  const Stopwatch watch;
  GridCheck grid;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Rational& p : kGridP) {
      const auto oracle = exact_moments(n, ProbabilityParams(p));
      for (TopologicalIndex index : kStochasticIndices) {
        const Rational& truth = oracle[static_cast<std::size_t>(index)].mean;
        ++grid.checks;
        if (!moments_match(expected_index(index, static_cast<std::int64_t>(n), p), truth)) {
          ++grid.published_failures;
          grid.failing.push_back(key(index) + " n=" + std::to_string(n) + " p1=" + to_fraction_string(p));
        }
        if (!moments_match(closed_form_expectation(index, n, p), truth)) ++grid.verified_failures;
      }
    }
  }
  apply_fallback(o, grid, Quantity::Expectation);

  // Degenerate chains, exactly, for n <= 50.
  std::size_t degenerate = 0, published_exact = 0, verified_exact = 0;
  for (std::size_t n = 1; n <= 50; ++n) {
    for (AttachmentMode mode : {AttachmentMode::Mode1, AttachmentMode::Mode2}) {
      const Rational p = mode == AttachmentMode::Mode1 ? Rational(1) : Rational(0);
      const IndexBundle exact = incremental_indices(ChainBlueprint::uniform(n, mode));
      for (TopologicalIndex index : kStochasticIndices) {
        ++degenerate;
        const bool published = expected_index(index, static_cast<std::int64_t>(n), p) == exact.get(index);
        const bool verified = closed_form_expectation(index, n, p) == exact.get(index);
        published_exact += published;
        verified_exact += verified;
        const std::string where = key(index) + " n=" + std::to_string(n) + " p1=" + to_fraction_string(p);
        o.require(published || find_known_discrepancy(index, Quantity::Expectation), "documented degenerate " + where);
        o.require(verified, "verified degenerate " + where);
      }
    }
  }
  o.note("degenerate chains n <= 50: published exact on " + std::to_string(published_exact) + "/" +
         std::to_string(degenerate) + ", verified exact on " + std::to_string(verified_exact) + "/" +
         std::to_string(degenerate));
  budget(o, watch, kBudgetAc3);
  return o;
}

Outcome variance_closed_forms() {
  Outcome o;
  const Stopwatch watch;
  GridCheck grid;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Rational& p : kGridP) {
      const auto oracle = exact_moments(n, ProbabilityParams(p));
      for (TopologicalIndex index : kStochasticIndices) {
        const Rational& truth = oracle[static_cast<std::size_t>(index)].variance;
        ++grid.checks;
        if (!moments_match(variance_index(index, static_cast<std::int64_t>(n), p), truth)) {
          ++grid.published_failures;
          grid.failing.push_back(key(index) + " n=" + std::to_string(n) + " p1=" + to_fraction_string(p));
        }
        if (!moments_match(closed_form_variance(index, n, p), truth)) ++grid.verified_failures;
      }
    }
  }
  apply_fallback(o, grid, Quantity::Variance);

  for (TopologicalIndex index : kStochasticIndices) {
    for (const Rational& p : {Rational(0), Rational(1, 5), Rational(1, 2), Rational(4, 5), Rational(1)}) {
      for (std::int64_t n : {1, 2}) {
        o.require(variance_index(index, n, p) == 0, "Var " + key(index) + " = 0 at n=" + std::to_string(n));
      }
    }
    for (std::int64_t n = 1; n <= 50; ++n) {
      o.require(variance_index(index, n, Rational(0)) == 0 && variance_index(index, n, Rational(1)) == 0,
                "Var " + key(index) + " = 0 at p1 in {0, 1}, n=" + std::to_string(n));
    }
  }
  const Rational spot = variance_index(TopologicalIndex::Gutman, 3, Rational(1, 2));
  const Rational spot_oracle =
      exact_moments(3, ProbabilityParams(Rational(1, 2)))[static_cast<std::size_t>(TopologicalIndex::Gutman)].variance;
  o.require(spot == 5184 && spot_oracle == 5184, "Var(Gut(PG_3)) = 5184 at p1 = 1/2");
  o.note("Var(Gut(PG_3)) at p1 = 1/2: closed form " + to_fraction_string(spot) + ", oracle " +
         to_fraction_string(spot_oracle));
  budget(o, watch, kBudgetAc4);
  return o;
}

// ---- 5: Monte Carlo ------------------------------------------------------------

Outcome monte_carlo_consistency() {
  Outcome o;
  const Stopwatch watch;
  MonteCarloConfig config;
  config.n = 10;
  config.params = ProbabilityParams(Rational(1, 2));
  config.samples = 100000;
  config.seed = 20240605;
  const auto stats = monte_carlo(kStochasticIndices, config);
  const double p = 0.5;
  const double m = static_cast<double>(config.samples);
  for (std::size_t i = 0; i < kStochasticIndices.size(); ++i) {
    const TopologicalIndex index = kStochasticIndices[i];
    const double published_mean = expected_index(index, 10, p);
    const double published_var = variance_index(index, 10, p);
    const double se = std::sqrt(published_var / m);
    const double published_z = (stats[i].mean - published_mean) / se;
    const double verified_z = (stats[i].mean - closed_form_expectation(index, 10, p)) / se;
    const double var_ratio = stats[i].variance() / published_var;
    std::string line = key(index) + ": mean " + fixed(stats[i].mean, 2) + ", published z " + fixed(published_z, 2) +
                       ", verified z " + fixed(verified_z, 2) + ", variance ratio " + fixed(var_ratio, 4);
    bool mean_ok = std::abs(published_z) <= kStandardErrors;
    if (!mean_ok && find_known_discrepancy(index, Quantity::Expectation)) {
      line += " (published expectation has a documented discrepancy; using the verified one)";
      mean_ok = std::abs(verified_z) <= kStandardErrors;
    }
    o.note(line);
    o.require(mean_ok, key(index) + " mean within " + fixed(kStandardErrors, 0) + " standard errors");
    o.require(std::abs(var_ratio - 1.0) <= kVarianceTolerance, key(index) + " variance within 5%");
  }
  budget(o, watch, kBudgetAc5);
  return o;
}

// ---- 6: normality --------------------------------------------------------------

MonteCarloConfig normality_config(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  MonteCarloConfig c;
  c.n = n;
  c.params = ProbabilityParams(Rational(1, 2));
  c.samples = samples;
  c.seed = seed;
  return c;
}

double median_ks(TopologicalIndex index, std::size_t n, Standardization source) {
  std::vector<double> ks;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ks.push_back(normality_test(index, normality_config(n, 10000, seed), source).ks_statistic);
  }
  std::sort(ks.begin(), ks.end());
  return ks[2];
}

Outcome normality() {
  Outcome o;
  const Stopwatch watch;
  const double threshold = kKsConstant / std::sqrt(10000.0);
  for (TopologicalIndex index : kStochasticIndices) {
    const bool documented = find_known_discrepancy(index, Quantity::Expectation) != nullptr;
    const auto config = normality_config(100, 10000, 20240606);
    const double published = normality_test(index, config, Standardization::PublishedMoments).ks_statistic;
    const double verified = normality_test(index, config, Standardization::VerifiedMoments).ks_statistic;
    std::string line = key(index) + ": KS published " + fixed(published, 5) + ", verified " + fixed(verified, 5) +
                       ", threshold " + fixed(threshold, 5);
    bool ok = published < threshold;
    if (!ok && documented) {
      line += " (published expectation has a documented discrepancy; using the verified one)";
      ok = verified < threshold;
    }
    o.note(line);
    o.require(ok, key(index) + " KS below threshold at n = 100");

    std::array<double, 3> medians{};
    std::array<double, 3> medians_verified{};
    const std::array<std::size_t, 3> sizes{5, 20, 100};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      medians[i] = median_ks(index, sizes[i], Standardization::PublishedMoments);
      medians_verified[i] = median_ks(index, sizes[i], Standardization::VerifiedMoments);
    }
    const bool decreasing = medians[0] > medians[1] && medians[1] > medians[2];
    const bool decreasing_verified = medians_verified[0] > medians_verified[1] && medians_verified[1] > medians_verified[2];
    o.note(key(index) + ": median KS at n = 5, 20, 100: published " + fixed(medians[0], 4) + ", " +
           fixed(medians[1], 4) + ", " + fixed(medians[2], 4) + "; verified " + fixed(medians_verified[0], 4) + ", " +
           fixed(medians_verified[1], 4) + ", " + fixed(medians_verified[2], 4));
    o.require(decreasing || (documented && decreasing_verified), key(index) + " median KS strictly decreasing in n");
  }
  budget(o, watch, kBudgetAc6);
  return o;
}

// ---- 7: performance ------------------------------------------------------------

Outcome performance() {
  Outcome o;
  const ChainBlueprint million = ChainBlueprint::uniform(1000000, AttachmentMode::Mode2);
  const Stopwatch watch;
  const IndexBundle b = incremental_indices(million);
  const double elapsed = watch.seconds();
  o.note("n = 10^6 recurrence: " + fixed(elapsed, 3) + " s, Gutman = " + to_fraction_string(b.gutman));
  o.require(elapsed < kBudgetMillion, "n = 10^6 recurrence under 1 s");

  // O(n): doubling n roughly doubles the time.
  const ChainBlueprint two_million = ChainBlueprint::uniform(2000000, AttachmentMode::Mode2);
  const Stopwatch doubled;
  incremental_indices(two_million);
  const double ratio = doubled.seconds() / std::max(elapsed, 1e-6);
  o.note("time ratio for n = 2 * 10^6 over 10^6: " + fixed(ratio, 2));
  o.require(ratio < 3.0, "linear scaling in n");

  MonteCarloConfig config = normality_config(100, 100000, 20240607);
  std::array<double, 2> seconds{};
  for (unsigned i = 0; i < 2; ++i) {
    config.workers = i == 0 ? 1 : 4;
    const Stopwatch run;
    monte_carlo(kStochasticIndices, config);
    seconds[i] = run.seconds();
  }
  const double speedup = seconds[0] / seconds[1];
  o.note("Monte Carlo m = 10^5, n = 100: 1 worker " + fixed(seconds[0], 3) + " s, 4 workers " + fixed(seconds[1], 3) +
         " s, speedup " + fixed(speedup, 2) + " on " + std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads");
  o.require(speedup >= kSpeedupTarget, "speedup >= 3 at 4 workers");
  return o;
}

// ---- 8: reproducibility --------------------------------------------------------

std::string run_command(std::vector<std::string> args, int& code) {
  std::istringstream in;
  std::ostringstream out, err;
  code = cli::run_cli(args, in, out, err);
  return out.str();
}

Outcome reproducibility() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"generate", "--n", "40", "--p1", "0.3", "--seed", "9"},
      {"generate", "--n", "40", "--p1", "0.3", "--seed", "9", "--format", "json"},
      {"sample", "--n", "60", "--samples", "20000", "--seed", "9"},
      {"sample", "--n", "60", "--samples", "9000", "--seed", "9", "--index", "kf_plus", "--format", "csv"},
      {"normality", "--n", "60", "--samples", "20000", "--seed", "9", "--index", "gutman,kf_star"},
      {"report", "--normality", "--n", "60", "--samples", "20000", "--seed", "9"},
  };
  for (const auto& base : commands) {
    std::string label;
    for (const auto& a : base) label += (label.empty() ? "" : " ") + a;
    const bool threaded = base.front() != "generate";
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "1", "4", "4"}) {
      std::vector<std::string> args = base;
      if (threaded) {
        args.push_back("--workers");
        args.push_back(workers);
      }
      int code = 0;
      outputs.push_back(run_command(args, code));
      o.require(code == 0, label + " exits 0");
    }
    const bool same = std::all_of(outputs.begin(), outputs.end(), [&](const std::string& s) { return s == outputs[0]; });
    o.require(same && !outputs[0].empty(), label + " byte-identical across runs and workers {1, 4}");
    o.note(label + ": " + std::to_string(outputs[0].size()) + " bytes, " + (same ? "identical" : "DIFFERENT"));
  }
  return o;
}

const std::array<std::function<Outcome()>, 8> kCriteria{
    base_values,     engine_agreement, expectation_closed_forms, variance_closed_forms,
    monte_carlo_consistency, normality, performance,    reproducibility};

const std::array<const char*, 8> kTitles{
    "base values",   "engine agreement", "expectation closed forms", "variance closed forms",
    "Monte Carlo consistency", "normality",  "performance",    "reproducibility"};

bool run_criterion(int number) {
  const Outcome o = kCriteria[number - 1]();
  std::cout << "AC" << number << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << kTitles[number - 1] << '\n';
  for (const auto& note : o.notes) std::cout << "    " << note << '\n';
  std::cout.flush();
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};
  bool all = true;
  for (int number : selected) {
    if (number < 1 || number > 8) {
      std::cerr << "criterion must be 1..8 (got " << number << ")\n";
      return 2;
    }
    all = run_criterion(number) && all;
  }
  return all ? 0 : 1;
}
