#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pentachain/chain.hpp"
#include "pentachain/closed_forms.hpp"
#include "pentachain/distribution.hpp"
#include "pentachain/errors.hpp"
#include "pentachain/indices.hpp"
#include "pentachain/metrics.hpp"
#include "pentachain/verification.hpp"

namespace pentachain::cli {

namespace {

const std::vector<std::string> kCommands{"generate", "indices", "metrics", "distribution", "sample", "normality", "report"};

std::string real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

ProbabilityParams parse_p1(const std::string& text) {
  try {
    return ProbabilityParams::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--p1 must be a probability in [0, 1] given as p/q or a decimal (got '" + text + "'): " +
                     e.what());
  }
}

std::vector<TopologicalIndex> parse_indices(const std::vector<std::string>& keys,
                                            std::span<const TopologicalIndex> fallback) {
  if (keys.empty()) return {fallback.begin(), fallback.end()};
  std::vector<TopologicalIndex> out;
  for (const auto& key : keys) {
    auto index = parse_index_key(key);
    if (!index) {
      throw UsageError("unknown index '" + key + "' (expected wiener, gutman, schultz, kirchhoff, kf_star, kf_plus)");
    }
    out.push_back(*index);
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& grid) {
  // n=A..B
  const auto fail = [&] { return UsageError("--grid expects n=A..B with 1 <= A <= B (got '" + grid + "')"); };
  if (grid.rfind("n=", 0) != 0) throw fail();
  const auto dots = grid.find("..");
  if (dots == std::string::npos) throw fail();
  std::size_t lo = 0, hi = 0;
  const char* a = grid.data() + 2;
  const char* b = grid.data() + dots;
  if (std::from_chars(a, b, lo).ptr != b) throw fail();
  const char* c = grid.data() + dots + 2;
  const char* d = grid.data() + grid.size();
  if (c == d || std::from_chars(c, d, hi).ptr != d) throw fail();
  if (lo < 1 || hi < lo) throw fail();
  return {lo, hi};
}

bool uses_normality(const RunConfig& config) {
  return config.command == "normality" || (config.command == "report" && config.normality);
}

std::vector<std::string> report_p1_values(const RunConfig& config) {
  if (!config.p1_list.empty()) return config.p1_list;
  if (!config.grid.empty()) return {"0.1", "0.5", "0.9"};
  return {config.p1};
}

ChainBlueprint load_blueprint(const RunConfig& config, std::istream& in) {
  if (!config.mode.empty()) return ChainBlueprint::uniform(config.n, parse_mode_token(config.mode));
  nlohmann::json doc;
  try {
    if (config.blueprint == "-") {
      doc = nlohmann::json::parse(in);
    } else {
      std::ifstream file(config.blueprint);
      if (!file) throw UsageError("cannot open blueprint file '" + config.blueprint + "'");
      doc = nlohmann::json::parse(file);
    }
    return blueprint_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed blueprint JSON: ") + e.what());
  }
}

std::string output_format(const RunConfig& config, const std::string& fallback) {
  return config.format.empty() ? fallback : config.format;
}

// ---- commands ---------------------------------------------------------------

int cmd_generate(const RunConfig& config, std::ostream& out) {
  const ProbabilityParams params = parse_p1(config.p1);
  RandomStream rng(config.seed);
  const ChainBlueprint blueprint = sample_blueprint(config.n, params, rng);
  const PentagonChainGraph graph(blueprint);
  if (output_format(config, "text") == "json") {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : graph.edges()) edges.push_back({u, v});
    out << nlohmann::json{{"blueprint", to_json(blueprint)}, {"edges", edges}}.dump() << '\n';
  } else {
    out << to_json(blueprint).dump() << '\n';
    write_edge_list(out, graph);
  }
  return kExitOk;
}

int cmd_indices(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainBlueprint blueprint = load_blueprint(config, in);
  const IndexBundle bundle = incremental_indices(blueprint);

  if (blueprint.n() <= config.verify_cap) {
    const PentagonChainGraph graph(blueprint);
    const DistanceMatrix bfs = bfs_all_pairs(graph);
    const StructuredMetrics structured = structured_metrics(blueprint);
    const ResistanceMatrix laplacian = laplacian_resistance(graph);
    std::string problem;
    if (!(bfs == structured.distance)) problem = "BFS and structured distances differ";
    for (std::size_t u = 0; problem.empty() && u < graph.vertex_count(); ++u) {
      for (std::size_t v = u + 1; v < graph.vertex_count(); ++v) {
        const double exact = to_double(structured.resistance(u, v));
        if (std::abs(laplacian(u, v) - exact) > 1e-9) {
          problem = "Laplacian and structured resistance differ at (" + std::to_string(u) + ", " +
                    std::to_string(v) + "): " + real(laplacian(u, v)) + " vs " + to_fraction_string(structured.resistance(u, v));
          break;
        }
      }
    }
    const IndexBundle from_matrices = compute_indices(graph, bfs, structured.resistance);
    if (problem.empty() && !(from_matrices == bundle)) {
      problem = "matrix engine " + to_json(from_matrices).dump() + " vs recurrence engine " + to_json(bundle).dump();
    }
    if (!problem.empty()) {
      err << "engine disagreement: " << problem << "\nblueprint: " << to_json(blueprint).dump() << '\n';
      return kExitEngineDisagreement;
    }
  }

  const std::string format = output_format(config, "json");
  if (config.pretty) {
    out << "PG_" << blueprint.n() << '\n';
    for (TopologicalIndex index : kAllIndices) {
      out << "  " << std::left << std::setw(10) << index_key(index) << to_fraction_string(bundle.get(index)) << "  ("
          << real(to_double(bundle.get(index))) << ")\n";
    }
  } else if (format == "csv") {
    out << "index,value\n";
    for (TopologicalIndex index : kAllIndices) out << index_key(index) << ',' << to_fraction_string(bundle.get(index)) << '\n';
  } else {
    out << to_json(bundle).dump() << '\n';
  }
  return kExitOk;
}

int cmd_metrics(const RunConfig& config, std::istream& in, std::ostream& out) {
  const ChainBlueprint blueprint = load_blueprint(config, in);
  const PentagonChainGraph graph(blueprint);
  if (config.metric == "distance") {
    if (config.engine == "bfs") {
      write_csv(out, bfs_all_pairs(graph));
    } else {
      write_csv(out, structured_metrics(blueprint).distance);
    }
  } else if (config.engine == "laplacian") {
    write_csv(out, laplacian_resistance(graph));
  } else {
    write_csv(out, structured_metrics(blueprint).resistance);
  }
  return kExitOk;
}

int cmd_distribution(const RunConfig& config, std::ostream& out) {
  const ProbabilityParams params = parse_p1(config.p1);
  const std::vector<TopologicalIndex> indices = parse_indices(config.indices, std::array{TopologicalIndex::Gutman});
  const bool csv = output_format(config, "json") == "csv";
  nlohmann::json docs = nlohmann::json::array();
  for (TopologicalIndex index : indices) {
    const ExactDistribution law = exact_distribution(index, config.n, params, config.enumeration_cap);
    if (csv) {
      write_distribution_csv(out, law);
      continue;
    }
    nlohmann::json support = nlohmann::json::array();
    for (const auto& [value, probability] : law.support) {
      support.push_back({to_fraction_string(value), to_fraction_string(probability)});
    }
    docs.push_back({{"index", std::string(index_key(index))},
                    {"n", law.n},
                    {"p1", to_fraction_string(law.p1)},
                    {"support", support},
                    {"mean", to_fraction_string(law.mean)},
                    {"variance", to_fraction_string(law.variance)}});
  }
  if (!csv) out << (docs.size() == 1 ? docs[0] : docs).dump() << '\n';
  return kExitOk;
}

MonteCarloConfig monte_carlo_config(const RunConfig& config, std::size_t n, const ProbabilityParams& params) {
  MonteCarloConfig mc;
  mc.n = n;
  mc.params = params;
  mc.samples = config.samples;
  mc.seed = config.seed;
  mc.workers = config.workers;
  return mc;
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  const ProbabilityParams params = parse_p1(config.p1);
  const std::vector<TopologicalIndex> indices = parse_indices(config.indices, kStochasticIndices);
  const MonteCarloConfig mc = monte_carlo_config(config, config.n, params);
  if (output_format(config, "json") == "csv") {
    const std::vector<double> values = sample_values(indices.front(), mc);
    write_samples_csv(out, values);
    return kExitOk;
  }
  nlohmann::json stats = nlohmann::json::array();
  for (const SampleStats& s : monte_carlo(indices, mc)) stats.push_back(to_json(s));
  out << nlohmann::json{{"n", config.n},
                        {"p1", to_fraction_string(params.p1())},
                        {"samples", config.samples},
                        {"seed", config.seed},
                        {"stats", stats}}
             .dump()
      << '\n';
  return kExitOk;
}

void print_normality_table(std::ostream& out, const std::vector<NormalityResult>& results) {
  out << std::left << std::setw(10) << "index" << std::setw(11) << "moments" << std::setw(14) << "ks" << std::setw(14)
      << "threshold" << "below\n";
  for (const auto& r : results) {
    out << std::left << std::setw(10) << index_key(r.index) << std::setw(11) << standardization_key(r.source)
        << std::setw(14) << real(r.ks_statistic).substr(0, 12) << std::setw(14) << real(r.threshold).substr(0, 12)
        << (r.below_threshold ? "yes" : "no") << '\n';
  }
}

int run_normality(const RunConfig& config, std::span<const TopologicalIndex> fallback, std::ostream& out) {
  const ProbabilityParams params = parse_p1(config.p1);
  const std::vector<TopologicalIndex> indices = parse_indices(config.indices, fallback);
  const Standardization source = *parse_standardization(config.standardization);
  const MonteCarloConfig mc = monte_carlo_config(config, config.n, params);
  std::vector<NormalityResult> results;
  for (TopologicalIndex index : indices) results.push_back(normality_test(index, mc, source, config.alpha));
  if (config.pretty) {
    print_normality_table(out, results);
    return kExitOk;
  }
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& r : results) docs.push_back(to_json(r));
  out << (docs.size() == 1 ? docs[0] : nlohmann::json{{"results", docs}}).dump() << '\n';
  return kExitOk;
}

int report_grid(const RunConfig& config, std::ostream& out) {
  const auto [lo, hi] = parse_grid(config.grid);
  const bool verified = config.moments == "verified";
  std::vector<ProbabilityParams> ps;
  for (const auto& text : report_p1_values(config)) ps.push_back(parse_p1(text));
  static constexpr std::array<const char*, 4> kColumns{"gut", "schultz", "kfstar", "kfplus"};
  out << "n,p1";
  for (const char* c : kColumns) out << ",E_" << c;
  if (!config.expect_only) {
    for (const char* c : kColumns) out << ",Var_" << c;
  }
  out << '\n';
  for (std::size_t n = lo; n <= hi; ++n) {
    for (const auto& params : ps) {
      const double p = params.p1_value();
      const auto nn = static_cast<std::int64_t>(n);
      out << n << ',' << real(p);
      for (TopologicalIndex index : kStochasticIndices) {
        out << ',' << real(verified ? closed_form_expectation(index, n, p) : expected_index(index, nn, p));
      }
      if (!config.expect_only) {
        for (TopologicalIndex index : kStochasticIndices) {
          out << ',' << real(verified ? closed_form_variance(index, n, p) : variance_index(index, nn, p));
        }
      }
      out << '\n';
    }
  }
  return kExitOk;
}

void print_report_table(std::ostream& out, const MomentReport& report) {
  out << std::left << std::setw(9) << "index" << std::setw(4) << "n" << std::setw(8) << "p1" << std::setw(16)
      << "E published" << std::setw(16) << "E oracle" << std::setw(16) << "Var published" << std::setw(16)
      << "Var oracle" << "status\n";
  auto cell = [](const std::optional<Rational>& v) { return v ? real(to_double(*v)).substr(0, 14) : std::string("-"); };
  for (const auto& row : report.rows) {
    std::string status = row.expectation_match && row.variance_match ? "ok" : (row.explained ? "known" : "MISMATCH");
    out << std::left << std::setw(9) << index_key(row.index) << std::setw(4) << row.n << std::setw(8)
        << real(to_double(row.p1)).substr(0, 6) << std::setw(16) << cell(row.expected_published) << std::setw(16)
        << cell(row.expected_oracle) << std::setw(16) << cell(row.variance_published) << std::setw(16)
        << cell(row.variance_oracle) << status << '\n';
  }
  for (const auto& d : report.discrepancies) {
    out << "\n" << quantity_key(d.quantity) << " of " << index_key(d.index) << ": verified - published = "
        << d.difference.to_string() << '\n';
    if (d.known) out << "  cause: " << d.known->cause << '\n';
  }
  for (auto note : published_notes()) out << "\nnote: " << note << '\n';
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.normality) return run_normality(config, kStochasticIndices, out);
  if (!config.grid.empty()) return report_grid(config, out);

  std::vector<ProbabilityParams> ps;
  for (const auto& text : report_p1_values(config)) ps.push_back(parse_p1(text));
  const MomentReport report = build_moment_report(config.nmax, ps, config.enumeration_cap);

  if (config.pretty) {
    print_report_table(out, report);
  } else {
    out << to_json(report).dump() << '\n';
  }
  if (!report.all_explained()) {
    for (const auto& row : report.rows) {
      if (row.explained) continue;
      err << "unexplained mismatch: " << quantity_key(row.expectation_match ? Quantity::Variance : Quantity::Expectation)
          << " of " << index_key(row.index) << " at n = " << row.n << ", p1 = " << to_fraction_string(row.p1) << '\n';
    }
    for (const auto& d : report.discrepancies) {
      if (!d.known) err << "undocumented discrepancy: " << quantity_key(d.quantity) << " of " << index_key(d.index) << '\n';
    }
    return kExitFormulaMismatch;
  }
  return kExitOk;
}

int dispatch(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  if (config.command == "generate") return cmd_generate(config, out);
  if (config.command == "indices") return cmd_indices(config, in, out, err);
  if (config.command == "metrics") return cmd_metrics(config, in, out);
  if (config.command == "distribution") return cmd_distribution(config, out);
  if (config.command == "sample") return cmd_sample(config, out);
  if (config.command == "normality") return run_normality(config, std::array{TopologicalIndex::Gutman}, out);
  return cmd_report(config, out, err);
}

void add_run_options(CLI::App& sub, RunConfig& config) {
  sub.add_option("--n", config.n, "Number of pentagons");
  sub.add_option("--p1", config.p1, "Mode1 probability, as p/q or a decimal");
  sub.add_option("--seed", config.seed, "Master seed");
  sub.add_option("--samples", config.samples, "Monte Carlo sample count");
  sub.add_option("--workers", config.workers, "Worker threads");
}

void add_output_options(CLI::App& sub, RunConfig& config) {
  sub.add_option("--format", config.format, "json, csv or text");
  sub.add_option("--output,-o", config.output, "Write to this file instead of stdout");
  sub.add_flag("--pretty", config.pretty, "Human-readable rendering");
}

void add_blueprint_options(CLI::App& sub, RunConfig& config) {
  sub.add_option("--blueprint", config.blueprint, "Blueprint JSON file, '-' for stdin");
  sub.add_option("--mode", config.mode, "Use the uniform M1 or M2 chain with --n pentagons");
  sub.add_option("--n", config.n, "Number of pentagons (with --mode)");
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},       {"n", c.n},
          {"p1", c.p1},                 {"seed", c.seed},
          {"samples", c.samples},       {"workers", c.workers},
          {"enumeration_cap", c.enumeration_cap},
          {"format", c.format},         {"output", c.output},
          {"indices", c.indices},       {"blueprint", c.blueprint},
          {"mode", c.mode},             {"verify_cap", c.verify_cap},
          {"metric", c.metric},         {"engine", c.engine},
          {"standardization", c.standardization},
          {"alpha", c.alpha},           {"nmax", c.nmax},
          {"p1_list", c.p1_list},       {"grid", c.grid},
          {"expect_only", c.expect_only},
          {"normality", c.normality},   {"moments", c.moments},
          {"pretty", c.pretty}};
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig c;
  auto read = [&](const char* key, auto& field) {
    if (doc.contains(key)) doc.at(key).get_to(field);
  };
  read("command", c.command);
  read("n", c.n);
  read("p1", c.p1);
  read("seed", c.seed);
  read("samples", c.samples);
  read("workers", c.workers);
  read("enumeration_cap", c.enumeration_cap);
  read("format", c.format);
  read("output", c.output);
  read("indices", c.indices);
  read("blueprint", c.blueprint);
  read("mode", c.mode);
  read("verify_cap", c.verify_cap);
  read("metric", c.metric);
  read("engine", c.engine);
  read("standardization", c.standardization);
  read("alpha", c.alpha);
  read("nmax", c.nmax);
  read("p1_list", c.p1_list);
  read("grid", c.grid);
  read("expect_only", c.expect_only);
  read("normality", c.normality);
  read("moments", c.moments);
  read("pretty", c.pretty);
  return c;
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw UsageError("unknown command '" + c.command + "'");
  }
  if (c.n < 1) throw UsageError("--n must be >= 1 (got " + std::to_string(c.n) + ")");
  const ProbabilityParams params = parse_p1(c.p1);
  for (const auto& text : c.p1_list) parse_p1(text);
  if (c.samples < 1) throw UsageError("--samples must be >= 1 (got 0)");
  if (c.workers < 1) throw UsageError("--workers must be >= 1 (got 0)");
  if (c.enumeration_cap < 1) throw UsageError("the enumeration cap must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1) (got " + real(c.alpha) + ")");
  if (!c.format.empty() && c.format != "json" && c.format != "csv" && c.format != "text") {
    throw UsageError("--format must be json, csv or text (got '" + c.format + "')");
  }
  parse_indices(c.indices, kAllIndices);
  if (!parse_standardization(c.standardization)) {
    throw UsageError("--standardization must be published, verified or sample (got '" + c.standardization + "')");
  }
  if (c.moments != "published" && c.moments != "verified") {
    throw UsageError("--moments must be published or verified (got '" + c.moments + "')");
  }

  if (c.command == "indices" || c.command == "metrics") {
    if (c.blueprint.empty() && c.mode.empty()) throw UsageError(c.command + " needs --blueprint FILE or --mode M1|M2");
    if (!c.blueprint.empty() && !c.mode.empty()) throw UsageError("--blueprint and --mode are mutually exclusive");
    if (!c.mode.empty() && c.mode != "M1" && c.mode != "M2") {
      throw UsageError("--mode must be M1 or M2 (got '" + c.mode + "')");
    }
  }
  if (c.command == "metrics") {
    if (c.metric != "distance" && c.metric != "resistance") {
      throw UsageError("--metric must be distance or resistance (got '" + c.metric + "')");
    }
    const bool ok = c.engine == "structured" || (c.metric == "distance" && c.engine == "bfs") ||
                    (c.metric == "resistance" && c.engine == "laplacian");
    if (!ok) throw UsageError("engine '" + c.engine + "' does not compute the " + c.metric + " metric");
  }
  if (c.command == "distribution" && c.n > c.enumeration_cap) {
    throw UsageError("--n = " + std::to_string(c.n) + " exceeds the enumeration cap of " +
                     std::to_string(c.enumeration_cap) + " (raise it with --enum-cap or PENTACHAIN_ENUM_CAP)");
  }
  if (c.command == "sample" && (c.format == "csv") && c.indices.size() > 1) {
    throw UsageError("a CSV sample dump takes exactly one --index");
  }
  if (uses_normality(c)) {
    if (c.n <= 2) throw UsageError("normality needs --n >= 3; PG_1 and PG_2 are deterministic (got " + std::to_string(c.n) + ")");
    if (params.degenerate()) throw UsageError("normality needs 0 < p1 < 1; the chain is deterministic at p1 = " + c.p1);
    if (c.standardization != "sample") {
      for (TopologicalIndex index : parse_indices(c.indices, kStochasticIndices)) {
        if (std::find(kStochasticIndices.begin(), kStochasticIndices.end(), index) == kStochasticIndices.end()) {
          throw UsageError("the " + std::string(index_key(index)) +
                           " index has no closed-form moments; use --standardization sample");
        }
      }
    }
  }
  if (c.command == "report" && !c.normality) {
    if (c.grid.empty()) {
      if (c.nmax < 1) throw UsageError("--nmax must be >= 1 (got 0)");
    } else {
      parse_grid(c.grid);
    }
  }
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.enumeration_cap = enumeration_cap_from_env();
  std::string config_path;
  bool print_config = false;

  CLI::App app{"Random pentagonal chains: topological indices, closed-form moments and their verification",
               "pentachain"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "Load the run configuration from a JSON file");
  app.add_flag("--print-config", print_config, "Print the parsed configuration as JSON and exit");
  app.add_option("--enum-cap", config.enumeration_cap, "Enumeration cap (default PENTACHAIN_ENUM_CAP or 22)");

  auto* generate = app.add_subcommand("generate", "Sample a blueprint and print it with its edge list");
  generate->add_option("--n", config.n, "Number of pentagons");
  generate->add_option("--p1", config.p1, "Mode1 probability, as p/q or a decimal");
  generate->add_option("--seed", config.seed, "Seed");
  add_output_options(*generate, config);

  auto* indices = app.add_subcommand("indices", "Compute the six indices of one blueprint");
  add_blueprint_options(*indices, config);
  indices->add_option("--verify-cap", config.verify_cap, "Cross-check with the matrix engines up to this n");
  add_output_options(*indices, config);

  auto* metrics = app.add_subcommand("metrics", "Write a distance or resistance matrix as CSV");
  add_blueprint_options(*metrics, config);
  metrics->add_option("--metric", config.metric, "distance or resistance");
  metrics->add_option("--engine", config.engine, "structured, bfs (distance) or laplacian (resistance)");
  add_output_options(*metrics, config);

  auto* distribution = app.add_subcommand("distribution", "Exact law of an index by enumeration");
  distribution->add_option("--n", config.n, "Number of pentagons");
  distribution->add_option("--p1", config.p1, "Mode1 probability, as p/q or a decimal");
  distribution->add_option("--index", config.indices, "Index keys")->delimiter(',');
  add_output_options(*distribution, config);

  auto* sample = app.add_subcommand("sample", "Monte Carlo statistics, or a raw sample dump with --format csv");
  add_run_options(*sample, config);
  sample->add_option("--index", config.indices, "Index keys")->delimiter(',');
  add_output_options(*sample, config);

  auto* normality = app.add_subcommand("normality", "KS distance of standardized samples to N(0, 1)");
  add_run_options(*normality, config);
  normality->add_option("--index", config.indices, "Index keys")->delimiter(',');
  normality->add_option("--standardization", config.standardization, "published, verified or sample");
  normality->add_option("--alpha", config.alpha, "Significance level of the KS threshold");
  add_output_options(*normality, config);

  auto* report = app.add_subcommand("report", "Closed forms against the enumeration oracle");
  report->add_option("--nmax", config.nmax, "Largest n of the oracle grid");
  report->add_option("--p1", config.p1_list, "Comma-separated Mode1 probabilities")->delimiter(',');
  report->add_option("--grid", config.grid, "Closed-form surface over n=A..B, as CSV");
  report->add_flag("--expect-only", config.expect_only, "Only expectation columns in the grid");
  report->add_option("--moments", config.moments, "Grid polynomials: published or verified");
  report->add_flag("--normality", config.normality, "Run the normality experiment instead");
  report->add_option("--n", config.n, "Number of pentagons (with --normality)");
  report->add_option("--samples", config.samples, "Sample count (with --normality)");
  report->add_option("--seed", config.seed, "Seed (with --normality)");
  report->add_option("--workers", config.workers, "Worker threads (with --normality)");
  report->add_option("--index", config.indices, "Index keys (with --normality)")->delimiter(',');
  report->add_option("--standardization", config.standardization, "published, verified or sample");
  report->add_option("--alpha", config.alpha, "Significance level of the KS threshold");
  add_output_options(*report, config);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot open config file '" + config_path + "'");
      try {
        config = config_from_json(nlohmann::json::parse(file));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed config JSON: ") + e.what());
      }
    } else {
      const auto chosen = app.get_subcommands();
      if (chosen.empty()) throw UsageError("a command is required: generate, indices, metrics, distribution, sample, normality or report");
      config.command = chosen.front()->get_name();
    }
    validate(config);
    if (print_config) {
      out << to_json(config).dump() << '\n';
      return kExitOk;
    }

    if (config.output.empty()) return dispatch(config, in, out, err);
    std::ofstream file(config.output);
    if (!file) throw UsageError("cannot write '" + config.output + "'");
    return dispatch(config, in, file, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EngineDisagreement& e) {
    err << "engine disagreement: " << e.what() << '\n';
    return kExitEngineDisagreement;
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pentachain::cli
