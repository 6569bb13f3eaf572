#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pentachain/chain.hpp"
#include "pentachain/closed_forms.hpp"
#include "pentachain/distribution.hpp"
#include "pentachain/indices.hpp"
#include "pentachain/metrics.hpp"
#include "pentachain/verification.hpp"

namespace py = pybind11;
using namespace pentachain;

namespace {

py::object from_json(const nlohmann::json& doc) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(doc.dump());
}

ChainBlueprint make_blueprint(std::size_t n, const std::vector<std::string>& choices) {
  std::vector<AttachmentMode> modes;
  for (const auto& token : choices) modes.push_back(parse_mode_token(token));
  return ChainBlueprint(n, std::move(modes));
}

TopologicalIndex index_from(const std::string& key) {
  auto index = parse_index_key(key);
  if (!index) throw py::value_error("unknown index '" + key + "'");
  return *index;
}

MonteCarloConfig mc_config(std::size_t n, const std::string& p1, std::uint64_t samples, std::uint64_t seed,
                           unsigned workers) {
  MonteCarloConfig config;
  config.n = n;
  config.params = ProbabilityParams::parse(p1);
  config.samples = samples;
  config.seed = seed;
  config.workers = workers;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random pentagonal chains: indices, closed-form moments and oracles.";

  m.def("sample_blueprint", [](std::size_t n, const std::string& p1, std::uint64_t seed) {
    RandomStream rng(seed);
    return from_json(to_json(sample_blueprint(n, ProbabilityParams::parse(p1), rng)));
  }, py::arg("n"), py::arg("p1"), py::arg("seed"));

  m.def("edges", [](std::size_t n, const std::vector<std::string>& choices) {
    const PentagonChainGraph graph(make_blueprint(n, choices));
    std::vector<std::pair<VertexId, VertexId>> out(graph.edges().begin(), graph.edges().end());
    return out;
  }, py::arg("n"), py::arg("choices") = std::vector<std::string>{});

  m.def("incremental_indices", [](std::size_t n, const std::vector<std::string>& choices) {
    return from_json(to_json(incremental_indices(make_blueprint(n, choices))));
  }, py::arg("n"), py::arg("choices") = std::vector<std::string>{});

  m.def("matrix_indices", [](std::size_t n, const std::vector<std::string>& choices) {
    const ChainBlueprint blueprint = make_blueprint(n, choices);
    const PentagonChainGraph graph(blueprint);
    return from_json(to_json(compute_indices(graph, bfs_all_pairs(graph), structured_metrics(blueprint).resistance)));
  }, py::arg("n"), py::arg("choices") = std::vector<std::string>{});

  m.def("expected_index", [](const std::string& index, std::int64_t n, const std::string& p1) {
    return to_fraction_string(expected_index(index_from(index), n, ProbabilityParams::parse(p1).p1()));
  }, py::arg("index"), py::arg("n"), py::arg("p1"), "Published expectation, exact, as \"p/q\".");

  m.def("variance_index", [](const std::string& index, std::int64_t n, const std::string& p1) {
    return to_fraction_string(variance_index(index_from(index), n, ProbabilityParams::parse(p1).p1()));
  }, py::arg("index"), py::arg("n"), py::arg("p1"), "Published variance, exact, as \"p/q\".");

  m.def("verified_expectation", [](const std::string& index, std::size_t n, const std::string& p1) {
    return to_fraction_string(closed_form_expectation(index_from(index), n, ProbabilityParams::parse(p1).p1()));
  }, py::arg("index"), py::arg("n"), py::arg("p1"));

  m.def("verified_variance", [](const std::string& index, std::size_t n, const std::string& p1) {
    return to_fraction_string(closed_form_variance(index_from(index), n, ProbabilityParams::parse(p1).p1()));
  }, py::arg("index"), py::arg("n"), py::arg("p1"));

  m.def("exact_moments", [](std::size_t n, const std::string& p1) {
    const auto moments = exact_moments(n, ProbabilityParams::parse(p1));
    py::dict out;
    for (TopologicalIndex index : kAllIndices) {
      const auto& m = moments[static_cast<std::size_t>(index)];
      out[py::str(std::string(index_key(index)))] =
          py::make_tuple(to_fraction_string(m.mean), to_fraction_string(m.variance));
    }
    return out;
  }, py::arg("n"), py::arg("p1"));

  m.def("exact_distribution", [](const std::string& index, std::size_t n, const std::string& p1) {
    const ExactDistribution law = exact_distribution(index_from(index), n, ProbabilityParams::parse(p1));
    std::vector<std::pair<std::string, std::string>> support;
    for (const auto& [value, probability] : law.support) {
      support.emplace_back(to_fraction_string(value), to_fraction_string(probability));
    }
    py::dict out;
    out["support"] = support;
    out["mean"] = to_fraction_string(law.mean);
    out["variance"] = to_fraction_string(law.variance);
    return out;
  }, py::arg("index"), py::arg("n"), py::arg("p1"));

  m.def("monte_carlo", [](const std::vector<std::string>& keys, std::size_t n, const std::string& p1,
                          std::uint64_t samples, std::uint64_t seed, unsigned workers) {
    std::vector<TopologicalIndex> indices;
    for (const auto& key : keys) indices.push_back(index_from(key));
    std::vector<SampleStats> stats;
    {
      py::gil_scoped_release release;
      stats = monte_carlo(indices, mc_config(n, p1, samples, seed, workers));
    }
    py::list out;
    for (const auto& s : stats) out.append(from_json(to_json(s)));
    return out;
  }, py::arg("indices"), py::arg("n"), py::arg("p1"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);

  m.def("normality_test", [](const std::string& index, std::size_t n, const std::string& p1, std::uint64_t samples,
                             std::uint64_t seed, const std::string& standardization, double alpha, unsigned workers) {
    auto source = parse_standardization(standardization);
    if (!source) throw py::value_error("standardization must be published, verified or sample");
    NormalityResult result = [&] {
      py::gil_scoped_release release;
      return normality_test(index_from(index), mc_config(n, p1, samples, seed, workers), *source, alpha);
    }();
    return from_json(to_json(result));
  }, py::arg("index"), py::arg("n"), py::arg("p1"), py::arg("samples"), py::arg("seed"),
     py::arg("standardization") = "verified", py::arg("alpha") = 0.01, py::arg("workers") = 1);

  m.def("discrepancies", [] {
    py::list out;
    for (const auto& d : detect_discrepancies()) out.append(from_json(to_json(d)));
    return out;
  });
}
