#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dmm/bounds.hpp"
#include "dmm/instance.hpp"
#include "dmm/io.hpp"
#include "dmm/reduction.hpp"
#include "dmm/roots.hpp"
#include "dmm/vandermonde.hpp"

namespace py = pybind11;

namespace {

using EdgeTuple = std::tuple<int, int, int>;

dmm::WeightedGraph make_graph(int r, const std::vector<EdgeTuple>& edges) {
  std::vector<dmm::Edge> out;
  for (const auto& [u, v, w] : edges) out.push_back({u, v, w});
  return dmm::WeightedGraph(r, std::move(out));
}

dmm::RootMultiset make_roots(const std::vector<dmm::Complex>& roots, std::optional<std::vector<int>> mults) {
  if (!mults) return dmm::RootMultiset::simple(roots);
  return dmm::RootMultiset(roots, *mults);
}

// Instances cross the boundary as JSON text in the CLI format.
dmm::Instance load(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw dmm::InputError(std::string("malformed JSON: ") + e.what());
  }
  return dmm::parse_instance(doc);
}

std::vector<dmm::Strategy> strategies_of(const std::string& name) {
  if (name == "all") return dmm::all_strategies();
  return {dmm::strategy_from_string(name)};
}

std::string bounds_json(const std::string& instance, const std::string& strategy, std::optional<std::vector<int>> mu,
                        double tolerance) {
  const auto inst = load(instance);
  dmm::CompareOptions options;
  options.strategies = strategies_of(strategy);
  if (mu) options.explicit_mu = dmm::PotentialVector(*mu);
  const auto report = dmm::compare_all(inst.roots, inst.graph, options);
  return dmm::dump(dmm::bound_report_to_json(report, inst, tolerance));
}

std::string verify_json(const std::string& instance, const std::string& strategy, std::optional<std::vector<int>> mu,
                        double tolerance, bool check_steps) {
  const auto inst = load(instance);
  std::vector<std::pair<std::string, dmm::PotentialVector>> runs;
  if (mu) {
    dmm::PotentialVector p(*mu);
    dmm::require_feasible(inst.graph, p);
    runs.emplace_back("explicit", std::move(p));
  } else {
    for (auto s : strategies_of(strategy))
      if (auto p = dmm::choose_potentials(inst.graph, s)) runs.emplace_back(dmm::to_string(s), std::move(*p));
  }
  dmm::ReductionOptions options;
  options.check_steps = check_steps;
  nlohmann::json doc;
  doc["schema"] = dmm::kReportSchema;
  doc["instance"] = dmm::instance_to_json(inst);
  doc["approximate_roots"] = inst.approximate_roots;
  doc["tolerance"] = tolerance;
  doc["runs"] = nlohmann::json::array();
  bool passed = true;
  for (const auto& [label, p] : runs) {
    const auto result = dmm::run_reduction(inst.roots, inst.graph, p, options);
    const auto check = dmm::hadamard_chain_check(result, inst.roots, inst.graph, p);
    auto run = dmm::reduction_to_json(result, check, p, label, tolerance);
    passed = passed && run["passed"].get<bool>();
    doc["runs"].push_back(std::move(run));
  }
  doc["passed"] = passed;
  return dmm::dump(doc);
}

std::string generate_json(std::uint64_t seed, int r_min, int r_max, int w_max) {
  dmm::GeneratorOptions g;
  g.r_min = r_min;
  g.r_max = r_max;
  g.w_max = w_max;
  dmm::InstanceGenerator gen(seed, g);
  return dmm::dump(dmm::instance_to_json(gen.next()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted Davenport-Mahler-Mignotte bounds (compiled core)";

  auto base = py::register_exception<dmm::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<dmm::InputError>(m, "InputError", base.ptr());
  py::register_exception<dmm::InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<dmm::NumericError>(m, "NumericError", base.ptr());

  m.def("bounds_json", &bounds_json, py::arg("instance"), py::arg("strategy") = "all", py::arg("mu") = py::none(),
        py::arg("tolerance") = 1e-6);
  m.def("verify_json", &verify_json, py::arg("instance"), py::arg("strategy") = "all", py::arg("mu") = py::none(),
        py::arg("tolerance") = 1e-6, py::arg("check_steps") = false);
  m.def("generate_json", &generate_json, py::arg("seed") = 1, py::arg("r_min") = 2, py::arg("r_max") = 6,
        py::arg("w_max") = 6);

  m.def(
      "find_roots",
      [](const std::vector<dmm::Complex>& coefficients) {
        const auto rm = dmm::roots_from_coefficients(coefficients);
        std::vector<std::pair<dmm::Complex, int>> out;
        for (std::size_t i = 0; i < rm.size(); ++i) out.emplace_back(rm.root(i), rm.multiplicity(i));
        return out;
      },
      py::arg("coefficients"), "Distinct roots with multiplicities; coefficients constant term first.");

  m.def(
      "log2_mahler_measure",
      [](const std::vector<dmm::Complex>& roots, std::optional<std::vector<int>> mults) {
        return dmm::log2_mahler_measure(make_roots(roots, mults), mults.has_value());
      },
      py::arg("roots"), py::arg("multiplicities") = py::none());

  m.def(
      "separation", [](const std::vector<dmm::Complex>& roots) { return dmm::separation(make_roots(roots, {})); },
      py::arg("roots"));

  m.def(
      "confluent_det",
      [](const std::vector<dmm::Complex>& nodes, const std::vector<int>& blocks) {
        return dmm::det_product_formula(dmm::ConfluentSpec(nodes, blocks));
      },
      py::arg("nodes"), py::arg("blocks"));

  m.def(
      "nuclear_norm", [](int r, const std::vector<EdgeTuple>& edges) { return dmm::nuclear_norm(make_graph(r, edges)); },
      py::arg("r"), py::arg("edges"));

  m.def(
      "choose_potentials",
      [](int r, const std::vector<EdgeTuple>& edges, const std::string& strategy) -> std::optional<std::vector<int>> {
        const auto mu = dmm::choose_potentials(make_graph(r, edges), dmm::strategy_from_string(strategy));
        if (!mu) return std::nullopt;
        return std::vector<int>(mu->values().begin(), mu->values().end());
      },
      py::arg("r"), py::arg("edges"), py::arg("strategy"));

  m.def(
      "weighted_main",
      [](const std::vector<dmm::Complex>& roots, const std::vector<EdgeTuple>& edges, const std::vector<int>& mu) {
        const int r = static_cast<int>(roots.size());
        return dmm::weighted_main(make_roots(roots, {}), make_graph(r, edges), dmm::PotentialVector(mu));
      },
      py::arg("roots"), py::arg("edges"), py::arg("mu"));

  m.def(
      "dmm_unweighted",
      [](const std::vector<dmm::Complex>& roots, const std::vector<EdgeTuple>& edges) {
        const int r = static_cast<int>(roots.size());
        return dmm::dmm_unweighted(make_roots(roots, {}), make_graph(r, edges));
      },
      py::arg("roots"), py::arg("edges"));
}
