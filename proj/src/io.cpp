#include "dmm/io.hpp"

#include <cmath>
#include <sstream>

#include "dmm/roots.hpp"

namespace dmm {

using nlohmann::json;

namespace {

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InputError(where + ": expected a number or [re, im]");
}

std::vector<Complex> parse_complex_list(const json& doc, const char* key) {
  const json& list = doc.at(key);
  if (!list.is_array() || list.empty()) throw InputError(std::string("'") + key + "' must be a non-empty array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(parse_complex(list[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

int parse_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) throw InputError(where + ": integer out of range");
  return static_cast<int>(x);
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

// JSON has no infinities; keep them readable instead of silently emitting null.
json real_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");
  if (doc.contains("schema") && doc["schema"] != kInstanceSchema)
    throw InputError("unsupported schema " + doc["schema"].dump() + "; expected " + kInstanceSchema);
  const bool has_roots = doc.contains("roots");
  const bool has_coeffs = doc.contains("coefficients");
  if (has_roots == has_coeffs) throw InputError("give exactly one of 'roots' or 'coefficients'");

  std::optional<RootMultiset> rm;
  bool approximate = false;
  if (has_roots) {
    auto roots = parse_complex_list(doc, "roots");
    std::vector<int> mult(roots.size(), 1);
    if (doc.contains("multiplicities")) {
      const json& m = doc["multiplicities"];
      if (!m.is_array() || m.size() != roots.size())
        throw InputError("'multiplicities' must be an array with one entry per root");
      for (std::size_t i = 0; i < m.size(); ++i) mult[i] = parse_int(m[i], "multiplicities[" + std::to_string(i) + "]");
    }
    rm.emplace(std::move(roots), std::move(mult));
  } else {
    if (doc.contains("multiplicities")) throw InputError("'multiplicities' only applies to 'roots'");
    rm.emplace(roots_from_coefficients(parse_complex_list(doc, "coefficients")));
    approximate = true;
  }

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const json& list = doc["edges"];
    if (!list.is_array()) throw InputError("'edges' must be an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      const json& e = list[k];
      if (!e.is_array() || e.size() != 3) throw InputError(where + ": expected [i, j, w]");
      edges.push_back({parse_int(e[0], where), parse_int(e[1], where), parse_int(e[2], where)});
    }
  }
  WeightedGraph g(static_cast<int>(rm->size()), std::move(edges));
  return {std::move(*rm), std::move(g), approximate};
}

Instance read_instance(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_instance(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

json instance_to_json(const Instance& instance) {
  json doc;
  doc["schema"] = kInstanceSchema;
  doc["roots"] = json::array();
  for (const auto& z : instance.roots.roots()) doc["roots"].push_back(complex_json(z));
  doc["multiplicities"] = json::array();
  for (int m : instance.roots.multiplicities()) doc["multiplicities"].push_back(m);
  doc["edges"] = json::array();
  for (const auto& e : instance.graph.edges()) doc["edges"].push_back({e.u, e.v, e.weight});
  if (instance.approximate_roots) doc["approximate_roots"] = true;
  return doc;
}

PotentialVector parse_mu(const std::string& text) {
  std::vector<int> mus;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InputError("--mu: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw InputError("--mu: '" + item + "' is not an integer");
    mus.push_back(value);
  }
  return PotentialVector(std::move(mus));
}

json bound_report_to_json(const BoundReport& report, const Instance& instance, double tolerance) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["instance"] = instance_to_json(instance);
  doc["approximate_roots"] = instance.approximate_roots;
  doc["tolerance"] = tolerance;
  doc["actual_log2"] = real_json(report.actual_log2);
  doc["unweighted_actual_log2"] = real_json(report.unweighted_actual_log2);
  doc["tightest"] = report.tightest;
  doc["entries"] = json::array();
  for (const auto& e : report.entries) {
    json j;
    j["name"] = e.name;
    j["log2_value"] = real_json(e.log2_value);
    j["target"] = to_string(e.target);
    j["target_log2"] = real_json(e.target_log2);
    j["feasible"] = e.applicable;
    j["proven"] = e.proven;
    j["sound"] = e.sound(tolerance);
    if (!e.note.empty()) j["note"] = e.note;
    json params = json::object();
    for (const auto& [k, v] : e.parameters) params[k] = real_json(v);
    j["parameters"] = params;
    if (e.mu) j["mu"] = e.mu->values();
    doc["entries"].push_back(j);
  }
  if (report.comparison) {
    const auto& c = *report.comparison;
    doc["comparison"] = {{"main_mahler_exponent", c.main_mahler_exponent},
                         {"main_stated_exponent", c.main_stated_exponent},
                         {"naive_mahler_exponent", c.naive_mahler_exponent},
                         {"main_edge_term", c.main_edge_term},
                         {"naive_edge_term", c.naive_edge_term},
                         {"main_size_term", c.main_size_term},
                         {"naive_size_term", c.naive_size_term},
                         {"mahler_gap", c.mahler_gap()},
                         {"edge_gap", c.edge_gap()},
                         {"size_gap", c.size_gap()},
                         {"main_exponent_smaller", c.main_exponent_smaller}};
  }
  doc["violations"] = json::array();
  for (const auto* e : report.violations(tolerance)) doc["violations"].push_back(e->name);
  doc["all_sound"] = report.all_sound(tolerance);
  return doc;
}

json reduction_to_json(const ReductionResult& result, const HadamardReport& check, const PotentialVector& mu,
                       const std::string& label, double tolerance) {
  json doc;
  doc["potentials"] = label;
  doc["mu"] = mu.values();
  doc["n"] = mu.total();
  doc["processing_order"] = result.oriented.order;
  doc["log2_det_initial"] = real_json(result.log2_det_initial);
  doc["log2_det_formula"] = real_json(result.log2_det_formula);
  doc["log2_det_reduced"] = real_json(result.log2_det_reduced);
  doc["log2_factor"] = real_json(result.log2_factor);
  doc["residual"] = real_json(result.residual);
  doc["max_step_residual"] = real_json(result.max_step_residual);

  json columns = json::array();
  for (const auto& c : check.columns)
    columns.push_back({{"vertex", c.vertex},
                       {"column", c.column},
                       {"M", c.m},
                       {"log2_norm", real_json(c.log2_norm)},
                       {"log2_bound", real_json(c.log2_bound)},
                       {"margin", real_json(c.margin)}});
  doc["columns"] = columns;
  json vertices = json::array();
  for (const auto& v : check.vertices)
    vertices.push_back({{"vertex", v.vertex}, {"m_sum", v.m_sum}, {"expected", v.expected}, {"holds", v.holds}});
  doc["vertex_identities"] = vertices;
  doc["min_column_margin"] = real_json(check.min_column_margin);
  doc["hadamard_margin"] = real_json(check.hadamard_margin);
  doc["vertex_bound_margin"] = real_json(check.vertex_bound_margin);
  doc["mahler_bound_margin"] = real_json(check.mahler_bound_margin);
  doc["stated_bound_margin"] = real_json(check.stated_bound_margin);
  doc["chain_passed"] = check.passed;
  doc["factorization_passed"] = result.residual <= tolerance;
  doc["passed"] = check.passed && result.residual <= tolerance;
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace dmm
