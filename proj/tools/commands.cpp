#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dmm/bounds.hpp"
#include "dmm/instance.hpp"
#include "dmm/io.hpp"
#include "dmm/reduction.hpp"
#include "dmm/roots.hpp"

namespace dmm::cli {

namespace {

constexpr int kBenchMaxR = 6;
constexpr int kBenchMaxTrials = 10000;
constexpr int kBenchMaxWeight = 8;

struct Settings {
  std::string input;
  std::string strategy = "all";
  std::string mu;
  double tolerance = 1e-6;
  bool check_steps = false;
  std::uint64_t seed = 1;
  int trials = 500;
  int r_min = 2;
  int r_max = 6;
  int w_max = 6;
  std::string csv;
};

Instance load(const Settings& s, std::istream& in) {
  if (s.input.empty() || s.input == "-") return read_instance(in);
  std::ifstream file(s.input);
  if (!file) throw InputError("cannot open " + s.input);
  return read_instance(file);
}

std::vector<Strategy> strategies_of(const std::string& name) {
  if (name == "all") return all_strategies();
  return {strategy_from_string(name)};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_bounds(const Settings& s, std::istream& in, std::ostream& out) {
  const Instance inst = load(s, in);
  CompareOptions options;
  options.strategies = strategies_of(s.strategy);
  if (!s.mu.empty()) options.explicit_mu = parse_mu(s.mu);
  const BoundReport report = compare_all(inst.roots, inst.graph, options);
  out << dump(bound_report_to_json(report, inst, s.tolerance));
  return report.all_sound(s.tolerance) ? kOk : kCheckFailed;
}

int cmd_verify(const Settings& s, std::istream& in, std::ostream& out) {
  const Instance inst = load(s, in);
  std::vector<std::pair<std::string, PotentialVector>> runs;
  if (!s.mu.empty()) {
    PotentialVector mu = parse_mu(s.mu);
    require_feasible(inst.graph, mu);
    runs.emplace_back("explicit", std::move(mu));
  } else {
    for (Strategy st : strategies_of(s.strategy))
      if (auto mu = choose_potentials(inst.graph, st)) runs.emplace_back(to_string(st), std::move(*mu));
  }

  ReductionOptions options;
  options.check_steps = s.check_steps;
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["instance"] = instance_to_json(inst);
  doc["approximate_roots"] = inst.approximate_roots;
  doc["tolerance"] = s.tolerance;
  doc["runs"] = nlohmann::json::array();
  bool passed = true;
  for (const auto& [label, mu] : runs) {
    const ReductionResult result = run_reduction(inst.roots, inst.graph, mu, options);
    const HadamardReport check = hadamard_chain_check(result, inst.roots, inst.graph, mu);
    auto run = reduction_to_json(result, check, mu, label, s.tolerance);
    passed = passed && run["passed"].get<bool>();
    doc["runs"].push_back(std::move(run));
  }
  doc["passed"] = passed;
  out << dump(doc);
  return passed ? kOk : kCheckFailed;
}

int cmd_roots(const Settings& s, std::istream& in, std::ostream& out) {
  nlohmann::json doc;
  try {
    if (s.input.empty() || s.input == "-") {
      doc = nlohmann::json::parse(in);
    } else {
      std::ifstream file(s.input);
      if (!file) throw InputError("cannot open " + s.input);
      doc = nlohmann::json::parse(file);
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("coefficients") || !doc["coefficients"].is_array())
    throw InputError("expected an object with a 'coefficients' array (constant term first)");
  std::vector<Complex> coeffs;
  for (const auto& c : doc["coefficients"]) {
    if (c.is_number())
      coeffs.emplace_back(c.get<double>(), 0.0);
    else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    else
      throw InputError("coefficients must be numbers or [re, im] pairs");
  }
  const AberthOptions options;
  const auto approx = aberth_ehrlich(Polynomial::monic(coeffs), options);
  RootMultiset rm = cluster_roots(approx.roots, options.cluster_radius);
  const int r = static_cast<int>(rm.size());
  Instance inst{std::move(rm), WeightedGraph(r, {}), true};
  auto result = instance_to_json(inst);
  result["iterations"] = approx.iterations;
  result["max_relative_residual"] = approx.max_residual;
  out << dump(result);
  return kOk;
}

int cmd_generate(const Settings& s, std::ostream& out) {
  GeneratorOptions g;
  g.r_min = s.r_min;
  g.r_max = s.r_max;
  g.w_max = s.w_max;
  InstanceGenerator gen(s.seed, g);
  out << dump(instance_to_json(gen.next()));
  return kOk;
}

void check_bench_ranges(const Settings& s) {
  if (s.trials < 0 || s.trials > kBenchMaxTrials)
    throw InputError("--trials must lie in [0, " + std::to_string(kBenchMaxTrials) + "]");
  if (s.r_min < 2 || s.r_max > kBenchMaxR || s.r_min > s.r_max)
    throw InputError("need 2 <= --r-min <= --r-max <= " + std::to_string(kBenchMaxR));
  if (s.w_max < 1 || s.w_max > kBenchMaxWeight)
    throw InputError("--w-max must lie in [1, " + std::to_string(kBenchMaxWeight) + "]");
  if (!(s.tolerance >= 0.0)) throw InputError("--tolerance must be non-negative");
}

const std::vector<std::string> kBenchBounds = {
    "dmm_unweighted",         "naive_weighted",           "weighted_main_ones", "weighted_main_uniform",
    "weighted_main_nuclear", "weighted_main_exhaustive", "weighted_nuclear",   "weighted_nuclear_with_det"};

int cmd_bench(const Settings& s, std::ostream& out) {
  check_bench_ranges(s);
  std::ostringstream csv;
  csv << "# dmm-bench/1 seed=" << s.seed << " trials=" << s.trials << " r=" << s.r_min << ".." << s.r_max
      << " w_max=" << s.w_max << " values are log2; empty cells are infeasible or inapplicable bounds\n";
  csv << "trial,r,degree,edges,w_max,total_weight,actual_log2";
  for (const auto& name : kBenchBounds) csv << "," << name;
  csv << ",tightest,violations,mahler_gap,edge_gap,size_gap,main_exponent_smaller\n";

  GeneratorOptions g;
  g.r_min = s.r_min;
  g.r_max = s.r_max;
  g.w_max = s.w_max;
  InstanceGenerator gen(s.seed, g);
  for (int t = 0; t < s.trials; ++t) {
    const Instance inst = gen.next();
    const BoundReport report = compare_all(inst.roots, inst.graph);
    csv << t << "," << inst.roots.size() << "," << inst.roots.degree() << "," << inst.graph.edges().size() << ","
        << inst.graph.max_weight() << "," << inst.graph.total_weight() << "," << fmt(report.actual_log2);
    for (const auto& name : kBenchBounds) {
      csv << ",";
      const BoundEntry* e = report.find(name);
      if (e && e->applicable) csv << fmt(e->log2_value);
    }
    csv << "," << report.tightest << "," << report.violations(s.tolerance).size();
    if (const auto& c = report.comparison)
      csv << "," << fmt(c->mahler_gap()) << "," << fmt(c->edge_gap()) << "," << fmt(c->size_gap()) << ","
          << (c->main_exponent_smaller ? 1 : 0);
    else
      csv << ",,,,";
    csv << "\n";
  }

  if (s.csv.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(s.csv, std::ios::binary);
    if (!file) throw InputError("cannot write " + s.csv);
    file << csv.str();
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Davenport-Mahler-Mignotte bounds for polynomial roots", "dmm"};
  app.require_subcommand(1);
  Settings s;

  const std::vector<std::string> strategy_names = {"ones", "uniform", "nuclear", "exhaustive", "all"};
  auto add_instance_flags = [&](CLI::App* sub) {
    sub->add_option("input", s.input, "instance JSON file (stdin when omitted or '-')");
    sub->add_option("--strategy", s.strategy, "potential strategy")->check(CLI::IsMember(strategy_names));
    sub->add_option("--mu", s.mu, "explicit potentials, e.g. \"2,2,1\"");
    sub->add_option("--tolerance", s.tolerance, "slack for soundness and residual checks");
  };
  auto add_generator_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", s.seed, "random seed");
    sub->add_option("--r-min", s.r_min, "smallest number of distinct roots");
    sub->add_option("--r-max", s.r_max, "largest number of distinct roots");
    sub->add_option("--w-max", s.w_max, "largest edge weight");
  };

  auto* bounds = app.add_subcommand("bounds", "evaluate every bound on an instance");
  add_instance_flags(bounds);
  auto* verify = app.add_subcommand("verify", "replay the determinant reduction and check the norm chain");
  add_instance_flags(verify);
  verify->add_flag("--check-steps", s.check_steps, "recompute the determinant after every vertex");
  auto* bench = app.add_subcommand("bench", "randomized sweep as CSV");
  add_generator_flags(bench);
  bench->add_option("--trials", s.trials, "number of instances");
  bench->add_option("--csv", s.csv, "write CSV here instead of stdout");
  bench->add_option("--tolerance", s.tolerance, "slack for soundness checks");
  auto* roots = app.add_subcommand("roots", "approximate roots from coefficients (constant term first)");
  roots->add_option("input", s.input, "JSON with a 'coefficients' array (stdin when omitted)");
  auto* generate = app.add_subcommand("generate", "emit one random instance");
  add_generator_flags(generate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  // Buffer so that a failure midway leaves stdout untouched.
  std::ostringstream buffer;
  int code = kOk;
  try {
    if (*bounds) code = cmd_bounds(s, in, buffer);
    if (*verify) code = cmd_verify(s, in, buffer);
    if (*bench) code = cmd_bench(s, buffer);
    if (*roots) code = cmd_roots(s, in, buffer);
    if (*generate) code = cmd_generate(s, buffer);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  out << buffer.str();
  return code;
}

}  // namespace dmm::cli
