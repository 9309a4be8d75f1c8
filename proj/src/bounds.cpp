#include "dmm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dmm/reduction.hpp"
#include "dmm/vandermonde.hpp"

namespace dmm {

namespace {

const double kLog2Sqrt3 = 0.5 * std::log2(3.0);

double log2_abs_vandermonde(const RootMultiset& rm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rm.size(); ++i)
    for (std::size_t j = i + 1; j < rm.size(); ++j) acc += std::log2(std::abs(rm.root(j) - rm.root(i)));
  return acc;
}

double log2_abs_confluent(const RootMultiset& rm, const PotentialVector& mu) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rm.size(); ++i)
    for (std::size_t j = i + 1; j < rm.size(); ++j)
      acc += static_cast<double>(mu[i]) * mu[j] * std::log2(std::abs(rm.root(j) - rm.root(i)));
  return acc;
}

void require_same_size(const RootMultiset& rm, const WeightedGraph& g) {
  if (static_cast<std::size_t>(g.vertex_count()) != rm.size())
    throw InputError("graph has " + std::to_string(g.vertex_count()) + " vertices but there are " +
                     std::to_string(rm.size()) + " distinct roots");
}

}  // namespace

double actual_weighted_product(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  double acc = 0.0;
  for (const auto& e : g.edges())
    acc += e.weight * std::log2(std::abs(rm.root(static_cast<std::size_t>(e.u)) - rm.root(static_cast<std::size_t>(e.v))));
  return acc;
}

double actual_unweighted_product(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  double acc = 0.0;
  for (const auto& e : g.edges())
    acc += std::log2(std::abs(rm.root(static_cast<std::size_t>(e.u)) - rm.root(static_cast<std::size_t>(e.v))));
  return acc;
}

double classic_sep_bound(const RootMultiset& rm) {
  if (rm.size() < 2) throw InputError("separation bound undefined for fewer than two distinct roots");
  const double d = static_cast<double>(rm.size());
  // |Disc|^{1/2} = |det V(a)|
  return -(d + 2.0) / 2.0 * std::log2(d) + log2_abs_vandermonde(rm) + (1.0 - d) * log2_mahler_measure(rm, false);
}

double dmm_unweighted(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  const double r = static_cast<double>(rm.size());
  const double edges = static_cast<double>(g.edges().size());
  return log2_abs_vandermonde(rm) - (r - 1.0) * log2_mahler_measure(rm, false) -
         edges * (std::log2(r) - kLog2Sqrt3) - r / 2.0 * std::log2(r);
}

SdiscForms dmm_sdisc_forms(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  const double r = static_cast<double>(rm.size());
  const double d = rm.degree();
  const double edges = static_cast<double>(g.edges().size());

  double log2_prod_m = 0.0;
  for (int m : rm.multiplicities()) log2_prod_m += std::log2(static_cast<double>(m));
  const double log2_sqrt_sdisc = log2_abs_vandermonde(rm) + 0.5 * log2_prod_m;
  const double common = log2_sqrt_sdisc - (r - 1.0) * log2_mahler_measure(rm, true) -
                        edges * (std::log2(r) - kLog2Sqrt3) - r / 2.0 * std::log2(r);

  SdiscForms out;
  out.log2_multiplicity_product = 0.5 * log2_prod_m;
  out.log2_eigenwillig_cap = std::min(d, 2.0 * (d - r)) / 6.0 * std::log2(3.0);
  out.log2_amgm_cap = r / 2.0 * std::log2(d / r);
  out.eigenwillig_log2 = common - out.log2_eigenwillig_cap;
  out.amgm_log2 = common - out.log2_amgm_cap;
  return out;
}

double naive_weighted(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  if (g.empty()) return 0.0;
  const double r = static_cast<double>(rm.size());
  const double w = g.max_weight();
  const double ew = static_cast<double>(g.edges().size()) * w;
  return w * log2_abs_vandermonde(rm) - ((r - 1.0) * w + ew) * log2_mahler_measure(rm, false) - ew -
         ew * (std::log2(r) - kLog2Sqrt3) - r * w / 2.0 * std::log2(r);
}

MainBoundTerms weighted_main_terms(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu) {
  require_same_size(rm, g);
  require_feasible(g, mu);
  MainBoundTerms t;
  const auto err = potential_error_terms(g, mu);
  t.n = mu.total();
  t.sum_choose2 = err.sum_choose2;
  t.stated_exponent = err.inf_norm;
  t.mahler_exponent = max_vertex_exponent(orient(rm, g), mu);
  t.log2_det = log2_abs_confluent(rm, mu);

  const double n = t.n;
  const double rest = -static_cast<double>(t.sum_choose2 + g.total_weight()) * (std::log2(n) - kLog2Sqrt3) -
                      n / 2.0 * std::log2(n);
  const double log2_m = log2_mahler_measure(rm, false);
  t.log2_value = t.log2_det - static_cast<double>(t.mahler_exponent) * log2_m + rest;
  t.stated_log2_value = t.log2_det - static_cast<double>(t.stated_exponent) * log2_m + rest;
  return t;
}

double weighted_main(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu) {
  return weighted_main_terms(rm, g, mu).log2_value;
}

NuclearBound weighted_nuclear(const RootMultiset& rm, const WeightedGraph& g) {
  require_same_size(rm, g);
  NuclearBound out;
  if (g.empty()) return out;
  out.nuclear_norm = nuclear_norm(g);
  out.mu = potentials_nuclear(g);
  const double r = static_cast<double>(rm.size());
  const double n = out.mu->total();
  const double star = out.nuclear_norm;
  out.log2_value = -2.0 * r * star * log2_mahler_measure(rm, true) -
                   (1.5 * r * star + static_cast<double>(g.total_weight())) * (std::log2(n) - kLog2Sqrt3) -
                   n / 2.0 * std::log2(n);
  const double log2_det = log2_abs_confluent(rm, *out.mu);
  out.log2_with_det = out.log2_value + log2_det;
  out.det_at_least_one = log2_det >= -1e-12;
  out.main_at_mu = weighted_main(rm, g, *out.mu);
  return out;
}

double emt_bound(const RootMultiset& rm, std::span<const int> indices, std::span<const int> weights) {
  if (indices.size() != weights.size()) throw InputError("index set and weights differ in length");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || static_cast<std::size_t>(i) >= rm.size()) throw InputError("root index out of range");
    if (weights[k] < 0 || weights[k] > rm.multiplicity(static_cast<std::size_t>(i)))
      throw InputError("multiplicity constraint violated: w_" + std::to_string(i) + " = " + std::to_string(weights[k]) +
                       " exceeds m_" + std::to_string(i) + " = " + std::to_string(rm.multiplicity(static_cast<std::size_t>(i))));
  }
  const double d = rm.degree();
  const double r = static_cast<double>(rm.size());
  const Polynomial f = expand_from_roots(rm);
  const Polynomial sqfree = expand_from_roots(RootMultiset::simple({rm.roots().begin(), rm.roots().end()}));
  return -d * (r + 2.0) - d * (std::log2(coefficient_inf_norm(f)) + std::log2(coefficient_inf_norm(sqfree))) +
         (1.0 - r) * log2_mahler_measure(rm, true) + log2_abs_resultant_with_sqfree_derivative(rm);
}

double emt_product(const RootMultiset& rm, std::span<const int> indices, std::span<const int> weights) {
  if (indices.size() != weights.size()) throw InputError("index set and weights differ in length");
  if (rm.size() < 2) return 0.0;
  const auto delta = nearest_distinct_distances(rm);
  double acc = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k)
    acc += weights[k] * std::log2(delta[static_cast<std::size_t>(indices[k])]);
  return acc;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Ones: return "ones";
    case Strategy::Uniform: return "uniform";
    case Strategy::Nuclear: return "nuclear";
    case Strategy::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
  for (Strategy s : all_strategies())
    if (to_string(s) == name) return s;
  throw InputError("unknown strategy '" + name + "'");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::Ones, Strategy::Uniform, Strategy::Nuclear, Strategy::Exhaustive};
}

std::optional<PotentialVector> choose_potentials(const WeightedGraph& g, Strategy s) {
  switch (s) {
    case Strategy::Ones:
      if (g.max_weight() > 1) return std::nullopt;
      return PotentialVector::ones(g.vertex_count());
    case Strategy::Uniform: return potentials_uniform_wmax(g);
    case Strategy::Nuclear: return potentials_nuclear(g);
    case Strategy::Exhaustive:
      if (g.vertex_count() > 8) return std::nullopt;
      return potentials_exhaustive(g);
  }
  return std::nullopt;
}

std::string to_string(Target t) {
  switch (t) {
    case Target::WeightedProduct: return "weighted_product";
    case Target::UnweightedProduct: return "unweighted_product";
    case Target::Separation: return "separation";
    case Target::NearestDistances: return "nearest_distances";
  }
  return "unknown";
}

std::optional<TermComparison> compare_terms(const RootMultiset& rm, const WeightedGraph& g) {
  if (g.empty()) return std::nullopt;
  const PotentialVector mu = potentials_uniform_wmax(g);
  const auto main = weighted_main_terms(rm, g, mu);
  const double r = static_cast<double>(rm.size());
  const std::int64_t w = g.max_weight();
  const auto edges = static_cast<std::int64_t>(g.edges().size());
  const double n = main.n;

  TermComparison c;
  c.main_mahler_exponent = main.mahler_exponent;
  c.main_stated_exponent = main.stated_exponent;
  c.naive_mahler_exponent = (static_cast<std::int64_t>(rm.size()) - 1) * w + edges * w;
  c.main_edge_term = static_cast<double>(main.sum_choose2 + g.total_weight()) * (std::log2(n) - kLog2Sqrt3);
  c.naive_edge_term = static_cast<double>(edges * w) * (1.0 + std::log2(r) - kLog2Sqrt3);
  c.main_size_term = n / 2.0 * std::log2(n);
  c.naive_size_term = r * static_cast<double>(w) / 2.0 * std::log2(r);
  c.main_exponent_smaller = c.main_mahler_exponent < c.naive_mahler_exponent;
  return c;
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<const BoundEntry*> BoundReport::violations(double tolerance) const {
  std::vector<const BoundEntry*> out;
  for (const auto& e : entries)
    if (!e.sound(tolerance)) out.push_back(&e);
  return out;
}

BoundReport compare_all(const RootMultiset& rm, const WeightedGraph& g, const CompareOptions& options) {
  require_same_size(rm, g);
  BoundReport report;
  report.actual_log2 = actual_weighted_product(rm, g);
  report.unweighted_actual_log2 = actual_unweighted_product(rm, g);
  const bool unit_weights = g.max_weight() <= 1;

  auto weighted_entry = [&](std::string name, double value) {
    BoundEntry e;
    e.name = std::move(name);
    e.log2_value = value;
    e.target = Target::WeightedProduct;
    e.target_log2 = report.actual_log2;
    return e;
  };

  if (rm.size() >= 2) {
    BoundEntry e;
    e.name = "classic_sep";
    e.log2_value = classic_sep_bound(rm);
    e.target = Target::Separation;
    e.target_log2 = std::log2(separation(rm));
    report.entries.push_back(e);

    std::vector<int> all(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> mult(rm.multiplicities().begin(), rm.multiplicities().end());
    BoundEntry emt;
    emt.name = "emt";
    emt.log2_value = emt_bound(rm, all, mult);
    emt.target = Target::NearestDistances;
    emt.target_log2 = emt_product(rm, all, mult);
    emt.note = "K = all roots, w_i = m_i";
    report.entries.push_back(emt);
  }

  {
    BoundEntry e;
    e.name = "dmm_unweighted";
    e.log2_value = dmm_unweighted(rm, g);
    e.target = Target::UnweightedProduct;
    e.target_log2 = report.unweighted_actual_log2;
    report.entries.push_back(e);

    const auto forms = dmm_sdisc_forms(rm, g);
    BoundEntry eig = e;
    eig.name = "dmm_sdisc_eigenwillig";
    eig.log2_value = forms.eigenwillig_log2;
    report.entries.push_back(eig);
    BoundEntry amgm = e;
    amgm.name = "dmm_sdisc_amgm";
    amgm.log2_value = forms.amgm_log2;
    report.entries.push_back(amgm);
  }

  if (!g.empty()) {
    auto e = weighted_entry("naive_weighted", naive_weighted(rm, g));
    e.parameters = {{"w_max", g.max_weight()}};
    report.entries.push_back(e);
  }

  auto add_main = [&](const std::string& label, const std::optional<PotentialVector>& mu, const std::string& why) {
    auto e = weighted_entry("weighted_main_" + label, 0.0);
    if (!mu) {
      e.applicable = false;
      e.note = why;
      report.entries.push_back(e);
      return;
    }
    e.mu = mu;
    if (auto bad = first_violation(g, *mu)) {
      e.applicable = false;
      e.note = "infeasible potentials";
      report.entries.push_back(e);
      return;
    }
    const auto t = weighted_main_terms(rm, g, *mu);
    e.log2_value = t.log2_value;
    e.parameters = {{"n", t.n},
                    {"mahler_exponent", static_cast<double>(t.mahler_exponent)},
                    {"stated_exponent", static_cast<double>(t.stated_exponent)},
                    {"sum_choose2", static_cast<double>(t.sum_choose2)},
                    {"log2_det", t.log2_det}};
    report.entries.push_back(e);

    auto stated = e;
    stated.name = "weighted_main_stated_" + label;
    stated.log2_value = t.stated_log2_value;
    stated.note = "exponent ||mu mu^t - A_w||_inf";
    stated.proven = false;
    report.entries.push_back(stated);
  };

  for (Strategy s : options.strategies) {
    std::string why;
    if (s == Strategy::Ones && !unit_weights) why = "weights exceed 1";
    if (s == Strategy::Exhaustive && g.vertex_count() > 8) why = "exhaustive search limited to r <= 8";
    add_main(to_string(s), choose_potentials(g, s), why);
  }
  if (options.explicit_mu) {
    require_feasible(g, *options.explicit_mu);
    add_main("explicit", options.explicit_mu, "");
  }

  if (!g.empty()) {
    const auto nb = weighted_nuclear(rm, g);
    auto relaxed = weighted_entry("weighted_nuclear", nb.log2_value);
    relaxed.applicable = nb.det_at_least_one;
    relaxed.mu = nb.mu;
    relaxed.parameters = {{"nuclear_norm", nb.nuclear_norm}, {"n", nb.mu->total()}};
    relaxed.note = nb.det_at_least_one ? "drops |det V(a;mu)| >= 1"
                                       : "|det V(a;mu)| < 1: valid only for integer polynomials";
    report.entries.push_back(relaxed);
    auto with_det = relaxed;
    with_det.name = "weighted_nuclear_with_det";
    with_det.log2_value = nb.log2_with_det;
    with_det.applicable = true;
    with_det.note = "keeps |det V(a;mu)|";
    report.entries.push_back(with_det);
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : report.entries) {
    const bool counts = e.target == Target::WeightedProduct ||
                        (unit_weights && e.target == Target::UnweightedProduct);
    if (e.applicable && e.proven && counts && e.log2_value > best) {
      best = e.log2_value;
      report.tightest = e.name;
    }
  }
  report.comparison = compare_terms(rm, g);
  return report;
}

}  // namespace dmm
