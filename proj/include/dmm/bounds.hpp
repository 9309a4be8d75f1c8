#pragma once

// Lower bounds on (weighted) products of root distances, all in log2 scale.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmm/poly_core.hpp"
#include "dmm/spectral.hpp"

namespace dmm {

/// sum_E w log2 |a_i - a_j|; 0 for an empty edge set.
double actual_weighted_product(const RootMultiset& rm, const WeightedGraph& g);

/// sum_E log2 |a_i - a_j|, ignoring the weights.
double actual_unweighted_product(const RootMultiset& rm, const WeightedGraph& g);

/// log2 of d^{-(d+2)/2} |Disc|^{1/2} M^{1-d} with d = r, the square-free
/// reading over the distinct roots. Lower-bounds log2 sep. Requires r >= 2.
double classic_sep_bound(const RootMultiset& rm);

/// log2 of |det V(a)| M(a)^{-(r-1)} (r/sqrt3)^{-|E|} r^{-r/2}; lower-bounds the
/// unweighted edge product.
double dmm_unweighted(const RootMultiset& rm, const WeightedGraph& g);

struct SdiscForms {
  double eigenwillig_log2 = 0.0;
  double amgm_log2 = 0.0;
  double log2_multiplicity_product = 0.0;  ///< log2 prod sqrt(m_i)
  double log2_eigenwillig_cap = 0.0;       ///< log2 3^{min(d, 2(d-r))/6}
  double log2_amgm_cap = 0.0;              ///< log2 (d/r)^{r/2}
};

/// Subdiscriminant forms of dmm_unweighted, |sDisc|^{1/2} M(f)^{-(r-1)} (r/sqrt3)^{-|E|} r^{-r/2} / cap,
/// with |sDisc| = |det V(a)|^2 prod m_i and cap one of the two bounds on prod sqrt(m_i).
SdiscForms dmm_sdisc_forms(const RootMultiset& rm, const WeightedGraph& g);

/// The unweighted bound raised to w_max with the surplus distances bounded by
/// 2 M(a); 0 on an empty graph.
double naive_weighted(const RootMultiset& rm, const WeightedGraph& g);

struct MainBoundTerms {
  double log2_value = 0.0;            ///< bound with the proven exponent
  double stated_log2_value = 0.0;     ///< bound with exponent ||mu mu^t - A_w||_inf
  double log2_det = 0.0;              ///< log2 |det V(a; mu)|
  std::int64_t mahler_exponent = 0;   ///< max_i (n-1)mu_i - C(mu_i,2) - w_i (in-weight)
  std::int64_t stated_exponent = 0;   ///< ||mu mu^t - A_w||_inf
  std::int64_t sum_choose2 = 0;
  int n = 0;
};

/// Weighted bound with potentials mu:
///   |det V(a;mu)| M(a)^{-e} (n/sqrt3)^{-sum C(mu_i,2) - w(E)} n^{-n/2}.
/// e is the largest per-root exponent established by the column-norm
/// argument; the variant with e = ||mu mu^t - A_w||_inf is reported alongside.
/// Throws InfeasibleError naming the first edge with w > mu_i mu_j.
MainBoundTerms weighted_main_terms(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu);

double weighted_main(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu);

struct NuclearBound {
  double log2_value = 0.0;          ///< determinant dropped (needs |det V(a;mu)| >= 1)
  double log2_with_det = 0.0;       ///< determinant kept; valid for any roots
  double nuclear_norm = 0.0;
  bool det_at_least_one = true;
  double main_at_mu = 0.0;          ///< weighted_main at the same potentials
  std::optional<PotentialVector> mu;
};

/// M(f)^{-2r||A||_*} (n/sqrt3)^{-1.5 r||A||_* - w(E)} n^{-n/2}, n = r ceil(sqrt ||A||_*).
/// All zeros on an empty graph.
NuclearBound weighted_nuclear(const RootMultiset& rm, const WeightedGraph& g);

/// log2 of 2^{-d(r+2)} (||f|| ||f_sqfree||)^{-d} M(f)^{1-r} |res(f, f_sqfree')|.
/// indices/weights select the product prod_{i in K} Delta_i^{w_i}; the right-hand
/// side does not depend on them. Throws InputError if some w_i > m_i.
double emt_bound(const RootMultiset& rm, std::span<const int> indices, std::span<const int> weights);

/// sum_{i in K} w_i log2 Delta_i.
double emt_product(const RootMultiset& rm, std::span<const int> indices, std::span<const int> weights);

enum class Strategy { Ones, Uniform, Nuclear, Exhaustive };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);
std::vector<Strategy> all_strategies();

/// Potentials chosen by a strategy; std::nullopt when the strategy does not
/// apply (all-ones on a graph with weights > 1, exhaustive with r > 8).
std::optional<PotentialVector> choose_potentials(const WeightedGraph& g, Strategy s);

/// Which product a bound entry lower-bounds.
enum class Target { WeightedProduct, UnweightedProduct, Separation, NearestDistances };

std::string to_string(Target t);

struct BoundEntry {
  std::string name;
  double log2_value = 0.0;
  Target target = Target::WeightedProduct;
  double target_log2 = 0.0;
  /// Preconditions hold (feasible potentials, determinant convention, r >= 2).
  bool applicable = true;
  /// False for the variant whose exponent the column-norm argument does not
  /// establish; such entries are still checked but never picked as tightest.
  bool proven = true;
  std::string note;
  std::vector<std::pair<std::string, double>> parameters;
  std::optional<PotentialVector> mu;

  bool sound(double tolerance) const { return !applicable || log2_value <= target_log2 + tolerance; }
};

/// Per-term logarithmic comparison between the weighted bound and the
/// w_max-power of the unweighted bound, both at mu = ceil(sqrt w_max).
struct TermComparison {
  std::int64_t main_mahler_exponent = 0;
  std::int64_t main_stated_exponent = 0;
  std::int64_t naive_mahler_exponent = 0;  ///< (r-1) w_max + |E| w_max
  double main_edge_term = 0.0;             ///< (sum C(mu,2) + w(E)) log2(n/sqrt3)
  double naive_edge_term = 0.0;            ///< |E| w_max (1 + log2(r/sqrt3))
  double main_size_term = 0.0;             ///< (n/2) log2 n
  double naive_size_term = 0.0;            ///< (r w_max / 2) log2 r
  bool main_exponent_smaller = false;

  double mahler_gap() const { return static_cast<double>(main_mahler_exponent - naive_mahler_exponent); }
  double edge_gap() const { return main_edge_term - naive_edge_term; }
  double size_gap() const { return main_size_term - naive_size_term; }
};

std::optional<TermComparison> compare_terms(const RootMultiset& rm, const WeightedGraph& g);

struct BoundReport {
  double actual_log2 = 0.0;
  double unweighted_actual_log2 = 0.0;
  std::vector<BoundEntry> entries;
  /// Largest applicable proven bound on the weighted product.
  std::string tightest;
  std::optional<TermComparison> comparison;

  const BoundEntry* find(const std::string& name) const;
  std::vector<const BoundEntry*> violations(double tolerance) const;
  bool all_sound(double tolerance) const { return violations(tolerance).empty(); }
};

struct CompareOptions {
  std::vector<Strategy> strategies = all_strategies();
  /// Extra potentials supplied by the caller; must be feasible.
  std::optional<PotentialVector> explicit_mu;
};

/// Evaluates every bound and picks the tightest applicable one.
BoundReport compare_all(const RootMultiset& rm, const WeightedGraph& g, const CompareOptions& options = {});

}  // namespace dmm
