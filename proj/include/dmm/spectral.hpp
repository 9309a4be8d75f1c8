#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmm/matrix.hpp"

namespace dmm {

struct Edge {
  int u = 0;  ///< smaller endpoint
  int v = 0;  ///< larger endpoint
  int weight = 1;
};

/// Simple undirected graph on the root indices 0..r-1 with positive integer
/// edge weights. Edges are stored with u < v in insertion order.
class WeightedGraph {
 public:
  WeightedGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  std::span<const Edge> edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }

  /// 0 when i and j are not adjacent.
  int weight(int i, int j) const;
  /// w(E): the sum of all edge weights.
  std::int64_t total_weight() const;
  int max_weight() const;
  /// Sum of weights of the edges touching vertex i.
  std::int64_t incident_weight(int i) const;
  int degree(int i) const;

  /// The symmetric weighted adjacency matrix A_w.
  DenseMatrix<double> adjacency() const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> weights_;  // dense r x r
};

/// Positive integer potentials mu_1..mu_r, one per root.
class PotentialVector {
 public:
  explicit PotentialVector(std::vector<int> mus);
  static PotentialVector ones(int r) { return PotentialVector(std::vector<int>(static_cast<std::size_t>(r), 1)); }
  static PotentialVector uniform(int r, int value) {
    return PotentialVector(std::vector<int>(static_cast<std::size_t>(r), value));
  }

  std::span<const int> values() const { return mus_; }
  int operator[](std::size_t i) const { return mus_[i]; }
  std::size_t size() const { return mus_.size(); }
  /// n = sum mu_i.
  int total() const { return total_; }

  std::string to_string() const;

  friend bool operator==(const PotentialVector&, const PotentialVector&) = default;

 private:
  std::vector<int> mus_;
  int total_ = 0;
};

/// First edge with w > mu_u * mu_v, if any.
std::optional<Edge> first_violation(const WeightedGraph& g, const PotentialVector& mu);

/// Throws InfeasibleError naming the first violating edge; InputError on a length mismatch.
void require_feasible(const WeightedGraph& g, const PotentialVector& mu);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Stops once the off-diagonal Frobenius mass is <= 1e-12 ||A||_F; throws
/// InputError on asymmetry above 1e-12 and NumericError after 100 sweeps.
std::vector<double> jacobi_eigenvalues(const DenseMatrix<double>& a);

/// ||A_w||_* = sum |lambda_k|.
double nuclear_norm(const WeightedGraph& g);

/// ceil(sqrt(||A_w||_*)) on every root; all ones on the empty graph.
PotentialVector potentials_nuclear(const WeightedGraph& g);

/// ceil(sqrt(w_max)) on every root; all ones on the empty graph.
PotentialVector potentials_uniform_wmax(const WeightedGraph& g);

/// Exhaustive search over [1, cap]^r for the feasible vector minimizing
/// ||mu mu^t - A_w||_inf, ties broken by smaller sum then lexicographically.
/// cap <= 0 selects w_max. Throws InputError for r > 8 or a cap below
/// max ceil(sqrt(w)).
PotentialVector potentials_exhaustive(const WeightedGraph& g, int cap = 0);

struct PotentialErrorTerms {
  std::int64_t inf_norm = 0;       ///< ||mu mu^t - A_w||_inf (max absolute row sum)
  std::int64_t sum_choose2 = 0;    ///< sum_i C(mu_i, 2)
};

PotentialErrorTerms potential_error_terms(const WeightedGraph& g, const PotentialVector& mu);

}  // namespace dmm
