#include "dmm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dmm {

WeightedGraph::WeightedGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count),
      weights_(static_cast<std::size_t>(std::max(vertex_count, 0)) * static_cast<std::size_t>(std::max(vertex_count, 0)), 0) {
  if (vertex_count < 1) throw InputError("graph needs at least one vertex");
  edges_.reserve(edges.size());
  for (auto e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") references a missing root");
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.weight < 1) throw InputError("edge weights must be positive integers");
    if (e.u > e.v) std::swap(e.u, e.v);
    auto& slot = weights_[static_cast<std::size_t>(e.u * vertex_count + e.v)];
    if (slot != 0)
      throw InputError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    slot = e.weight;
    weights_[static_cast<std::size_t>(e.v * vertex_count + e.u)] = e.weight;
    edges_.push_back(e);
  }
}

int WeightedGraph::weight(int i, int j) const {
  return weights_[static_cast<std::size_t>(i * vertex_count_ + j)];
}

std::int64_t WeightedGraph::total_weight() const {
  std::int64_t s = 0;
  for (const auto& e : edges_) s += e.weight;
  return s;
}

int WeightedGraph::max_weight() const {
  int m = 0;
  for (const auto& e : edges_) m = std::max(m, e.weight);
  return m;
}

std::int64_t WeightedGraph::incident_weight(int i) const {
  std::int64_t s = 0;
  for (int j = 0; j < vertex_count_; ++j) s += weight(i, j);
  return s;
}

int WeightedGraph::degree(int i) const {
  int d = 0;
  for (int j = 0; j < vertex_count_; ++j) d += weight(i, j) != 0;
  return d;
}

DenseMatrix<double> WeightedGraph::adjacency() const {
  const auto r = static_cast<std::size_t>(vertex_count_);
  DenseMatrix<double> a(r, r);
  for (const auto& e : edges_) {
    a(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)) = e.weight;
    a(static_cast<std::size_t>(e.v), static_cast<std::size_t>(e.u)) = e.weight;
  }
  return a;
}

PotentialVector::PotentialVector(std::vector<int> mus) : mus_(std::move(mus)) {
  if (mus_.empty()) throw InputError("potential vector is empty");
  for (int m : mus_) {
    if (m < 1) throw InputError("potentials must be positive integers");
    total_ += m;
  }
}

std::string PotentialVector::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < mus_.size(); ++i) out << (i ? "," : "") << mus_[i];
  return out.str();
}

std::optional<Edge> first_violation(const WeightedGraph& g, const PotentialVector& mu) {
  for (const auto& e : g.edges())
    if (static_cast<std::int64_t>(e.weight) >
        static_cast<std::int64_t>(mu[static_cast<std::size_t>(e.u)]) * mu[static_cast<std::size_t>(e.v)])
      return e;
  return std::nullopt;
}

void require_feasible(const WeightedGraph& g, const PotentialVector& mu) {
  if (mu.size() != static_cast<std::size_t>(g.vertex_count()))
    throw InputError("potential vector length " + std::to_string(mu.size()) + " does not match " +
                     std::to_string(g.vertex_count()) + " roots");
  if (auto bad = first_violation(g, mu)) {
    throw InfeasibleError("edge (" + std::to_string(bad->u) + "," + std::to_string(bad->v) + ") has weight " +
                          std::to_string(bad->weight) + " > mu_" + std::to_string(bad->u) + " * mu_" +
                          std::to_string(bad->v) + " = " +
                          std::to_string(mu[static_cast<std::size_t>(bad->u)] * mu[static_cast<std::size_t>(bad->v)]));
  }
}

std::vector<double> jacobi_eigenvalues(const DenseMatrix<double>& input) {
  if (!input.square()) throw InputError("eigenvalues of a non-square matrix");
  const std::size_t n = input.rows();
  DenseMatrix<double> a = input;

  double frob2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      frob2 += a(i, j) * a(i, j);
      if (std::abs(a(i, j) - a(j, i)) > 1e-12) throw InputError("matrix is not symmetric");
    }
  const double target = 1e-12 * std::sqrt(frob2);

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > target) {
    if (++sweep > 100) throw NumericError("Jacobi eigenvalue iteration did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p,q); t = tan(theta), smaller root for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double nuclear_norm(const WeightedGraph& g) {
  double s = 0.0;
  for (double lambda : jacobi_eigenvalues(g.adjacency())) s += std::abs(lambda);
  return s;
}

namespace {

// ceil(sqrt(x)) robust to x landing a few ulps above a perfect square.
int ceil_sqrt(double x) {
  auto c = static_cast<int>(std::ceil(std::sqrt(x) - 1e-9));
  return std::max(c, 1);
}

}  // namespace

PotentialVector potentials_nuclear(const WeightedGraph& g) {
  if (g.empty()) return PotentialVector::ones(g.vertex_count());
  PotentialVector mu = PotentialVector::uniform(g.vertex_count(), ceil_sqrt(nuclear_norm(g)));
  // ||A_w||_* >= w_max makes this feasible; the tolerance in ceil_sqrt cannot break it
  // because every weight is an integer.
  require_feasible(g, mu);
  return mu;
}

PotentialVector potentials_uniform_wmax(const WeightedGraph& g) {
  if (g.empty()) return PotentialVector::ones(g.vertex_count());
  int c = 1;
  while (c * c < g.max_weight()) ++c;
  return PotentialVector::uniform(g.vertex_count(), c);
}

PotentialErrorTerms potential_error_terms(const WeightedGraph& g, const PotentialVector& mu) {
  const int r = g.vertex_count();
  if (mu.size() != static_cast<std::size_t>(r)) throw InputError("potential vector length does not match graph");
  PotentialErrorTerms out;
  for (int i = 0; i < r; ++i) {
    std::int64_t row = 0;
    const std::int64_t mi = mu[static_cast<std::size_t>(i)];
    for (int j = 0; j < r; ++j) {
      const std::int64_t entry = mi * mu[static_cast<std::size_t>(j)] - g.weight(i, j);
      row += entry < 0 ? -entry : entry;
    }
    out.inf_norm = std::max(out.inf_norm, row);
    out.sum_choose2 += mi * (mi - 1) / 2;
  }
  return out;
}

PotentialVector potentials_exhaustive(const WeightedGraph& g, int cap) {
  const int r = g.vertex_count();
  if (r > 8) throw InputError("exhaustive potential search limited to r <= 8; use heuristic strategies");
  if (g.empty()) return PotentialVector::ones(r);

  int needed = 1;
  while (needed * needed < g.max_weight()) ++needed;
  if (cap <= 0) cap = g.max_weight();
  if (cap < needed)
    throw InputError("cap " + std::to_string(cap) + " is below ceil(sqrt(w_max)) = " + std::to_string(needed));

  std::vector<int> current(static_cast<std::size_t>(r), 1);
  std::vector<int> best;
  std::int64_t best_obj = 0;
  int best_sum = 0;

  while (true) {
    PotentialVector mu(current);
    if (!first_violation(g, mu)) {
      const std::int64_t obj = potential_error_terms(g, mu).inf_norm;
      const int sum = mu.total();
      // Odometer order is lexicographic, so the first hit wins remaining ties.
      if (best.empty() || obj < best_obj || (obj == best_obj && sum < best_sum)) {
        best = current;
        best_obj = obj;
        best_sum = sum;
      }
    }
    int pos = r - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == cap) {
      current[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
  }
  return PotentialVector(best);
}

}  // namespace dmm
