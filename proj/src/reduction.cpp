#include "dmm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace dmm {

std::int64_t OrientedGraph::in_weight(int v) const {
  std::int64_t s = 0;
  for (const auto& e : in_edges[static_cast<std::size_t>(v)]) s += e.weight;
  return s;
}

namespace {

auto modulus_key(const RootMultiset& rm, int i) {
  const Complex& a = rm.root(static_cast<std::size_t>(i));
  return std::make_tuple(std::abs(a), a.real(), a.imag(), i);
}

}  // namespace

OrientedGraph orient(const RootMultiset& rm, const WeightedGraph& g) {
  if (static_cast<std::size_t>(g.vertex_count()) != rm.size())
    throw InputError("graph has " + std::to_string(g.vertex_count()) + " vertices but there are " +
                     std::to_string(rm.size()) + " distinct roots");
  OrientedGraph out;
  out.in_edges.resize(rm.size());
  for (const auto& e : g.edges()) {
    const bool u_smaller = modulus_key(rm, e.u) < modulus_key(rm, e.v);
    const int source = u_smaller ? e.u : e.v;
    const int sink = u_smaller ? e.v : e.u;
    out.in_edges[static_cast<std::size_t>(sink)].push_back({source, e.weight});
  }
  out.order.resize(rm.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::sort(out.order.begin(), out.order.end(),
            [&](int a, int b) { return modulus_key(rm, a) > modulus_key(rm, b); });
  return out;
}

ColumnAssignment assign_columns(std::span<const InWeight> in, int mu_alpha) {
  if (mu_alpha < 1) throw InputError("block size must be >= 1");
  ColumnAssignment a;
  a.block_size = mu_alpha;
  a.sets.resize(static_cast<std::size_t>(mu_alpha));
  a.residues.resize(in.size());
  for (std::size_t l = 0; l < in.size(); ++l) {
    const int w = in[l].weight;
    const int mu = in[l].mu;
    if (w < 1 || mu < 1) throw InputError("in-edge weights and block sizes must be positive");
    if (static_cast<std::int64_t>(w) > static_cast<std::int64_t>(mu) * mu_alpha)
      throw InfeasibleError("in-edge " + std::to_string(l) + " has weight " + std::to_string(w) + " > " +
                            std::to_string(mu) + " * " + std::to_string(mu_alpha));
    const int column = (w + mu - 1) / mu;
    a.sets[static_cast<std::size_t>(column - 1)].push_back(static_cast<int>(l));
    a.residues[l] = (w % mu == 0) ? mu : w % mu;
  }

  a.assigned_from.assign(static_cast<std::size_t>(mu_alpha), 0);
  a.m.assign(static_cast<std::size_t>(mu_alpha), 0);
  int tail_count = 0;              // |S_{j+1} u ... |
  std::int64_t tail_orders = 0;    // sum over S_{>j} of (mu_l - 1)
  for (int j = mu_alpha; j >= 1; --j) {
    const auto& s = a.sets[static_cast<std::size_t>(j - 1)];
    std::int64_t own = 0;
    for (int l : s) own += a.residues[static_cast<std::size_t>(l)] - 1;
    const int n_j = tail_count + static_cast<int>(s.size());
    a.assigned_from[static_cast<std::size_t>(j - 1)] = n_j;
    a.m[static_cast<std::size_t>(j - 1)] = static_cast<int>(n_j + (j - 1) + own + tail_orders);
    tail_count = n_j;
    for (int l : s) tail_orders += in[static_cast<std::size_t>(l)].mu - 1;
  }
  return a;
}

std::vector<ColumnAssignment::Source> ColumnAssignment::column_sources(int j, std::span<const InWeight> in) const {
  std::vector<Source> out;
  for (int l : sets[static_cast<std::size_t>(j - 1)]) out.push_back({l, residues[static_cast<std::size_t>(l)] - 1});
  for (int k = j + 1; k <= block_size; ++k)
    for (int l : sets[static_cast<std::size_t>(k - 1)]) out.push_back({l, in[static_cast<std::size_t>(l)].mu - 1});
  return out;
}

std::int64_t ColumnAssignment::m_sum() const {
  return std::accumulate(m.begin(), m.end(), std::int64_t{0});
}

std::vector<InWeight> in_weights_of(const OrientedGraph& oriented, const ConfluentSpec& spec, int v) {
  std::vector<InWeight> out;
  for (const auto& e : oriented.in_edges[static_cast<std::size_t>(v)])
    out.push_back({e.weight, spec.mus()[static_cast<std::size_t>(e.source)]});
  return out;
}

namespace {

template <class C>
double log2_column_norm(const DenseMatrix<C>& m, std::size_t col) {
  real_t<C> s(0);
  real_t<C> scale(0);
  for (std::size_t r = 0; r < m.rows(); ++r) scale = std::max<real_t<C>>(scale, abs(m(r, col)));
  if (scale == 0) return -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const C z = m(r, col) / C(scale);
    s += z.real() * z.real() + z.imag() * z.imag();
  }
  return log2_modulus(C(scale)) + 0.5 * std::log2(static_cast<double>(s));
}

template <class C>
ReductionResult reduce(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu,
                       const ReductionOptions& options) {
  require_feasible(g, mu);
  ReductionResult result;
  std::vector<Complex> alphas(rm.roots().begin(), rm.roots().end());
  std::vector<int> mus(mu.values().begin(), mu.values().end());
  const ConfluentSpec spec(std::move(alphas), std::move(mus));

  result.oriented = orient(rm, g);
  result.assignments.resize(rm.size());
  ReductionState<C> state = initial_state<C>(spec);

  const LogDeterminant initial = log2_det(state.matrix);
  result.log2_det_initial = initial.log2_abs;
  result.log2_det_formula = log2_abs_det_product_formula(spec);

  for (int v : result.oriented.order) {
    result.assignments[static_cast<std::size_t>(v)] = replace_block(state, v, result.oriented, spec);
    if (options.check_steps) {
      const double step = std::abs(initial.log2_abs - log2_det(state.matrix).log2_abs - state.log2_factor);
      result.max_step_residual = std::max(result.max_step_residual, step);
    }
  }

  const LogDeterminant reduced = log2_det(state.matrix);
  result.log2_det_reduced = reduced.log2_abs;
  result.log2_factor = state.log2_factor;
  result.factor_phase = state.factor_phase;
  result.residual = std::abs(result.log2_det_initial - (result.log2_det_reduced + result.log2_factor));
  result.column_m = state.column_m;
  result.column_vertex = state.column_vertex;
  for (std::size_t c = 0; c < state.matrix.cols(); ++c)
    result.column_log2_norms.push_back(log2_column_norm(state.matrix, c));
  result.reduced = convert<Complex>(state.matrix, [](const C& z) { return lower(z); });
  return result;
}

}  // namespace

ReductionResult run_reduction(const RootMultiset& rm, const WeightedGraph& g, const PotentialVector& mu,
                              const ReductionOptions& options) {
  if (options.precision == Precision::Double) return reduce<Complex>(rm, g, mu, options);
  return reduce<WideComplex>(rm, g, mu, options);
}

double log2_column_norm_bound(const Complex& alpha, int m, int n) {
  if (n < 1) throw InputError("matrix order must be positive");
  if (m < 0 || m >= n)
    throw InputError("M_j = " + std::to_string(m) + " outside [0, n-1]: the column would vanish identically");
  const double max1 = std::max(1.0, std::abs(alpha));
  return (n - 1 - m) * std::log2(max1) + m * std::log2(n / std::sqrt(3.0)) + 0.5 * std::log2(static_cast<double>(n));
}

double column_norm_bound(const Complex& alpha, int m, int n) { return std::exp2(log2_column_norm_bound(alpha, m, n)); }

boost::multiprecision::cpp_int binom_sq_sum(int n, int m) {
  if (m < 0 || m >= n) throw InputError("binom_sq_sum requires 0 <= M <= n-1");
  boost::multiprecision::cpp_int sum = 0;
  boost::multiprecision::cpp_int c = 1;  // C(k, m) starting at k = m
  for (int k = m; k < n; ++k) {
    sum += c * c;
    c = c * (k + 1) / (k + 1 - m);
  }
  return sum;
}

bool binom_sq_sum_within_bound(int n, int m) {
  using boost::multiprecision::cpp_int;
  const cpp_int lhs = boost::multiprecision::pow(cpp_int(3), static_cast<unsigned>(m)) * binom_sq_sum(n, m);
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(2 * m + 1));
  return lhs <= rhs;
}

std::int64_t max_vertex_exponent(const OrientedGraph& oriented, const PotentialVector& mu) {
  const std::int64_t n = mu.total();
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::int64_t m = mu[i];
    best = std::max(best, (n - 1) * m - m * (m - 1) / 2 - oriented.in_weight(static_cast<int>(i)));
  }
  return best;
}

HadamardReport hadamard_chain_check(const ReductionResult& result, const RootMultiset& rm, const WeightedGraph& g,
                                    const PotentialVector& mu) {
  HadamardReport report;
  const int n = mu.total();
  const double slack = std::log2(1.0 + 1e-9);
  report.min_column_margin = std::numeric_limits<double>::infinity();
  bool ok = true;

  std::vector<int> position_in_block(rm.size(), 0);
  double sum_log2_norms = 0.0;
  for (std::size_t c = 0; c < result.column_m.size(); ++c) {
    ColumnCheck check;
    check.vertex = result.column_vertex[c];
    check.column = ++position_in_block[static_cast<std::size_t>(check.vertex)];
    check.m = result.column_m[c];
    check.log2_norm = result.column_log2_norms[c];
    check.log2_bound = log2_column_norm_bound(rm.root(static_cast<std::size_t>(check.vertex)), check.m, n);
    check.margin = check.log2_bound - check.log2_norm;
    report.min_column_margin = std::min(report.min_column_margin, check.margin);
    ok = ok && check.margin >= -slack;
    sum_log2_norms += check.log2_norm;
    report.columns.push_back(check);
  }

  for (std::size_t i = 0; i < rm.size(); ++i) {
    VertexCheck vc;
    vc.vertex = static_cast<int>(i);
    vc.m_sum = result.assignments[i].m_sum();
    const std::int64_t m = mu[i];
    vc.expected = m * (m - 1) / 2 + result.oriented.in_weight(vc.vertex);
    vc.holds = vc.m_sum == vc.expected;
    ok = ok && vc.holds;
    report.vertices.push_back(vc);
  }

  report.hadamard_margin = sum_log2_norms - result.log2_det_reduced;
  ok = ok && report.hadamard_margin >= -1e-9;

  const auto terms = potential_error_terms(g, mu);
  const double common = static_cast<double>(terms.sum_choose2 + g.total_weight()) * std::log2(n / std::sqrt(3.0)) +
                        0.5 * n * std::log2(static_cast<double>(n));
  double vertex_part = 0.0;
  for (std::size_t i = 0; i < rm.size(); ++i) {
    const std::int64_t m = mu[i];
    const std::int64_t e = (n - 1) * m - m * (m - 1) / 2 - result.oriented.in_weight(static_cast<int>(i));
    vertex_part += static_cast<double>(e) * std::log2(std::max(1.0, std::abs(rm.root(i))));
  }
  const double log2_m_alpha = log2_mahler_measure(rm, false);
  report.vertex_bound_margin = vertex_part + common - result.log2_det_reduced;
  report.mahler_bound_margin =
      static_cast<double>(max_vertex_exponent(result.oriented, mu)) * log2_m_alpha + common - result.log2_det_reduced;
  report.stated_bound_margin =
      static_cast<double>(terms.inf_norm) * log2_m_alpha + common - result.log2_det_reduced;
  ok = ok && report.vertex_bound_margin >= -1e-9 && report.mahler_bound_margin >= -1e-9;
  report.passed = ok;
  return report;
}

}  // namespace dmm
