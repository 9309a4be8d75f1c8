#pragma once

// Divided differences of monomials f(z) = z^m and their normalized partial
// derivatives with respect to the nodes.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "dmm/poly_core.hpp"
#include "dmm/scalar.hpp"

namespace dmm {

namespace detail {

template <class C>
void require_distinct_nodes(std::span<const C> nodes) {
  if (nodes.empty()) throw InputError("divided difference needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!distinct_points(lower(nodes[i]), lower(nodes[j])))
        throw InputError("confluent nodes unsupported here (nodes " + std::to_string(j) + " and " +
                         std::to_string(i) + ")");
}

template <class C>
void enumerate_compositions(std::span<const C> nodes, std::size_t index, int remaining, C partial, C& sum) {
  if (index + 1 == nodes.size()) {
    sum += partial * ipow(nodes[index], remaining);
    return;
  }
  C power(1);
  for (int t = 0; t <= remaining; ++t) {
    enumerate_compositions(nodes, index + 1, remaining - t, C(partial * power), sum);
    power *= nodes[index];
  }
}

}  // namespace detail

/// f[y_1..y_n] for f = z^m straight from the defining sum
/// sum_k f(y_k) / prod_{l != k} (y_k - y_l).
template <class C>
C divided_difference_monomial(int m, std::span<const C> nodes) {
  detail::require_distinct_nodes(nodes);
  C sum(0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    C denom(1);
    for (std::size_t l = 0; l < nodes.size(); ++l)
      if (l != k) denom *= nodes[k] - nodes[l];
    sum += ipow(nodes[k], m) / denom;
  }
  return sum;
}

/// Complete homogeneous symmetric polynomial h_{m-n+1}(y_1..y_n), enumerated
/// over all compositions; 0 when n > m + 1.
template <class C>
C monomial_dd_closed(int m, std::span<const C> nodes) {
  detail::require_distinct_nodes(nodes);
  const int total = m - static_cast<int>(nodes.size()) + 1;
  if (total < 0) return C(0);
  C sum(0);
  detail::enumerate_compositions(nodes, 0, total, C(1), sum);
  return sum;
}

/// Column of normalized partial divided differences
///   (1/i_1!) d^{i_1}/dy_1^{i_1} ... (1/i_n!) d^{i_n}/dy_n^{i_n} f[y_1..y_n],  f = z^deg,
/// for deg = 0 .. rows-1. Uses the closed form
///   sum_{t_1+..+t_n = deg-n+1} prod_j C(t_j, i_j) y_j^{t_j - i_j},
/// grouped as the coefficient of x^{deg-n+1} in prod_j sum_t C(t, i_j) y_j^{t-i_j} x^t,
/// which is computed by truncated series convolution.
template <class C>
std::vector<C> partial_dd_column(int rows, std::span<const C> nodes, std::span<const int> orders) {
  detail::require_distinct_nodes(nodes);
  if (orders.size() != nodes.size()) throw InputError("derivative orders and nodes differ in length");
  for (int o : orders)
    if (o < 0) throw InputError("derivative orders must be non-negative");

  const int count = static_cast<int>(nodes.size());
  std::vector<C> out(static_cast<std::size_t>(std::max(rows, 0)), C(0));
  const int top = rows - count;  // largest composition total needed
  if (top < 0) return out;

  const auto len = static_cast<std::size_t>(top + 1);
  std::vector<C> product(len, C(0));
  product[0] = C(1);
  std::vector<C> factor(len);
  std::vector<C> next(len);
  for (int j = 0; j < count; ++j) {
    const int order = orders[static_cast<std::size_t>(j)];
    const C& y = nodes[static_cast<std::size_t>(j)];
    std::fill(factor.begin(), factor.end(), C(0));
    C power(1);
    for (int t = order; t <= top; ++t) {
      factor[static_cast<std::size_t>(t)] = C(binomial(t, order)) * power;
      power *= y;
    }
    std::fill(next.begin(), next.end(), C(0));
    for (int a = 0; a <= top; ++a) {
      if (product[static_cast<std::size_t>(a)] == C(0)) continue;
      for (int b = order; a + b <= top; ++b)
        next[static_cast<std::size_t>(a + b)] +=
            product[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)];
    }
    product.swap(next);
  }
  for (int deg = count - 1; deg < rows; ++deg)
    out[static_cast<std::size_t>(deg)] = product[static_cast<std::size_t>(deg - count + 1)];
  return out;
}

/// Single entry of partial_dd_column: the normalized partial divided difference of z^m.
template <class C>
C partial_dd_monomial(int m, std::span<const C> nodes, std::span<const int> orders) {
  if (m < 0) throw InputError("monomial degree must be non-negative");
  return partial_dd_column(m + 1, nodes, orders)[static_cast<std::size_t>(m)];
}

/// Coefficient of f^{(i_j)}(y_j) when the partial divided difference is
/// written as a combination of derivatives of f at the nodes:
/// (1/i_j!) prod_{l != j} (y_j - y_l)^{-(i_l + 1)}. j is 0-based.
Complex leading_coefficient_of_derivative(std::span<const Complex> nodes, std::span<const int> orders,
                                          std::size_t j);

}  // namespace dmm
