#include "dmm/findiff.hpp"

#include <cmath>

namespace dmm {

Complex leading_coefficient_of_derivative(std::span<const Complex> nodes, std::span<const int> orders,
                                          std::size_t j) {
  detail::require_distinct_nodes(nodes);
  if (orders.size() != nodes.size()) throw InputError("derivative orders and nodes differ in length");
  if (j >= nodes.size()) throw InputError("node index out of range");
  Complex acc(1.0 / std::tgamma(orders[j] + 1.0));
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    if (l == j) continue;
    acc /= ipow(nodes[j] - nodes[l], orders[l] + 1);
  }
  return acc;
}

}  // namespace dmm
