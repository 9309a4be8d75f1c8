#include "dmm/instance.hpp"

#include <algorithm>

namespace dmm {

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorOptions options)
    : engine_(seed), options_(options) {
  if (options_.r_min < 1 || options_.r_max < options_.r_min) throw InputError("invalid root count range");
  if (options_.w_max < 1) throw InputError("w_max must be >= 1");
  const int side = 2 * options_.grid + 1;
  if (options_.r_max > side * side) throw InputError("grid too small for r_max distinct roots");
}

int InstanceGenerator::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double InstanceGenerator::uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Instance InstanceGenerator::next() {
  const int r = uniform_int(options_.r_min, options_.r_max);
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < r) {
    const Complex z(uniform_int(-options_.grid, options_.grid), uniform_int(-options_.grid, options_.grid));
    if (std::find(roots.begin(), roots.end(), z) == roots.end()) roots.push_back(z);
  }
  std::vector<int> mult(static_cast<std::size_t>(r));
  for (auto& m : mult) m = uniform_int(1, options_.max_multiplicity);

  // Edge density varies per instance so sparse and dense graphs both occur.
  const double density = 0.2 + 0.7 * uniform_real();
  std::vector<Edge> edges;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (uniform_real() < density) edges.push_back({i, j, uniform_int(1, options_.w_max)});

  return {RootMultiset(std::move(roots), std::move(mult)), WeightedGraph(r, std::move(edges)), false};
}

}  // namespace dmm
