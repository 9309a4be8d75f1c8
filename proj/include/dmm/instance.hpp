#pragma once

// Problem instances (roots plus weighted graph) and the seeded generator used
// by the benchmark sweep and the acceptance runs.

#include <cstdint>
#include <random>
#include <vector>

#include "dmm/poly_core.hpp"
#include "dmm/spectral.hpp"

namespace dmm {

struct Instance {
  RootMultiset roots;
  WeightedGraph graph;
  bool approximate_roots = false;  ///< roots came from the coefficient path
};

struct GeneratorOptions {
  int r_min = 2;
  int r_max = 6;
  int w_max = 6;
  int grid = 4;            ///< roots are Gaussian integers in [-grid, grid]^2
  int max_multiplicity = 3;
};

/// Draws from mt19937_64 through plain modulo arithmetic so a seed yields the
/// same stream on every standard library.
class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, GeneratorOptions options = {});

  Instance next();

  /// Uniform integer in [lo, hi] (modulo bias is irrelevant at these ranges).
  int uniform_int(int lo, int hi);
  /// Uniform double in [0, 1).
  double uniform_real();

 private:
  std::mt19937_64 engine_;
  GeneratorOptions options_;
};

}  // namespace dmm
