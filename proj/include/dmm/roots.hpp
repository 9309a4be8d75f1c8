#pragma once

// Coefficient input path: simultaneous Aberth-Ehrlich iteration followed by
// clustering into a root multiset. Results are approximate by construction.

#include <vector>

#include "dmm/poly_core.hpp"

namespace dmm {

struct AberthOptions {
  int max_iterations = 200;
  double residual_tolerance = 1e-10;  ///< |f(z)| <= tol * ||f||_inf per root
  double cluster_radius = 1e-6;       ///< relative to max(1, |z|)
};

struct RootApproximation {
  std::vector<Complex> roots;  ///< d approximations, unclustered
  int iterations = 0;
  double max_residual = 0.0;   ///< max |f(z_i)| / ||f||_inf
};

/// Approximates all d roots of p. Throws NumericError if some root misses the
/// residual tolerance after max_iterations; InputError for degree 0.
RootApproximation aberth_ehrlich(const Polynomial& p, const AberthOptions& options = {});

/// Single-linkage clustering with radius cluster_radius * max(1, |z|); each
/// cluster becomes one distinct root (its centroid) with multiplicity equal
/// to its size.
RootMultiset cluster_roots(const std::vector<Complex>& roots, double radius = 1e-6);

/// aberth_ehrlich followed by cluster_roots.
RootMultiset roots_from_coefficients(const std::vector<Complex>& coefficients, const AberthOptions& options = {});

}  // namespace dmm
