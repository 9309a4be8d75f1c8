#pragma once

#include <span>
#include <vector>

#include "dmm/types.hpp"

namespace dmm {

/// Relative threshold under which two roots count as the same point.
inline constexpr double kDistinctTolerance = 1e-12;

/// True when |a - b| exceeds kDistinctTolerance * max(1, |a|, |b|).
bool distinct_points(const Complex& a, const Complex& b);

/// Distinct complex roots with positive integer multiplicities.
///
/// Construction validates every invariant (finite values, pairwise distinct
/// roots, multiplicities >= 1, at least one root) and throws InputError
/// otherwise. Near-coincident roots are rejected, never merged.
class RootMultiset {
 public:
  RootMultiset(std::vector<Complex> roots, std::vector<int> multiplicities);

  /// All multiplicities one.
  static RootMultiset simple(std::vector<Complex> roots);

  std::span<const Complex> roots() const { return roots_; }
  std::span<const int> multiplicities() const { return multiplicities_; }
  const Complex& root(std::size_t i) const { return roots_[i]; }
  int multiplicity(std::size_t i) const { return multiplicities_[i]; }

  /// Number of distinct roots r.
  std::size_t size() const { return roots_.size(); }
  /// Degree d = sum of multiplicities.
  int degree() const { return degree_; }

 private:
  std::vector<Complex> roots_;
  std::vector<int> multiplicities_;
  int degree_ = 0;
};

/// Monic polynomial, coefficients lowest degree first.
class Polynomial {
 public:
  /// Divides through by the leading coefficient; throws InputError when the
  /// coefficient list is empty, non-finite, or has a zero leading entry.
  static Polynomial monic(std::vector<Complex> coefficients);

  std::span<const Complex> coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

  Complex operator()(const Complex& z) const;
  Polynomial derivative() const;

 private:
  explicit Polynomial(std::vector<Complex> c) : coefficients_(std::move(c)) {}
  std::vector<Complex> coefficients_;
};

/// prod (z - a_i)^{m_i} by repeated convolution with linear factors.
Polynomial expand_from_roots(const RootMultiset& rm);

/// prod max(1,|a_i|)^{m_i} when use_multiplicity (M(f)), else prod max(1,|a_i|) (M(alpha)).
double mahler_measure(const RootMultiset& rm, bool use_multiplicity);

/// log2 of mahler_measure, safe for large degrees.
double log2_mahler_measure(const RootMultiset& rm, bool use_multiplicity);

/// Minimum distance between distinct roots. Requires r >= 2.
double separation(const RootMultiset& rm);

/// Distance from each root to its nearest distinct root. Requires r >= 2.
std::vector<double> nearest_distinct_distances(const RootMultiset& rm);

/// prod_{i<j} (a_i - a_j)^2 over the distinct roots; 1 when r == 1.
Complex discriminant(const RootMultiset& rm);

/// det V(alpha) * prod m_i, with det V(alpha) = prod_{i<j} (a_j - a_i).
Complex subdiscriminant(const RootMultiset& rm);

/// res(f, g') with g the square-free part: prod_i g'(a_i)^{m_i}.
Complex resultant_with_sqfree_derivative(const RootMultiset& rm);

/// log2 |res(f, g')| without forming the product.
double log2_abs_resultant_with_sqfree_derivative(const RootMultiset& rm);

/// max_k |c_k|.
double coefficient_inf_norm(const Polynomial& p);

}  // namespace dmm
