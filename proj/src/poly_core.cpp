#include "dmm/poly_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dmm {

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

std::uint64_t binomial_exact(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  // result * (n-k+i) is divisible by i at every step.
  for (int i = 1; i <= k; ++i) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * (n - k + i);
    result = static_cast<std::uint64_t>(wide / i);
  }
  return result;
}

bool distinct_points(const Complex& a, const Complex& b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) > kDistinctTolerance * scale;
}

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_pairs(const RootMultiset& rm, const char* what) {
  if (rm.size() < 2) throw InputError(std::string(what) + " undefined for fewer than two distinct roots");
}

}  // namespace

RootMultiset::RootMultiset(std::vector<Complex> roots, std::vector<int> multiplicities)
    : roots_(std::move(roots)), multiplicities_(std::move(multiplicities)) {
  if (roots_.empty()) throw InputError("root multiset needs at least one root");
  if (roots_.size() != multiplicities_.size())
    throw InputError("roots and multiplicities differ in length");
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (!finite(roots_[i])) throw InputError("root " + std::to_string(i) + " is not finite");
    if (multiplicities_[i] < 1)
      throw InputError("multiplicity of root " + std::to_string(i) + " must be >= 1");
    degree_ += multiplicities_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (!distinct_points(roots_[i], roots_[j]))
        throw InputError("roots " + std::to_string(j) + " and " + std::to_string(i) +
                         " are not distinct");
    }
  }
}

RootMultiset RootMultiset::simple(std::vector<Complex> roots) {
  std::vector<int> ones(roots.size(), 1);
  return RootMultiset(std::move(roots), std::move(ones));
}

Polynomial Polynomial::monic(std::vector<Complex> coefficients) {
  if (coefficients.empty()) throw InputError("empty coefficient list");
  for (const auto& c : coefficients)
    if (!finite(c)) throw InputError("non-finite coefficient");
  const Complex lead = coefficients.back();
  if (lead == Complex(0.0)) throw InputError("leading coefficient is zero");
  for (auto& c : coefficients) c /= lead;
  coefficients.back() = 1.0;
  return Polynomial(std::move(coefficients));
}

Complex Polynomial::operator()(const Complex& z) const {
  Complex acc(0.0);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return Polynomial({Complex(0.0)});
  std::vector<Complex> d(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k)
    d[k - 1] = coefficients_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial expand_from_roots(const RootMultiset& rm) {
  std::vector<Complex> c{Complex(1.0)};
  for (std::size_t i = 0; i < rm.size(); ++i) {
    for (int rep = 0; rep < rm.multiplicity(i); ++rep) {
      // c(z) * (z - a)
      std::vector<Complex> next(c.size() + 1, Complex(0.0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= c[k] * rm.root(i);
      }
      c = std::move(next);
    }
  }
  return Polynomial::monic(std::move(c));
}

double log2_mahler_measure(const RootMultiset& rm, bool use_multiplicity) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rm.size(); ++i) {
    const double m = std::abs(rm.root(i));
    if (m > 1.0) acc += (use_multiplicity ? rm.multiplicity(i) : 1) * std::log2(m);
  }
  return acc;
}

double mahler_measure(const RootMultiset& rm, bool use_multiplicity) {
  double acc = 1.0;
  for (std::size_t i = 0; i < rm.size(); ++i) {
    const double m = std::max(1.0, std::abs(rm.root(i)));
    acc *= use_multiplicity ? std::pow(m, rm.multiplicity(i)) : m;
  }
  return acc;
}

std::vector<double> nearest_distinct_distances(const RootMultiset& rm) {
  require_pairs(rm, "nearest distances");
  std::vector<double> out(rm.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < rm.size(); ++i)
    for (std::size_t j = 0; j < rm.size(); ++j)
      if (i != j) out[i] = std::min(out[i], std::abs(rm.root(i) - rm.root(j)));
  return out;
}

double separation(const RootMultiset& rm) {
  require_pairs(rm, "separation");
  const auto d = nearest_distinct_distances(rm);
  return *std::min_element(d.begin(), d.end());
}

Complex discriminant(const RootMultiset& rm) {
  Complex acc(1.0);
  for (std::size_t i = 0; i < rm.size(); ++i)
    for (std::size_t j = i + 1; j < rm.size(); ++j) {
      const Complex diff = rm.root(i) - rm.root(j);
      acc *= diff * diff;
    }
  return acc;
}

Complex subdiscriminant(const RootMultiset& rm) {
  Complex acc(1.0);
  for (std::size_t i = 0; i < rm.size(); ++i) {
    for (std::size_t j = i + 1; j < rm.size(); ++j) acc *= rm.root(j) - rm.root(i);
    acc *= static_cast<double>(rm.multiplicity(i));
  }
  return acc;
}

Complex resultant_with_sqfree_derivative(const RootMultiset& rm) {
  Complex acc(1.0);
  for (std::size_t i = 0; i < rm.size(); ++i) {
    Complex deriv(1.0);
    for (std::size_t j = 0; j < rm.size(); ++j)
      if (j != i) deriv *= rm.root(i) - rm.root(j);
    for (int rep = 0; rep < rm.multiplicity(i); ++rep) acc *= deriv;
  }
  return acc;
}

double log2_abs_resultant_with_sqfree_derivative(const RootMultiset& rm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rm.size(); ++i)
    for (std::size_t j = 0; j < rm.size(); ++j)
      if (j != i) acc += rm.multiplicity(i) * std::log2(std::abs(rm.root(i) - rm.root(j)));
  return acc;
}

double coefficient_inf_norm(const Polynomial& p) {
  double best = 0.0;
  for (const auto& c : p.coefficients()) best = std::max(best, std::abs(c));
  return best;
}

}  // namespace dmm
