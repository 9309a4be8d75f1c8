#include "dmm/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace dmm {

namespace {

struct HornerPair {
  Complex value;
  Complex derivative;
};

HornerPair horner(std::span<const Complex> c, const Complex& z) {
  Complex p = c.back();
  Complex dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

}  // namespace

RootApproximation aberth_ehrlich(const Polynomial& p, const AberthOptions& options) {
  const int d = p.degree();
  if (d < 1) throw InputError("polynomial of degree 0 has no roots");
  const auto c = p.coefficients();
  const double norm = coefficient_inf_norm(p);

  // Initial points on a circle of radius 1 + max|c_k| (Cauchy), rotated off the axes.
  double radius = 0.0;
  for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(k)]));
  radius = std::min(1.0 + radius, 1e6);
  std::vector<Complex> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);

  RootApproximation out;
  std::vector<bool> settled(z.size(), false);
  for (int it = 1; it <= options.max_iterations; ++it) {
    out.iterations = it;
    bool moved = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (settled[i]) continue;
      const auto [f, df] = horner(c, z[i]);
      if (f == Complex(0.0)) {
        settled[i] = true;
        continue;
      }
      const Complex newton = f / df;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i && z[j] != z[i]) repulsion += 1.0 / (z[i] - z[j]);
      const Complex step = newton / (1.0 - newton * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z[i])))
        settled[i] = true;
      else
        moved = true;
    }
    if (!moved) break;
  }

  for (const auto& zi : z) out.max_residual = std::max(out.max_residual, std::abs(horner(c, zi).value) / norm);
  if (out.max_residual > options.residual_tolerance)
    throw NumericError("Aberth-Ehrlich iteration did not converge (relative residual " +
                       std::to_string(out.max_residual) + "); supply the roots explicitly");
  out.roots = std::move(z);
  return out;
}

RootMultiset cluster_roots(const std::vector<Complex>& roots, double radius) {
  if (roots.empty()) throw InputError("no roots to cluster");
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= radius * scale) parent[find(i)] = find(j);
    }

  std::vector<std::size_t> label(n, n);
  std::vector<Complex> sums;
  std::vector<int> counts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (label[root] == n) {
      label[root] = sums.size();
      sums.emplace_back(0.0);
      counts.push_back(0);
    }
    sums[label[root]] += roots[i];
    ++counts[label[root]];
  }
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k] /= static_cast<double>(counts[k]);
  return RootMultiset(std::move(sums), std::move(counts));
}

RootMultiset roots_from_coefficients(const std::vector<Complex>& coefficients, const AberthOptions& options) {
  const auto approx = aberth_ehrlich(Polynomial::monic(coefficients), options);
  return cluster_roots(approx.roots, options.cluster_radius);
}

}  // namespace dmm
