#include "dmm/vandermonde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "dmm/poly_core.hpp"

namespace dmm {

ConfluentSpec::ConfluentSpec(std::vector<Complex> betas, std::vector<int> mus)
    : betas_(std::move(betas)), mus_(std::move(mus)) {
  if (betas_.empty()) throw InputError("confluent spec needs at least one node");
  if (betas_.size() != mus_.size()) throw InputError("betas and mus differ in length");
  offsets_.reserve(betas_.size());
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    if (mus_[i] < 1) throw InputError("block size mu_" + std::to_string(i) + " must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (!distinct_points(betas_[i], betas_[j]))
        throw InputError("confluent nodes " + std::to_string(j) + " and " + std::to_string(i) +
                         " coincide");
    offsets_.push_back(order_);
    order_ += mus_[i];
  }
}

Complex det_product_formula(const ConfluentSpec& spec) {
  Complex acc(1.0);
  const auto b = spec.betas();
  const auto mu = spec.mus();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) acc *= ipow(b[j] - b[i], mu[i] * mu[j]);
  return acc;
}

double log2_abs_det_product_formula(const ConfluentSpec& spec) {
  double acc = 0.0;
  const auto b = spec.betas();
  const auto mu = spec.mus();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      acc += mu[i] * mu[j] * std::log2(std::abs(b[j] - b[i]));
  return acc;
}

double vydiff_residual(const ConfluentSpec& spec, std::size_t block) {
  if (block >= spec.blocks()) throw InputError("block index out of range");
  const int mu_i = spec.mus()[block];
  if (mu_i == 1) throw InputError("no column to replace: block has mu == 1");

  using C = WideComplex;
  using R = WideReal;
  const int n = spec.order();

  double max_abs = 0.0;
  for (const auto& b : spec.betas()) max_abs = std::max(max_abs, std::abs(b));
  const R radius = R(2.0 * max_abs + 1.0);

  // V(y): block i shrinks by one column and y follows it as a size-1 block.
  const auto column_of_y = static_cast<std::size_t>(spec.block_offset(block) + mu_i - 1);
  DenseMatrix<C> base = build_confluent<C>(spec);

  const R two_pi = 2 * boost::math::constants::pi<R>();
  std::vector<C> samples(static_cast<std::size_t>(n));
  std::vector<C> roots_of_unity(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const R angle = two_pi * k / n;
    roots_of_unity[static_cast<std::size_t>(k)] = C(cos(angle), sin(angle));
    const C y = C(radius) * roots_of_unity[static_cast<std::size_t>(k)];
    DenseMatrix<C> vy = base;
    vy.set_column(column_of_y, column_v_i(y, 0, n));
    samples[static_cast<std::size_t>(k)] = det_direct(std::move(vy));
  }

  // coefficient p of det V(y) = (1/n) radius^{-p} sum_k samples_k w^{-kp}
  std::vector<C> coeffs(static_cast<std::size_t>(n));
  R radius_power(1);
  for (int p = 0; p < n; ++p) {
    C acc(0);
    for (int k = 0; k < n; ++k) {
      const C w = roots_of_unity[static_cast<std::size_t>((k * p) % n)];
      acc += samples[static_cast<std::size_t>(k)] * C(w.real(), -w.imag());
    }
    coeffs[static_cast<std::size_t>(p)] = acc / C(R(n) * radius_power);
    radius_power *= radius;
  }

  // (1/(mu_i-1)!) * d^{mu_i-1}/dy^{mu_i-1} at beta_i = sum_p C(p, mu_i-1) c_p beta^{p-mu_i+1}
  const C beta = lift<C>(spec.betas()[block]);
  const int order = mu_i - 1;
  C derived(0);
  C power(1);
  for (int p = order; p < n; ++p) {
    derived += C(binomial(p, order)) * coeffs[static_cast<std::size_t>(p)] * power;
    power *= beta;
  }

  const C direct = det_direct(base);
  return modulus(C(direct - derived));
}

}  // namespace dmm
