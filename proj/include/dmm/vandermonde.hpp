#pragma once

#include <span>
#include <vector>

#include "dmm/matrix.hpp"

namespace dmm {

/// Nodes beta_1..beta_r with block sizes mu_1..mu_r of a confluent
/// Vandermonde matrix. Nodes must be pairwise distinct, every mu_i >= 1.
class ConfluentSpec {
 public:
  ConfluentSpec(std::vector<Complex> betas, std::vector<int> mus);

  std::span<const Complex> betas() const { return betas_; }
  std::span<const int> mus() const { return mus_; }
  std::size_t blocks() const { return betas_.size(); }
  /// Matrix order n = sum mu_i.
  int order() const { return order_; }
  /// Index of the first column of block i.
  int block_offset(std::size_t i) const { return offsets_[i]; }

 private:
  std::vector<Complex> betas_;
  std::vector<int> mus_;
  std::vector<int> offsets_;
  int order_ = 0;
};

/// Column v_i(x) of length n: entry m (0-based) is C(m, i) x^{m-i}, zero for m < i.
template <class C>
std::vector<C> column_v_i(const C& x, int i, int n) {
  std::vector<C> out(static_cast<std::size_t>(n), C(0));
  if (i < 0) return out;
  C power(1);  // x^{m-i}
  for (int m = i; m < n; ++m) {
    out[static_cast<std::size_t>(m)] = C(binomial(m, i)) * power;
    power *= x;
  }
  return out;
}

/// The n x n confluent Vandermonde matrix; block i occupies columns
/// v_0(beta_i) .. v_{mu_i - 1}(beta_i), blocks in input order.
template <class C>
DenseMatrix<C> build_confluent(const ConfluentSpec& spec) {
  const int n = spec.order();
  DenseMatrix<C> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < spec.blocks(); ++b) {
    const C beta = lift<C>(spec.betas()[b]);
    for (int j = 0; j < spec.mus()[b]; ++j) {
      const auto col = column_v_i(beta, j, n);
      m.set_column(static_cast<std::size_t>(spec.block_offset(b) + j), col);
    }
  }
  return m;
}

/// prod_{i<j} (beta_j - beta_i)^{mu_i mu_j}.
Complex det_product_formula(const ConfluentSpec& spec);

/// log2 |det V(beta; mu)| from the product formula.
double log2_abs_det_product_formula(const ConfluentSpec& spec);

/// |det V(beta; mu) - (1/(mu_i - 1)!) d^{mu_i - 1}/dy^{mu_i - 1} det V(y) at y = beta_i|,
/// where V(y) has the last column of block i replaced by v(y). det V(y) is
/// recovered as a polynomial in y by sampling on a circle of radius
/// 2 max|beta| + 1 and inverting the discrete Fourier transform. Evaluated in
/// wide precision. Throws InputError when mu_i == 1.
double vydiff_residual(const ConfluentSpec& spec, std::size_t block);

}  // namespace dmm
