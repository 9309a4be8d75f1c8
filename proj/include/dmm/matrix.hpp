#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "dmm/scalar.hpp"

namespace dmm {

/// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> data() const { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(std::size_t c, std::span<const T> values) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Elementwise conversion, e.g. WideComplex -> Complex via lower().
template <class To, class From, class F>
DenseMatrix<To> convert(const DenseMatrix<From>& m, F&& f) {
  DenseMatrix<To> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = f(m(r, c));
  return out;
}

/// Determinant in log form: |det| = 2^log2_abs, arg(det) = phase (radians, mod 2pi).
struct LogDeterminant {
  double log2_abs = 0.0;
  double phase = 0.0;
  bool singular = false;
};

namespace detail {

template <class C>
real_t<C> sq_modulus(const C& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

inline double unit_phase(const Complex& z) { return std::arg(z); }

inline double unit_phase(const WideComplex& z) {
  const WideReal m = abs(z);
  return std::arg(lower(z / WideComplex(m)));
}

// Gaussian elimination with partial pivoting; calls visit(pivot) per column and
// returns false as soon as a column has no non-zero pivot candidate.
template <class C, class Visit>
bool eliminate(DenseMatrix<C>& a, int& swaps, Visit&& visit) {
  const std::size_t n = a.rows();
  swaps = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    real_t<C> best_mag = sq_modulus(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const real_t<C> mag = sq_modulus(a(r, k));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag == 0) return false;
    if (best != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(best, c));
      ++swaps;
    }
    const C pivot = a(k, k);
    visit(pivot);
    for (std::size_t r = k + 1; r < n; ++r) {
      const C factor = a(r, k) / pivot;
      if (factor == C(0)) continue;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= factor * a(k, c);
    }
  }
  return true;
}

}  // namespace detail

/// Determinant by partial-pivot elimination; exactly singular input gives 0.
template <class C>
C det_direct(DenseMatrix<C> a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  C det(1);
  int swaps = 0;
  if (!detail::eliminate(a, swaps, [&](const C& pivot) { det *= pivot; })) return C(0);
  return (swaps % 2 == 0) ? det : C(-det);
}

/// Same elimination as det_direct, accumulated in log form so that it never
/// overflows or underflows.
template <class C>
LogDeterminant log2_det(DenseMatrix<C> a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  LogDeterminant out;
  int swaps = 0;
  const bool ok = detail::eliminate(a, swaps, [&](const C& pivot) {
    out.log2_abs += log2_modulus(pivot);
    out.phase += detail::unit_phase(pivot);
  });
  if (!ok) {
    out.singular = true;
    out.log2_abs = -std::numeric_limits<double>::infinity();
    out.phase = 0.0;
    return out;
  }
  if (swaps % 2 != 0) out.phase += std::numbers::pi;
  out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
  return out;
}

}  // namespace dmm
