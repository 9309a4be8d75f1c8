#pragma once

// Scalar plumbing shared by the templated kernels. Every kernel that has to
// survive ill-conditioned confluent Vandermonde matrices is written once over
// a complex type C and instantiated for std::complex<double> and WideComplex.

#include <cmath>
#include <complex>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "dmm/types.hpp"

namespace dmm {

namespace bmp = boost::multiprecision;

inline constexpr unsigned kWideDigits = 64;

using WideReal = bmp::number<bmp::cpp_bin_float<kWideDigits>, bmp::et_off>;
using WideComplex =
    bmp::number<bmp::complex_adaptor<bmp::cpp_bin_float<kWideDigits>>, bmp::et_off>;

template <class C>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  using real = double;
};

template <>
struct scalar_traits<WideComplex> {
  using real = WideReal;
};

template <class C>
using real_t = typename scalar_traits<C>::real;

template <class C>
C lift(const Complex& z) {
  return C(z.real(), z.imag());
}

inline Complex lower(const Complex& z) { return z; }

inline Complex lower(const WideComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline double modulus(const Complex& z) { return std::abs(z); }

inline double modulus(const WideComplex& z) { return static_cast<double>(abs(z)); }

/// log2 |z|; -inf for z == 0. Never overflows, whatever the magnitude of z.
inline double log2_modulus(const Complex& z) { return std::log2(std::abs(z)); }

inline double log2_modulus(const WideComplex& z) {
  const WideReal m = abs(z);
  if (m == 0) return -std::numeric_limits<double>::infinity();
  int exponent = 0;
  const WideReal mantissa = frexp(m, &exponent);
  return std::log2(static_cast<double>(mantissa)) + exponent;
}

/// z^k for k >= 0 by binary powering; 0^0 == 1.
template <class C>
C ipow(C base, int k) {
  C result(1);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace dmm
