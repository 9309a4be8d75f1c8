#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dmm {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Potentials violating w(i,j) <= mu_i * mu_j on some edge (CLI exit code 3).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: non-convergence, underflow (CLI exit code 4).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Binomial coefficient C(n, k) as a double; 0 when k < 0 or k > n.
double binomial(int n, int k);

/// Exact binomial coefficient; the caller keeps n <= 62.
std::uint64_t binomial_exact(int n, int k);

}  // namespace dmm
