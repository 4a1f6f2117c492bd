#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qdyn/matrix.hpp"

namespace testing {

using cplx = std::complex<double>;

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (cplx& z : v) z = {u(rng), u(rng)};
  return v;
}

// Plain triple loop, no kernel dispatch.
inline qdyn::CMatrix naive_product(const qdyn::CMatrix& a, const qdyn::CMatrix& b) {
  const std::size_t n = a.dim();
  qdyn::CMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

}  // namespace testing
