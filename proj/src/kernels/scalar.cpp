#include "qdyn/kernels.hpp"

namespace qdyn::kernels::scalar {

// Complex products are spelled out: std::complex operator* routes through
// __muldc3 for inf/nan recovery, which the AVX2 path does not do either.

void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx{};
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik == cplx{}) continue;
      const double ar = aik.real();
      const double ai = aik.imag();
      const cplx* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = {crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

void gemv(std::size_t n, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < n; ++r) {
    const cplx* row = a + r * n;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      const double xr = x[c].real(), xi = x[c].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    y[r] = {re, im};
  }
}

void hadamard(std::size_t len, const cplx* x, const cplx* y, cplx* out) {
  for (std::size_t i = 0; i < len; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    out[i] = {xr * yr - xi * yi, xr * yi + xi * yr};
  }
}

cplx dotc(std::size_t len, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx weighted_sum(std::size_t len, const double* w, const cplx* z) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    re += w[i] * z[i].real();
    im += w[i] * z[i].imag();
  }
  return {re, im};
}

}  // namespace qdyn::kernels::scalar
