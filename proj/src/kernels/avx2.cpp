// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "qdyn/kernels.hpp"

namespace qdyn::kernels::avx2 {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (ar + i ai) * b for both lanes of b, with ar/ai already broadcast.
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);  // [im0, re0, im1, re1]
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, b_swap));
}

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);         // [re0, re0, re1, re1]
  const __m256d ai = _mm256_permute_pd(a, 0xF);    // [im0, im0, im1, im1]
  return cmul_bcast(ar, ai, b);
}

inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  double out[2];
  _mm_storeu_pd(out, s);
  return {out[0], out[1]};
}

}  // namespace

void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx{};
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik == cplx{}) continue;
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const cplx* brow = b + k * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        store2(crow + j, _mm256_add_pd(load2(crow + j), cmul_bcast(ar, ai, load2(brow + j))));
      }
      for (; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] = {crow[j].real() + (aik.real() * br - aik.imag() * bi),
                   crow[j].imag() + (aik.real() * bi + aik.imag() * br)};
      }
    }
  }
}

void gemv(std::size_t n, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < n; ++r) {
    const cplx* row = a + r * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= n; c += 2) acc = _mm256_add_pd(acc, cmul(load2(row + c), load2(x + c)));
    cplx total = hsum2(acc);
    for (; c < n; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      const double xr = x[c].real(), xi = x[c].imag();
      total += cplx{ar * xr - ai * xi, ar * xi + ai * xr};
    }
    y[r] = total;
  }
}

void hadamard(std::size_t len, const cplx* x, const cplx* y, cplx* out) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) store2(out + i, cmul(load2(x + i), load2(y + i)));
  for (; i < len; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    out[i] = {xr * yr - xi * yi, xr * yi + xi * yr};
  }
}

cplx dotc(std::size_t len, const cplx* x, const cplx* y) {
  // conj(x) * y: re = xr yr + xi yi, im = xr yi - xi yr
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0xF);
    const __m256d y_swap = _mm256_permute_pd(yv, 0x5);  // [yi, yr]
    // even: xr*yr + xi*yi, odd: xr*yi - xi*yr
    const __m256d t = _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, y_swap));
    acc = _mm256_add_pd(acc, t);
  }
  cplx total = hsum2(acc);
  for (; i < len; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    total += cplx{xr * yr + xi * yi, xr * yi - xi * yr};
  }
  return total;
}

cplx weighted_sum(std::size_t len, const double* w, const cplx* z) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    // [w0, w0, w1, w1]
    const __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    acc = _mm256_fmadd_pd(wv, load2(z + i), acc);
  }
  cplx total = hsum2(acc);
  for (; i < len; ++i) total += cplx{w[i] * z[i].real(), w[i] * z[i].imag()};
  return total;
}

}  // namespace qdyn::kernels::avx2
