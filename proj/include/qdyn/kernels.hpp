#pragma once

// Dense complex inner loops behind the Fock-space engine. Every kernel has
// a scalar reference implementation and, on x86-64 builds, an AVX2+FMA
// variant. The variant is picked once at startup from CPUID and can be
// overridden (tests pin it to compare the two).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qdyn::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA supported by both the build and the running CPU.
Isa detected_isa() noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Throws std::invalid_argument if `isa` is not available.
void set_active_isa(Isa isa);

/// c = a * b for row-major n x n matrices. `c` must not alias a or b.
void gemm(std::size_t n, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c);

/// y = a * x for a row-major n x n matrix.
void gemv(std::size_t n, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);

/// out[i] = x[i] * y[i]
void hadamard(std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> out);

/// sum_i conj(x[i]) * y[i]
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);

/// sum_i w[i] * z[i]
cplx weighted_sum(std::span<const double> w, std::span<const cplx> z);

namespace scalar {
void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c);
void gemv(std::size_t n, const cplx* a, const cplx* x, cplx* y);
void hadamard(std::size_t len, const cplx* x, const cplx* y, cplx* out);
cplx dotc(std::size_t len, const cplx* x, const cplx* y);
cplx weighted_sum(std::size_t len, const double* w, const cplx* z);
}  // namespace scalar

#if defined(QDYN_HAVE_AVX2)
namespace avx2 {
void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c);
void gemv(std::size_t n, const cplx* a, const cplx* x, cplx* y);
void hadamard(std::size_t len, const cplx* x, const cplx* y, cplx* out);
cplx dotc(std::size_t len, const cplx* x, const cplx* y);
cplx weighted_sum(std::size_t len, const double* w, const cplx* z);
}  // namespace avx2
#endif

}  // namespace qdyn::kernels
