#include <atomic>
#include <stdexcept>
#include <string>

#include "qdyn/kernels.hpp"

namespace qdyn::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(QDYN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got < want) throw std::invalid_argument(std::string(what) + ": span too small");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept {
  static const Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return best;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) {
    throw std::invalid_argument("AVX2 kernels are not available on this build/CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

void gemm(std::size_t n, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c) {
  require_size(a.size(), n * n, "gemm");
  require_size(b.size(), n * n, "gemm");
  require_size(c.size(), n * n, "gemm");
#if defined(QDYN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::gemm(n, a.data(), b.data(), c.data());
#endif
  scalar::gemm(n, a.data(), b.data(), c.data());
}

void gemv(std::size_t n, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  require_size(a.size(), n * n, "gemv");
  require_size(x.size(), n, "gemv");
  require_size(y.size(), n, "gemv");
#if defined(QDYN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::gemv(n, a.data(), x.data(), y.data());
#endif
  scalar::gemv(n, a.data(), x.data(), y.data());
}

void hadamard(std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> out) {
  require_size(y.size(), x.size(), "hadamard");
  require_size(out.size(), x.size(), "hadamard");
#if defined(QDYN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::hadamard(x.size(), x.data(), y.data(), out.data());
#endif
  scalar::hadamard(x.size(), x.data(), y.data(), out.data());
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  require_size(y.size(), x.size(), "dotc");
#if defined(QDYN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::dotc(x.size(), x.data(), y.data());
#endif
  return scalar::dotc(x.size(), x.data(), y.data());
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> z) {
  require_size(z.size(), w.size(), "weighted_sum");
#if defined(QDYN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::weighted_sum(w.size(), w.data(), z.data());
#endif
  return scalar::weighted_sum(w.size(), w.data(), z.data());
}

}  // namespace qdyn::kernels
