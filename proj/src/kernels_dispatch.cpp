#include <atomic>
#include <cassert>

#include "dpw/kernels.hpp"

namespace dpw::kernels {
namespace {

Isa detect() {
#if defined(DPW_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa best_available_isa() {
  static const Isa best = detect();
  return best;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::kAvx2 && best_available_isa() != Isa::kAvx2) isa = Isa::kScalar;
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void mat2_mul(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out) {
  assert(a.size() == b.size() && a.size() == out.size());
#if defined(DPW_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return avx2::mat2_mul(a.data(), b.data(), out.data(), a.size());
#endif
  scalar::mat2_mul(a.data(), b.data(), out.data(), a.size());
}

void mat2_adjoint_mul(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out) {
  assert(a.size() == b.size() && a.size() == out.size());
#if defined(DPW_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) {
    return avx2::mat2_adjoint_mul(a.data(), b.data(), out.data(), a.size());
  }
#endif
  scalar::mat2_adjoint_mul(a.data(), b.data(), out.data(), a.size());
}

void mat2_mul_adjoint(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out) {
  assert(a.size() == b.size() && a.size() == out.size());
#if defined(DPW_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) {
    return avx2::mat2_mul_adjoint(a.data(), b.data(), out.data(), a.size());
  }
#endif
  scalar::mat2_mul_adjoint(a.data(), b.data(), out.data(), a.size());
}

void mat2_axpy(cplx s, std::span<const Mat2> x, std::span<Mat2> y) {
  assert(x.size() == y.size());
#if defined(DPW_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return avx2::mat2_axpy(s, x.data(), y.data(), x.size());
#endif
  scalar::mat2_axpy(s, x.data(), y.data(), x.size());
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
#if defined(DPW_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return avx2::dot(x.data(), y.data(), x.size());
#endif
  return scalar::dot(x.data(), y.data(), x.size());
}

}  // namespace dpw::kernels
