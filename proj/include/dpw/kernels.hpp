#pragma once

// Batched arithmetic over circle samples. Every kernel has a portable
// scalar reference in namespace `scalar`; on x86-64 an AVX2/FMA variant is
// compiled separately and chosen at startup when the CPU supports it.

#include <span>
#include <string_view>

#include "dpw/mat2.hpp"

namespace dpw::kernels {

enum class Isa { kScalar, kAvx2 };

/// Instruction set the dispatched entry points currently use.
Isa active_isa();
/// Best instruction set available on this machine and build.
Isa best_available_isa();
/// Overrides dispatch (tests use this to compare variants). Requesting an
/// unavailable ISA falls back to scalar. Not thread-safe against concurrent
/// kernel calls.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

// out[m] = a[m] * b[m]
void mat2_mul(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out);
// out[m] = a[m]^H * b[m]
void mat2_adjoint_mul(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out);
// out[m] = a[m] * b[m]^H
void mat2_mul_adjoint(std::span<const Mat2> a, std::span<const Mat2> b, std::span<Mat2> out);
// y[m] += s * x[m]
void mat2_axpy(cplx s, std::span<const Mat2> x, std::span<Mat2> y);
// sum_j x[j] * y[j]  (no conjugation)
cplx dot(std::span<const cplx> x, std::span<const cplx> y);

namespace scalar {
void mat2_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_adjoint_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_mul_adjoint(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_axpy(cplx s, const Mat2* x, Mat2* y, std::size_t n);
cplx dot(const cplx* x, const cplx* y, std::size_t n);
}  // namespace scalar

#if defined(DPW_HAVE_AVX2_KERNELS)
namespace avx2 {
void mat2_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_adjoint_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_mul_adjoint(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n);
void mat2_axpy(cplx s, const Mat2* x, Mat2* y, std::size_t n);
cplx dot(const cplx* x, const cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace dpw::kernels
