// Compiled with -mavx2 -mfma; only reached through runtime dispatch.

#include <immintrin.h>

#include "dpw/kernels.hpp"

namespace dpw::kernels::avx2 {
namespace {

// A register holds two interleaved complex doubles: [re0, im0, re1, im1].

inline __m256d broadcast(const cplx& s) {
  return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&s));
}

// s * v for broadcast complex s.
inline __m256d cmul(__m256d s, __m256d v) {
  const __m256d s_re = _mm256_permute_pd(s, 0x0);
  const __m256d s_im = _mm256_permute_pd(s, 0xF);
  const __m256d v_swap = _mm256_permute_pd(v, 0x5);
  return _mm256_fmaddsub_pd(s_re, v, _mm256_mul_pd(s_im, v_swap));
}

// conj(s) * v for broadcast complex s.
inline __m256d cmul_conj(__m256d s, __m256d v) {
  const __m256d s_re = _mm256_permute_pd(s, 0x0);
  const __m256d s_im = _mm256_permute_pd(s, 0xF);
  const __m256d v_swap = _mm256_permute_pd(v, 0x5);
  return _mm256_fmsubadd_pd(s_re, v, _mm256_mul_pd(s_im, v_swap));
}

inline __m256d row0(const Mat2& m) { return _mm256_loadu_pd(reinterpret_cast<const double*>(&m.a11)); }
inline __m256d row1(const Mat2& m) { return _mm256_loadu_pd(reinterpret_cast<const double*>(&m.a21)); }
inline void store(Mat2& m, __m256d r0, __m256d r1) {
  _mm256_storeu_pd(reinterpret_cast<double*>(&m.a11), r0);
  _mm256_storeu_pd(reinterpret_cast<double*>(&m.a21), r1);
}

}  // namespace

void mat2_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) {
    const __m256d b0 = row0(b[m]);
    const __m256d b1 = row1(b[m]);
    const __m256d c0 = _mm256_add_pd(cmul(broadcast(a[m].a11), b0), cmul(broadcast(a[m].a12), b1));
    const __m256d c1 = _mm256_add_pd(cmul(broadcast(a[m].a21), b0), cmul(broadcast(a[m].a22), b1));
    store(out[m], c0, c1);
  }
}

void mat2_adjoint_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) {
    const __m256d b0 = row0(b[m]);
    const __m256d b1 = row1(b[m]);
    const __m256d c0 =
        _mm256_add_pd(cmul_conj(broadcast(a[m].a11), b0), cmul_conj(broadcast(a[m].a21), b1));
    const __m256d c1 =
        _mm256_add_pd(cmul_conj(broadcast(a[m].a12), b0), cmul_conj(broadcast(a[m].a22), b1));
    store(out[m], c0, c1);
  }
}

void mat2_mul_adjoint(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const __m256d b0 = row0(b[m]);
    const __m256d b1 = row1(b[m]);
    // Rows of b^H: [conj b11, conj b21] and [conj b12, conj b22].
    const __m256d h0 = _mm256_xor_pd(_mm256_permute2f128_pd(b0, b1, 0x20), conj_mask);
    const __m256d h1 = _mm256_xor_pd(_mm256_permute2f128_pd(b0, b1, 0x31), conj_mask);
    const __m256d c0 = _mm256_add_pd(cmul(broadcast(a[m].a11), h0), cmul(broadcast(a[m].a12), h1));
    const __m256d c1 = _mm256_add_pd(cmul(broadcast(a[m].a21), h0), cmul(broadcast(a[m].a22), h1));
    store(out[m], c0, c1);
  }
}

void mat2_axpy(cplx s, const Mat2* x, Mat2* y, std::size_t n) {
  const __m256d sv = broadcast(s);
  for (std::size_t m = 0; m < n; ++m) {
    const __m256d y0 = _mm256_add_pd(row0(y[m]), cmul(sv, row0(x[m])));
    const __m256d y1 = _mm256_add_pd(row1(y[m]), cmul(sv, row1(x[m])));
    store(y[m], y0, y1);
  }
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * j);
    acc_re = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x0), acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc_im);
  }
  const __m256d r = _mm256_addsub_pd(acc_re, acc_im);
  alignas(32) double buf[4];
  _mm256_store_pd(buf, r);
  cplx sum{buf[0] + buf[2], buf[1] + buf[3]};
  for (; j < n; ++j) {
    sum += cplx{x[j].real() * y[j].real() - x[j].imag() * y[j].imag(),
                x[j].real() * y[j].imag() + x[j].imag() * y[j].real()};
  }
  return sum;
}

}  // namespace dpw::kernels::avx2
