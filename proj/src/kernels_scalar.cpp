#include "dpw/kernels.hpp"

#include <ostream>

namespace dpw {

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22 << "]]";
}

}  // namespace dpw

namespace dpw::kernels::scalar {

void mat2_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) out[m] = a[m] * b[m];
}

void mat2_adjoint_mul(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) out[m] = a[m].adjoint() * b[m];
}

void mat2_mul_adjoint(const Mat2* a, const Mat2* b, Mat2* out, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) out[m] = a[m] * b[m].adjoint();
}

void mat2_axpy(cplx s, const Mat2* x, Mat2* y, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) y[m] += s * x[m];
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  // Split real/imaginary accumulation; std::complex operator* adds NaN
  // recovery branches that are dead weight here.
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += x[j].real() * y[j].real() - x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() + x[j].imag() * y[j].real();
  }
  return {re, im};
}

}  // namespace dpw::kernels::scalar
