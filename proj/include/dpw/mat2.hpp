#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace dpw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Complex 2x2 matrix stored row-major. The layout (four contiguous
/// std::complex<double>) is relied upon by the batched kernels.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
  static constexpr Mat2 offdiag(cplx u, cplx l) { return {0.0, u, l, 0.0}; }

  cplx det() const { return a11 * a22 - a12 * a21; }
  cplx trace() const { return a11 + a22; }
  Mat2 adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  // Inverse times det; equals the inverse for SL(2,C).
  Mat2 adjugate() const { return {a22, -a12, -a21, a11}; }
  Mat2 inverse() const {
    const cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
  double frobenius_norm() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
  }
  double max_abs() const {
    return std::fmax(std::fmax(std::abs(a11), std::abs(a12)),
                     std::fmax(std::abs(a21), std::abs(a22)));
  }
  bool is_diagonal(double tol) const { return std::abs(a12) <= tol && std::abs(a21) <= tol; }
  bool is_offdiagonal(double tol) const { return std::abs(a11) <= tol && std::abs(a22) <= tol; }

  Mat2& operator+=(const Mat2& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2& operator*=(cplx s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator-(const Mat2& a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline double distance(const Mat2& a, const Mat2& b) { return (a - b).frobenius_norm(); }

// Standard Pauli matrices.
inline constexpr Mat2 kSigma1{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 kSigma2{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
inline constexpr Mat2 kSigma3{1.0, 0.0, 0.0, -1.0};

/// exp(s * X) for X with X^2 = id (e.g. offdiag(1,1)).
inline Mat2 exp_involution(cplx s, const Mat2& x) {
  return std::cosh(s) * Mat2::identity() + std::sinh(s) * x;
}

/// exp(X) for traceless X, using X^2 = -det(X) id.
inline Mat2 exp_traceless(const Mat2& x) {
  const cplx mu = std::sqrt(-x.det());
  const cplx sinhc = std::abs(mu) < 1e-4 ? 1.0 + mu * mu / 6.0 + mu * mu * mu * mu / 120.0 : std::sinh(mu) / mu;
  return std::cosh(mu) * Mat2::identity() + sinhc * x;
}

std::ostream& operator<<(std::ostream& os, const Mat2& m);

}  // namespace dpw
