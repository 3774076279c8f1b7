#pragma once

// Twisted SL(2,C) loops: 2x2 complex matrix Laurent polynomials in lambda,
// with an optional cache of values on a CircleGrid.
//
// Algebra (products, star, derivative) works on coefficients. Inversion
// works on circle samples and recovers coefficients with an FFT, since the
// inverse of a Laurent polynomial generally has infinite support.

#include <iosfwd>
#include <span>
#include <vector>

#include "dpw/fourier.hpp"
#include "dpw/mat2.hpp"

namespace dpw {

struct LoopOptions {
  int band = 32;               // keep degrees in [-band, band]
  std::size_t grid = 256;      // circle samples used by sample-space operations
  double drop_tol = 1e-14;     // coefficients with smaller Frobenius norm are dropped
};

class LoopMatrix {
 public:
  LoopMatrix() = default;  // the zero loop
  explicit LoopMatrix(const Mat2& constant);
  LoopMatrix(int min_degree, std::vector<Mat2> coefficients);

  static LoopMatrix identity() { return LoopMatrix(Mat2::identity()); }
  static LoopMatrix monomial(int degree, const Mat2& coefficient);
  /// Recovers coefficients from values on an M-point circle grid; the
  /// samples are retained. Degrees outside the band and coefficients below
  /// drop_tol are discarded and their norm accumulated in tail().
  static LoopMatrix from_samples(std::span<const Mat2> samples, const LoopOptions& options = {});

  bool is_zero() const { return coeffs_.empty(); }
  int min_degree() const { return min_deg_; }
  int max_degree() const { return min_deg_ + static_cast<int>(coeffs_.size()) - 1; }
  Mat2 coefficient(int degree) const;
  std::span<const Mat2> coefficients() const { return coeffs_; }

  /// Norm of what the constructing operation discarded.
  double tail() const { return tail_; }
  void record_tail(double mass) { tail_ += mass; }

  bool has_samples() const { return !samples_.empty(); }
  std::span<const Mat2> cached_samples() const { return samples_; }
  /// Values on the grid; served from the cache when the grid matches.
  std::vector<Mat2> sample(const CircleGrid& grid) const;

  Mat2 eval(cplx lambda) const;

  /// Largest entry that violates the twisted parity pattern (even degrees
  /// diagonal, odd degrees off-diagonal).
  double twist_defect() const;
  bool is_twisted(double tol = 1e-12) const { return twist_defect() <= tol; }
  /// Zeroes entries of the wrong parity.
  LoopMatrix project_twisted() const;

  LoopMatrix& operator+=(const LoopMatrix& o);
  LoopMatrix& operator-=(const LoopMatrix& o);
  LoopMatrix& operator*=(cplx s);

  /// Drops coefficients below tol, trims the ends and records the mass.
  void prune(double tol);

 private:
  int min_deg_ = 0;
  std::vector<Mat2> coeffs_;
  double tail_ = 0.0;
  std::vector<Mat2> samples_;
};

inline LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b) { return a += b; }
inline LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b) { return a -= b; }
inline LoopMatrix operator*(cplx s, LoopMatrix a) { return a *= s; }

/// Cauchy product, truncated to [-band, band] with tail reported.
LoopMatrix loop_mul(const LoopMatrix& a, const LoopMatrix& b, const LoopOptions& options = {});
inline LoopMatrix operator*(const LoopMatrix& a, const LoopMatrix& b) { return loop_mul(a, b); }

/// Pointwise inverse on the grid followed by coefficient recovery.
/// Throws SingularOnCircle if some sample has |det| < 1e-13.
LoopMatrix loop_inverse(const LoopMatrix& a, const LoopOptions& options = {});

inline Mat2 loop_eval(const LoopMatrix& a, cplx lambda) { return a.eval(lambda); }

/// Coefficient n of the result is the adjoint of coefficient -n; on the
/// unit circle this is the pointwise conjugate transpose.
LoopMatrix loop_star(const LoopMatrix& a);

/// d/d lambda, exact on coefficients.
LoopMatrix lambda_derivative(const LoopMatrix& a);

/// Largest coefficient-wise Frobenius distance.
double coefficient_distance(const LoopMatrix& a, const LoopMatrix& b);
/// Largest Frobenius distance over the grid samples.
double sample_distance(const LoopMatrix& a, const LoopMatrix& b, const CircleGrid& grid);

/// Text dump: one line per stored degree, "degree re11 im11 re12 im12 re21 im21 re22 im22".
void write_coefficients(std::ostream& os, const LoopMatrix& a);
LoopMatrix read_coefficients(std::istream& is);

}  // namespace dpw
