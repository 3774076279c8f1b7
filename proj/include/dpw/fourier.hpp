#pragma once

// Transforms between equally spaced samples on the unit circle and Laurent
// coefficients, backed by FFTW.

#include <cstddef>
#include <span>
#include <vector>

#include "dpw/mat2.hpp"

namespace dpw {

/// M equally spaced points e^{i 2 pi m / M} on the unit circle.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t size);

  std::size_t size() const { return size_; }
  double angle(std::size_t m) const { return 2.0 * kPi * static_cast<double>(m) / size_; }
  cplx point(std::size_t m) const { return points_[m]; }
  const std::vector<cplx>& points() const { return points_; }
  /// True when a band of degrees [min_deg, max_deg] is recoverable without aliasing.
  bool resolves(int min_deg, int max_deg) const {
    return size_ >= static_cast<std::size_t>(2 * (max_deg - min_deg) + 2);
  }
  bool operator==(const CircleGrid& o) const { return size_ == o.size_; }

 private:
  std::size_t size_;
  std::vector<cplx> points_;
};

namespace fourier {

/// Coefficients c_n (n = 0..M-1, index n stands for degree n or n - M) of
/// the trigonometric interpolant of the samples: c_n = (1/M) sum_m s_m e^{-i 2 pi m n / M}.
std::vector<Mat2> analyze(std::span<const Mat2> samples);
std::vector<cplx> analyze(std::span<const cplx> samples);

/// Inverse of analyze: s_m = sum_n c_n e^{i 2 pi m n / M}.
std::vector<Mat2> synthesize(std::span<const Mat2> coefficients);

/// Degree represented by FFT bin n for an M-point grid (symmetric range,
/// bin M/2 maps to -M/2).
inline int bin_degree(std::size_t n, std::size_t size) {
  return n < (size + 1) / 2 ? static_cast<int>(n) : static_cast<int>(n) - static_cast<int>(size);
}
inline std::size_t degree_bin(int degree, std::size_t size) {
  const auto m = static_cast<long>(size);
  return static_cast<std::size_t>(((degree % m) + m) % m);
}

/// Samples of the same trigonometric interpolant on a finer grid of the
/// given size (size >= samples.size()); an even grid's Nyquist mode is
/// split equally between degrees +-M/2.
std::vector<Mat2> resample(std::span<const Mat2> samples, std::size_t size);

/// d/dt of the sampled function f(e^{it}) by spectral differentiation; the
/// Nyquist mode is dropped.
std::vector<Mat2> derivative_t(std::span<const Mat2> samples);
std::vector<cplx> derivative_t(std::span<const cplx> samples);

}  // namespace fourier
}  // namespace dpw
