#include "dpw/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "dpw/errors.hpp"

namespace dpw {

CircleGrid::CircleGrid(std::size_t size) : size_(size), points_(size) {
  for (std::size_t m = 0; m < size; ++m) points_[m] = std::polar(1.0, angle(m));
}

namespace fourier {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (length, batch, sign) and kept for
// the lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int howmany, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, howmany, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n * static_cast<std::size_t>(howmany));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    fftw_plan plan = fftw_plan_many_dft(1, &len, howmany, buf, nullptr, howmany, 1, buf, nullptr,
                                        howmany, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run_in_place(cplx* data, std::size_t n, int howmany, int sign) {
  if (n == 0) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(n, howmany, sign), buf, buf);
}

template <class T>
std::vector<T> derivative_impl(std::span<const T> samples) {
  const std::size_t n = samples.size();
  auto coeffs = analyze(samples);
  for (std::size_t k = 0; k < n; ++k) {
    const bool nyquist = (n % 2 == 0) && k == n / 2;
    const double deg = nyquist ? 0.0 : static_cast<double>(bin_degree(k, n));
    coeffs[k] = coeffs[k] * cplx{0.0, deg};
  }
  if constexpr (std::is_same_v<T, Mat2>) {
    return synthesize(coeffs);
  } else {
    std::vector<cplx> out(coeffs);
    run_in_place(out.data(), n, 1, FFTW_BACKWARD);
    return out;
  }
}

}  // namespace

std::vector<Mat2> analyze(std::span<const Mat2> samples) {
  std::vector<Mat2> out(samples.begin(), samples.end());
  run_in_place(reinterpret_cast<cplx*>(out.data()), out.size(), 4, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& m : out) m *= scale;
  return out;
}

std::vector<cplx> analyze(std::span<const cplx> samples) {
  std::vector<cplx> out(samples.begin(), samples.end());
  run_in_place(out.data(), out.size(), 1, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<Mat2> synthesize(std::span<const Mat2> coefficients) {
  std::vector<Mat2> out(coefficients.begin(), coefficients.end());
  run_in_place(reinterpret_cast<cplx*>(out.data()), out.size(), 4, FFTW_BACKWARD);
  return out;
}

std::vector<Mat2> resample(std::span<const Mat2> samples, std::size_t size) {
  const std::size_t m = samples.size();
  if (size < m) throw Error(ErrorKind::kInvalidArgument, "resample cannot reduce the grid");
  if (size == m) return {samples.begin(), samples.end()};
  const auto coeffs = analyze(samples);
  std::vector<Mat2> bins(size);
  for (std::size_t n = 0; n < m; ++n) {
    if (m % 2 == 0 && 2 * n == m) {
      const int d = static_cast<int>(n);
      bins[degree_bin(d, size)] += coeffs[n] * 0.5;
      bins[degree_bin(-d, size)] += coeffs[n] * 0.5;
    } else {
      bins[degree_bin(bin_degree(n, m), size)] += coeffs[n];
    }
  }
  return synthesize(bins);
}

std::vector<Mat2> derivative_t(std::span<const Mat2> samples) { return derivative_impl(samples); }
std::vector<cplx> derivative_t(std::span<const cplx> samples) { return derivative_impl(samples); }

}  // namespace fourier
}  // namespace dpw
