#include "dpw/loop_matrix.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dpw/errors.hpp"
#include "dpw/kernels.hpp"

namespace dpw {

LoopMatrix::LoopMatrix(const Mat2& constant) : min_deg_(0), coeffs_{constant} {}

LoopMatrix::LoopMatrix(int min_degree, std::vector<Mat2> coefficients)
    : min_deg_(min_degree), coeffs_(std::move(coefficients)) {}

LoopMatrix LoopMatrix::monomial(int degree, const Mat2& coefficient) {
  return LoopMatrix(degree, {coefficient});
}

LoopMatrix LoopMatrix::from_samples(std::span<const Mat2> samples, const LoopOptions& options) {
  const std::size_t n = samples.size();
  auto bins = fourier::analyze(samples);
  const int half = static_cast<int>(n / 2);
  const int lo = std::max(-options.band, -half + (n % 2 == 0 ? 1 : 0));
  const int hi = std::min(options.band, static_cast<int>((n - 1) / 2));
  double discarded = 0.0;
  std::vector<Mat2> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int d = lo; d <= hi; ++d) coeffs.push_back(bins[fourier::degree_bin(d, n)]);
  for (std::size_t k = 0; k < n; ++k) {
    const int d = fourier::bin_degree(k, n);
    const bool nyquist = (n % 2 == 0) && k == n / 2;
    if (d < lo || d > hi || nyquist) discarded += bins[k].frobenius_norm();
  }
  LoopMatrix out(lo, std::move(coeffs));
  out.prune(options.drop_tol);
  out.tail_ += discarded;
  out.samples_.assign(samples.begin(), samples.end());
  return out;
}

Mat2 LoopMatrix::coefficient(int degree) const {
  const int idx = degree - min_deg_;
  if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return Mat2::zero();
  return coeffs_[static_cast<std::size_t>(idx)];
}

std::vector<Mat2> LoopMatrix::sample(const CircleGrid& grid) const {
  if (samples_.size() == grid.size()) return samples_;
  std::vector<Mat2> bins(grid.size(), Mat2::zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    bins[fourier::degree_bin(min_deg_ + static_cast<int>(i), grid.size())] += coeffs_[i];
  }
  return fourier::synthesize(bins);
}

Mat2 LoopMatrix::eval(cplx lambda) const {
  if (coeffs_.empty()) return Mat2::zero();
  // Horner in lambda on the stored block, then shift by lambda^min_deg.
  Mat2 acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * lambda + coeffs_[i];
  return acc * std::pow(lambda, min_deg_);
}

double LoopMatrix::twist_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Mat2& c = coeffs_[i];
    const bool even = ((min_deg_ + static_cast<int>(i)) % 2) == 0;
    if (even) {
      worst = std::max({worst, std::abs(c.a12), std::abs(c.a21)});
    } else {
      worst = std::max({worst, std::abs(c.a11), std::abs(c.a22)});
    }
  }
  return worst;
}

LoopMatrix LoopMatrix::project_twisted() const {
  LoopMatrix out(min_deg_, coeffs_);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    Mat2& c = out.coeffs_[i];
    if (((min_deg_ + static_cast<int>(i)) % 2) == 0) {
      c.a12 = c.a21 = 0.0;
    } else {
      c.a11 = c.a22 = 0.0;
    }
  }
  out.tail_ = tail_;
  return out;
}

LoopMatrix& LoopMatrix::operator+=(const LoopMatrix& o) {
  if (o.coeffs_.empty()) return *this;
  if (coeffs_.empty()) {
    min_deg_ = o.min_deg_;
    coeffs_ = o.coeffs_;
    samples_.clear();
    return *this;
  }
  const int lo = std::min(min_deg_, o.min_deg_);
  const int hi = std::max(max_degree(), o.max_degree());
  std::vector<Mat2> sum(static_cast<std::size_t>(hi - lo + 1), Mat2::zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) sum[i + (min_deg_ - lo)] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) sum[i + (o.min_deg_ - lo)] += o.coeffs_[i];
  min_deg_ = lo;
  coeffs_ = std::move(sum);
  samples_.clear();
  return *this;
}

LoopMatrix& LoopMatrix::operator-=(const LoopMatrix& o) {
  LoopMatrix neg = o;
  neg *= -1.0;
  return *this += neg;
}

LoopMatrix& LoopMatrix::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  for (auto& c : samples_) c *= s;
  return *this;
}

void LoopMatrix::prune(double tol) {
  for (auto& c : coeffs_) {
    const double nrm = c.frobenius_norm();
    if (nrm < tol && nrm > 0.0) {
      tail_ += nrm;
      c = Mat2::zero();
    }
  }
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](const Mat2& c) { return c.frobenius_norm() > 0.0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    min_deg_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                           [](const Mat2& c) { return c.frobenius_norm() > 0.0; });
  min_deg_ += static_cast<int>(first - coeffs_.begin());
  coeffs_ = std::vector<Mat2>(first, last.base());
}

LoopMatrix loop_mul(const LoopMatrix& a, const LoopMatrix& b, const LoopOptions& options) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  const int lo = a.min_degree() + b.min_degree();
  std::vector<Mat2> prod(ca.size() + cb.size() - 1, Mat2::zero());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) prod[i + j] += ca[i] * cb[j];
  }
  double discarded = 0.0;
  std::vector<Mat2> kept;
  const int keep_lo = std::max(lo, -options.band);
  const int keep_hi = std::min(lo + static_cast<int>(prod.size()) - 1, options.band);
  for (std::size_t k = 0; k < prod.size(); ++k) {
    const int d = lo + static_cast<int>(k);
    if (d < keep_lo || d > keep_hi) discarded += prod[k].frobenius_norm();
  }
  if (keep_lo > keep_hi) {
    LoopMatrix zero;
    zero.record_tail(discarded);
    return zero;
  }
  kept.assign(prod.begin() + (keep_lo - lo), prod.begin() + (keep_hi - lo) + 1);
  LoopMatrix out(keep_lo, std::move(kept));
  out.prune(options.drop_tol);
  out.record_tail(discarded);
  return out;
}

LoopMatrix loop_inverse(const LoopMatrix& a, const LoopOptions& options) {
  const CircleGrid grid(options.grid);
  auto samples = a.sample(grid);
  for (auto& s : samples) {
    if (std::abs(s.det()) < 1e-13) {
      throw Error(ErrorKind::kSingularOnCircle, "loop is singular at a circle sample");
    }
    s = s.inverse();
  }
  return LoopMatrix::from_samples(samples, options);
}

LoopMatrix loop_star(const LoopMatrix& a) {
  if (a.is_zero()) return {};
  const auto c = a.coefficients();
  std::vector<Mat2> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[c.size() - 1 - i] = c[i].adjoint();
  return LoopMatrix(-a.max_degree(), std::move(out));
}

LoopMatrix lambda_derivative(const LoopMatrix& a) {
  if (a.is_zero()) return {};
  const auto c = a.coefficients();
  std::vector<Mat2> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = c[i] * static_cast<double>(a.min_degree() + static_cast<int>(i));
  }
  LoopMatrix d(a.min_degree() - 1, std::move(out));
  d.prune(0.0);
  return d;
}

double coefficient_distance(const LoopMatrix& a, const LoopMatrix& b) {
  const int lo = std::min(a.min_degree(), b.min_degree());
  const int hi = std::max(a.max_degree(), b.max_degree());
  double worst = 0.0;
  for (int d = lo; d <= hi; ++d) worst = std::max(worst, distance(a.coefficient(d), b.coefficient(d)));
  return worst;
}

double sample_distance(const LoopMatrix& a, const LoopMatrix& b, const CircleGrid& grid) {
  const auto sa = a.sample(grid);
  const auto sb = b.sample(grid);
  double worst = 0.0;
  for (std::size_t m = 0; m < sa.size(); ++m) worst = std::max(worst, distance(sa[m], sb[m]));
  return worst;
}

void write_coefficients(std::ostream& os, const LoopMatrix& a) {
  const auto c = a.coefficients();
  std::ostringstream line;
  line << std::setprecision(17);
  for (std::size_t i = 0; i < c.size(); ++i) {
    line.str("");
    line << a.min_degree() + static_cast<int>(i);
    for (const cplx v : {c[i].a11, c[i].a12, c[i].a21, c[i].a22}) {
      line << ' ' << v.real() << ' ' << v.imag();
    }
    os << line.str() << '\n';
  }
}

LoopMatrix read_coefficients(std::istream& is) {
  std::vector<std::pair<int, Mat2>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream in(line);
    int degree = 0;
    double v[8];
    in >> degree;
    for (double& x : v) in >> x;
    if (!in) {
      throw Error(ErrorKind::kParse, "bad coefficient line " + std::to_string(lineno));
    }
    entries.emplace_back(degree, Mat2{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}});
  }
  if (entries.empty()) return {};
  std::sort(entries.begin(), entries.end(), [](auto& x, auto& y) { return x.first < y.first; });
  const int lo = entries.front().first;
  std::vector<Mat2> coeffs(static_cast<std::size_t>(entries.back().first - lo + 1), Mat2::zero());
  for (auto& [d, m] : entries) coeffs[static_cast<std::size_t>(d - lo)] += m;
  return LoopMatrix(lo, std::move(coeffs));
}

}  // namespace dpw
