#include "dpw/factorization.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dpw/errors.hpp"
#include "dpw/kernels.hpp"

namespace dpw {

namespace {

double max_norm(std::span<const Mat2> v) {
  double worst = 0.0;
  for (const Mat2& m : v) worst = std::max(worst, m.frobenius_norm());
  return worst;
}

Mat2 hermitian_part(const Mat2& m) { return (m + m.adjoint()) * 0.5; }

double min_eigenvalue(const Mat2& q) {
  const Mat2 h = hermitian_part(q);
  const double a = h.a11.real();
  const double d = h.a22.real();
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h.a12));
}

Pivots pivots_of(const Mat2& p, double scale) {
  const double p1 = p.a11.real();
  if (p1 == 0.0) return {0.0, 0.0};
  return {p1 / scale, (p.a22.real() - std::norm(p.a12) / p1) / scale};
}

// J = diag(1, s)
Mat2 apply_j(const Mat2& m, double s) { return {m.a11, m.a12, s * m.a21, s * m.a22}; }

// Block Levinson recursion for the sections T_N = [Q_{k-n}]_{k,n<N}.
// A solves T_N A = e_0 Pf (A_0 = id), Bk solves T_N Bk = e_{N-1} Pb
// (Bk_{N-1} = id). Entries are stored per matrix position so that the
// inner sums are plain complex dots.
class Levinson {
 public:
  explicit Levinson(std::span<const Mat2> q) {
    const auto coeffs = fourier::analyze(q);
    const std::size_t m = coeffs.size();
    double cmax = 0.0;
    for (const Mat2& c : coeffs) cmax = std::max(cmax, c.frobenius_norm());
    band_ = 0;
    for (std::size_t n = 1; n <= m / 2; ++n) {
      const double v = std::max(coeffs[n].frobenius_norm(), coeffs[m - n].frobenius_norm());
      if (v > 1e-16 * cmax) band_ = static_cast<int>(n);
    }
    // An even grid's Nyquist bin is shared equally by degrees +-m/2.
    const bool nyquist = m % 2 == 0 && 2 * static_cast<std::size_t>(band_) == m;
    for (int e = 0; e < 4; ++e) qrev_[e].assign(static_cast<std::size_t>(2 * band_ + 1), 0.0);
    for (int u = 0; u <= 2 * band_; ++u) {
      const int d = band_ - u;
      Mat2 c = coeffs[fourier::degree_bin(d, m)];
      if (nyquist && std::abs(d) == band_) c = c * 0.5;
      const cplx* src = &c.a11;
      for (int e = 0; e < 4; ++e) qrev_[e][static_cast<std::size_t>(u)] = src[e];
    }
    const Mat2 q0 = hermitian_part(coeffs[0]);
    pf_ = q0;
    pb_ = q0;
    for (int e = 0; e < 4; ++e) {
      const cplx v = (e == 0 || e == 3) ? 1.0 : 0.0;
      a_[e].assign(1, v);
      bk_[e].assign(1, v);
    }
  }

  int band() const { return band_; }
  int size() const { return static_cast<int>(a_[0].size()); }
  const Mat2& pf() const { return pf_; }
  const Mat2& pb() const { return pb_; }
  Mat2 a(int n) const {
    const auto i = static_cast<std::size_t>(n);
    return {a_[0][i], a_[1][i], a_[2][i], a_[3][i]};
  }

  void step() {
    const int m = size() - 1;
    Mat2 df, db;
    cplx* pdf = &df.a11;
    cplx* pdb = &db.a11;
    const int lo = std::max(0, m + 1 - band_);
    const auto flen = static_cast<std::size_t>(std::max(0, m - lo + 1));
    const int bhi = std::min(m, band_ - 1);
    const auto blen = static_cast<std::size_t>(std::max(0, bhi + 1));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        cplx sf = 0.0, sb = 0.0;
        for (int k = 0; k < 2; ++k) {
          const auto& q = qrev_[2 * i + k];
          if (flen > 0) {
            sf += kernels::dot({q.data() + (band_ - m - 1 + lo), flen},
                               {a_[2 * k + j].data() + lo, flen});
          }
          if (blen > 0) {
            sb += kernels::dot({q.data() + band_ + 1, blen}, {bk_[2 * k + j].data(), blen});
          }
        }
        pdf[2 * i + j] = sf;
        pdb[2 * i + j] = sb;
      }
    }
    const Mat2 gamma = pb_.inverse() * df;
    const Mat2 lambda = pf_.inverse() * db;
    const cplx* g = &gamma.a11;
    const cplx* l = &lambda.a11;
    for (int e = 0; e < 4; ++e) {
      a_[e].push_back(0.0);
      bk_[e].push_back(0.0);
    }
    for (int n = m + 1; n >= 0; --n) {
      const auto i = static_cast<std::size_t>(n);
      std::array<cplx, 4> an{}, bn{};
      for (int e = 0; e < 4; ++e) {
        an[static_cast<std::size_t>(e)] = a_[e][i];
        bn[static_cast<std::size_t>(e)] = n > 0 ? bk_[e][i - 1] : 0.0;
      }
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          const auto e = static_cast<std::size_t>(2 * r + c);
          a_[e][i] = an[e] - (bn[2 * r] * g[c] + bn[2 * r + 1] * g[2 + c]);
          bk_[e][i] = bn[e] - (an[2 * r] * l[c] + an[2 * r + 1] * l[2 + c]);
        }
      }
    }
    pf_ = hermitian_part(pf_ - db * gamma);
    pb_ = hermitian_part(pb_ - df * lambda);
  }

 private:
  int band_ = 0;
  std::array<std::vector<cplx>, 4> qrev_;  // qrev[e][u] = (Q_{band-u})_e
  std::array<std::vector<cplx>, 4> a_;
  std::array<std::vector<cplx>, 4> bk_;
  Mat2 pf_, pb_;
};

struct Outcome {
  SpectralFactor factor;
  CellReport report;
  bool factored = false;
};

// Upper triangular B0 with positive diagonal and B0^H J B0 = pf.
std::optional<Mat2> normalized_b0(const Mat2& pf, double s) {
  const double p1 = pf.a11.real();
  if (!(p1 > 0.0)) return std::nullopt;
  const double b11 = std::sqrt(p1);
  const cplx b12 = pf.a12 / b11;
  const double b22sq = s * (pf.a22.real() - std::norm(b12));
  if (!(b22sq > 0.0)) return std::nullopt;
  return Mat2{b11, b12, 0.0, std::sqrt(b22sq)};
}

void evaluate_factor(const Levinson& lev, const Mat2& b0, std::span<const Mat2> q, double s,
                     SpectralFactor& out) {
  const std::size_t m = q.size();
  const Mat2 b0_inv = b0.inverse();
  std::vector<Mat2> folded(m);
  for (int n = 0; n < lev.size(); ++n) folded[static_cast<std::size_t>(n) % m] += lev.a(n) * b0_inv;
  out.b_inv = fourier::synthesize(folded);
  out.b.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.b[i] = out.b_inv[i].inverse();
  out.b0 = b0;
  out.section = lev.size();
  std::vector<Mat2> jb(m), bjb(m);
  for (std::size_t i = 0; i < m; ++i) jb[i] = apply_j(out.b[i], s);
  kernels::mat2_adjoint_mul(out.b, jb, bjb);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, distance(bjb[i], q[i]));
  out.residual = worst / max_norm(q);
}

// s = +1 factors Q = B^H B (throws NotPositive), s = -1 factors
// Q = B^H J B and classifies the cell from the pivot signs.
Outcome factor(std::span<const Mat2> q, double s, const FactorizationOptions& o) {
  if (q.empty()) throw Error(ErrorKind::kInvalidArgument, "spectral factorization needs samples");
  const double scale = max_norm(q);
  if (scale == 0.0) throw Error(ErrorKind::kNotPositive, "Q vanishes on the circle");
  if (s > 0.0) {
    for (const Mat2& m : q) {
      if (min_eigenvalue(m) <= o.positivity_tol * scale) {
        throw Error(ErrorKind::kNotPositive, "Q is not positive definite on the circle");
      }
    }
  }
  Outcome out;
  Levinson lev(q);
  int target = std::clamp(4 * lev.band(), o.min_section, o.max_section);
  std::vector<Mat2> previous;

  auto check_pivots = [&]() {
    const Pivots p = pivots_of(lev.pf(), scale);
    out.report.pivots.push_back(p);
    if (s > 0.0) {
      if (p.first <= o.positivity_tol || p.second <= o.positivity_tol) {
        throw Error(ErrorKind::kNotPositive, "non-positive pivot in the Toeplitz section");
      }
      return true;
    }
    // Intermediate sections of an indefinite Q need not carry the J
    // signature; only singular pivots stop the recursion here.
    if (std::abs(p.first) < o.pivot_tol || std::abs(p.second) < o.pivot_tol ||
        std::abs(lev.pb().det()) < o.pivot_tol * scale * scale) {
      out.report.cell = Cell::kBoundary;
      return false;
    }
    return true;
  };

  if (!check_pivots()) return out;
  for (;;) {
    while (lev.size() < target) {
      lev.step();
      if (!check_pivots()) return out;
    }
    const auto b0 = normalized_b0(lev.pf(), s);
    if (!b0) {
      const Pivots p = out.report.pivots.back();
      out.report.cell = (p.first < 0.0 && p.second > 0.0) ? Cell::kB2 : Cell::kBoundary;
      return out;
    }
    evaluate_factor(lev, *b0, q, s, out.factor);
    double change = 0.0;
    if (!previous.empty()) {
      for (std::size_t i = 0; i < q.size(); ++i) change = std::max(change, distance(previous[i], out.factor.b[i]));
      change /= max_norm(out.factor.b);
    }
    const bool settled = !previous.empty() && change < o.settle_tol;
    if (out.factor.residual < o.residual_tol || settled || target >= o.max_section) break;
    previous = out.factor.b;
    target = std::min(2 * target, o.max_section);
  }
  out.report.cell = Cell::kB1;
  out.factored = true;
  return out;
}

CircleGrid grid_for(const LoopMatrix& l, const LoopOptions& lo) {
  const int d = l.is_zero() ? 0 : std::max(std::abs(l.min_degree()), std::abs(l.max_degree()));
  std::size_t m = std::max<std::size_t>(lo.grid, 8);
  while (!CircleGrid(m).resolves(-2 * d, 2 * d)) m *= 2;
  return CircleGrid(m);
}

double unitarity_defect(std::span<const Mat2> f, double s) {
  std::vector<Mat2> jf(f.size()), fjf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) jf[i] = apply_j(f[i], s);
  kernels::mat2_adjoint_mul(f, jf, fjf);
  const Mat2 j = Mat2::diag(1.0, s);
  double worst = 0.0;
  for (const Mat2& m : fjf) worst = std::max(worst, distance(m, j));
  return worst;
}

// Re-factor the nearly unitary F, which is well conditioned even when L is
// not, and fold the correction into B.
void refine(std::vector<Mat2>& f, std::vector<Mat2>& b, double s, const FactorizationOptions& o,
            double unitarity) {
  const std::size_t m = f.size();
  for (int pass = 0; pass < o.refine_passes && unitarity > o.refine_tol; ++pass) {
    std::vector<Mat2> jf(m), q(m);
    for (std::size_t i = 0; i < m; ++i) jf[i] = apply_j(f[i], s);
    kernels::mat2_adjoint_mul(f, jf, q);
    Outcome out = factor(q, s, o);
    if (!out.factored) return;
    std::vector<Mat2> nf(m), nb(m);
    kernels::mat2_mul(f, out.factor.b_inv, nf);
    kernels::mat2_mul(out.factor.b, b, nb);
    const double u = unitarity_defect(nf, s);
    if (!(u < unitarity)) return;
    f = std::move(nf);
    b = std::move(nb);
    unitarity = u;
  }
}

struct SampledSplit {
  std::vector<Mat2> f, b;
  Outcome outcome;
  double unitarity = 0.0;
};

SampledSplit split_samples(std::span<const Mat2> ls, double s, const FactorizationOptions& o) {
  const std::size_t m = ls.size();
  SampledSplit out;
  std::vector<Mat2> jl(m), q(m);
  for (std::size_t i = 0; i < m; ++i) jl[i] = apply_j(ls[i], s);
  kernels::mat2_adjoint_mul(ls, jl, q);
  out.outcome = factor(q, s, o);
  if (!out.outcome.factored) return out;
  out.f.resize(m);
  kernels::mat2_mul(ls, out.outcome.factor.b_inv, out.f);
  out.b = out.outcome.factor.b;
  refine(out.f, out.b, s, o, unitarity_defect(out.f, s));
  // The exact factors have det B = 1 (holomorphic, unimodular on the circle,
  // positive at 0), hence det F = det L; restore that to rounding.
  for (std::size_t i = 0; i < m; ++i) {
    const cplx ratio = out.f[i].det() / ls[i].det();
    if (std::abs(ratio - 1.0) > o.det_tol) continue;
    const cplx r = std::sqrt(ratio);
    out.f[i] = out.f[i] * (1.0 / r);
    out.b[i] = out.b[i] * r;
  }
  out.unitarity = unitarity_defect(out.f, s);
  return out;
}

// Largest coefficient of degree |d| >= M/4, relative to the largest; below
// that products of two such loops are still free of aliasing.
double spectral_tail(std::span<const Mat2> f) {
  const auto coeffs = fourier::analyze(f);
  const std::size_t m = coeffs.size();
  double top = 0.0, tail = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    const double v = coeffs[n].frobenius_norm();
    top = std::max(top, v);
    if (4 * static_cast<std::size_t>(std::abs(fourier::bin_degree(n, m))) >= m) tail = std::max(tail, v);
  }
  return top > 0.0 ? tail / top : 0.0;
}

// F = L B^{-1} carries the bands of both factors, so the grid that
// resolves L may alias F; refine it until F's spectrum has decayed.
template <class Sampler>
SampledSplit split_resolved(Sampler&& sample, std::size_t m, double s, const FactorizationOptions& o) {
  for (;;) {
    SampledSplit out = split_samples(sample(m), s, o);
    if (!out.outcome.factored || 2 * m > o.max_grid || spectral_tail(out.f) <= o.resolve_tol) return out;
    m *= 2;
  }
}

IwasawaPair split(const LoopMatrix& l, double s, const LoopOptions& lo, const FactorizationOptions& o,
                  CellReport* report) {
  const SampledSplit sp =
      split_resolved([&](std::size_t m) { return l.sample(CircleGrid(m)); }, grid_for(l, lo).size(), s, o);
  if (report) *report = sp.outcome.report;
  IwasawaPair pair;
  if (!sp.outcome.factored) return pair;
  pair.unitarity = sp.unitarity;
  pair.f = LoopMatrix::from_samples(sp.f, lo);
  pair.b = LoopMatrix::from_samples(sp.b, lo);
  pair.section = sp.outcome.factor.section;
  pair.residual = coefficient_distance(loop_mul(pair.f, pair.b, lo), l);
  return pair;
}

}  // namespace

SpectralFactor spectral_factor(std::span<const Mat2> q, const FactorizationOptions& options) {
  return factor(q, 1.0, options).factor;
}

LoopMatrix spectral_factorize(const LoopMatrix& q, const LoopOptions& loop_options,
                              const FactorizationOptions& options) {
  const CircleGrid grid = grid_for(q, loop_options);
  const auto samples = q.sample(grid);
  return LoopMatrix::from_samples(spectral_factor(samples, options).b, loop_options);
}

IwasawaSamples iwasawa_su2(std::span<const Mat2> l, const FactorizationOptions& options) {
  SampledSplit sp = split_resolved([&](std::size_t m) { return fourier::resample(l, m); }, l.size(), 1.0, options);
  IwasawaSamples out;
  out.f = std::move(sp.f);
  out.b = std::move(sp.b);
  out.unitarity = sp.unitarity;
  out.spectral_residual = sp.outcome.factor.residual;
  out.section = sp.outcome.factor.section;
  return out;
}

IwasawaPair iwasawa_su2(const LoopMatrix& l, const LoopOptions& loop_options, const FactorizationOptions& options) {
  return split(l, 1.0, loop_options, options, nullptr);
}

const char* cell_name(Cell cell) {
  switch (cell) {
    case Cell::kB1: return "B1";
    case Cell::kB2: return "B2";
    case Cell::kBoundary: return "boundary";
  }
  return "?";
}

Su11Result iwasawa_su11(const LoopMatrix& l, const LoopOptions& loop_options, const FactorizationOptions& options) {
  Su11Result r;
  IwasawaPair pair = split(l, -1.0, loop_options, options, &r.report);
  if (r.report.cell == Cell::kB1) r.pair = std::move(pair);
  return r;
}

const IwasawaPair& require_big_cell(const Su11Result& result) {
  switch (result.report.cell) {
    case Cell::kB1: return *result.pair;
    case Cell::kBoundary: throw Error(ErrorKind::kCellBoundary, "loop lies on a cell boundary");
    case Cell::kB2: break;
  }
  throw Error(ErrorKind::kNotInBigCell, "loop lies in cell B2");
}

}  // namespace dpw
