#include "dpw/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "dpw/errors.hpp"
#include "dpw/kernels.hpp"

namespace dpw {

PathSpec& PathSpec::line_to(cplx z) {
  segments_.push_back({Segment::Kind::kLine, end_, z, 0.0});
  end_ = end_.z == 0.0 ? ZPoint::principal(z) : ZPoint{z, end_.log_z + std::log(z / end_.z)};
  return *this;
}

PathSpec& PathSpec::arc(double sweep) {
  segments_.push_back({Segment::Kind::kArc, end_, 0.0, sweep});
  end_ = ZPoint::from_log(end_.log_z + cplx{0.0, sweep});
  return *this;
}

PathSpec PathSpec::loop(ZPoint start, int turns) {
  PathSpec p(start);
  for (int i = 0; i < turns; ++i) p.arc(2.0 * kPi);
  return p;
}

double PathSpec::clearance() const {
  double best = std::abs(start_.z);
  for (const auto& s : segments_) {
    if (s.kind == Segment::Kind::kArc) {
      best = std::min(best, std::abs(s.from.z));
      continue;
    }
    const cplx a = s.from.z, d = s.to - s.from.z;
    const double len2 = std::norm(d);
    double u = len2 > 0.0 ? -(std::conj(d) * a).real() / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    best = std::min(best, std::abs(a + u * d));
  }
  return best;
}

ZPoint PathSpec::point(std::size_t i, double s) const {
  const auto& seg = segments_[i];
  if (seg.kind == Segment::Kind::kArc) return ZPoint::from_log(seg.from.log_z + cplx{0.0, seg.sweep * s});
  const cplx z = seg.from.z + s * (seg.to - seg.from.z);
  // Starting at the origin only happens for potentials regular there.
  if (seg.from.z == 0.0) return ZPoint::principal(z);
  return ZPoint{z, seg.from.log_z + std::log(z / seg.from.z)};
}

cplx PathSpec::velocity(std::size_t i, double s) const {
  const auto& seg = segments_[i];
  if (seg.kind == Segment::Kind::kArc) return kI * seg.sweep * point(i, s).z;
  return seg.to - seg.from.z;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kE[7] = {71.0 / 57600,      0.0, -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

class BatchedStepper {
 public:
  BatchedStepper(const Potential& xi, const PathSpec& path, std::span<const cplx> lambdas)
      : xi_(xi), path_(path), lambdas_(lambdas), n_(lambdas.size()), rhs_(n_), stage_(n_), err_(n_) {
    for (auto& k : k_) k.resize(n_);
  }

  // Slopes dL/ds = L xi(z(s)) z'(s) for all lambdas.
  void slope(std::size_t seg, double s, std::span<const Mat2> y, std::span<Mat2> out) {
    const ZPoint z = path_.point(seg, s);
    const cplx v = path_.velocity(seg, s);
    for (std::size_t m = 0; m < n_; ++m) rhs_[m] = xi_(z, lambdas_[m]) * v;
    kernels::mat2_mul(y, rhs_, out);
  }

  // One trial step of size h from s; returns the scaled error norm and
  // writes the fifth-order update into y_new.
  double trial(std::size_t seg, double s, double h, std::span<const Mat2> y, std::span<Mat2> y_new,
               double tol, bool reuse_first) {
    if (!reuse_first) slope(seg, s, y, k_[0]);
    for (int i = 1; i < 7; ++i) {
      std::copy(y.begin(), y.end(), stage_.begin());
      for (int j = 0; j < i; ++j) {
        if (kA[i][j] != 0.0) kernels::mat2_axpy(h * kA[i][j], k_[j], stage_);
      }
      slope(seg, s + kC[i] * h, stage_, k_[i]);
    }
    // Stage 6 is evaluated at the fifth-order solution (FSAL).
    std::copy(stage_.begin(), stage_.end(), y_new.begin());
    std::fill(err_.begin(), err_.end(), Mat2::zero());
    for (int i = 0; i < 7; ++i) {
      if (kE[i] != 0.0) kernels::mat2_axpy(h * kE[i], k_[i], err_);
    }
    double worst = 0.0;
    for (std::size_t m = 0; m < n_; ++m) {
      const Mat2& e = err_[m];
      const Mat2& a = y[m];
      const Mat2& b = y_new[m];
      const cplx* pe = &e.a11;
      const cplx* pa = &a.a11;
      const cplx* pb = &b.a11;
      for (int q = 0; q < 4; ++q) {
        const double sc = tol * (1.0 + std::max(std::abs(pa[q]), std::abs(pb[q])));
        worst = std::max(worst, std::abs(pe[q]) / sc);
      }
    }
    return worst;
  }

  std::span<Mat2> last_slope() { return k_[6]; }
  std::span<Mat2> first_slope() { return k_[0]; }

 private:
  const Potential& xi_;
  const PathSpec& path_;
  std::span<const cplx> lambdas_;
  std::size_t n_;
  std::vector<Mat2> rhs_, stage_, err_;
  std::vector<Mat2> k_[7];
};

}  // namespace

IntegrationResult integrate(const Potential& xi, const PathSpec& path, std::span<const Mat2> initial,
                            std::span<const cplx> lambdas, const IntegratorOptions& options) {
  if (initial.size() != lambdas.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one initial value per lambda is required");
  }
  if (!xi.holomorphic_at_zero && path.clearance() < options.path_clearance) {
    throw Error(ErrorKind::kPathTooClose, "path passes within the clearance of z = 0");
  }
  IntegrationResult result;
  result.values.assign(initial.begin(), initial.end());
  result.end = path.end();
  const std::size_t n = lambdas.size();
  if (n == 0) return result;

  std::vector<cplx> det0(n);
  for (std::size_t m = 0; m < n; ++m) det0[m] = initial[m].det();

  BatchedStepper stepper(xi, path, lambdas);
  std::vector<Mat2> y_new(n);
  for (std::size_t seg = 0; seg < path.segments().size(); ++seg) {
    double s = 0.0;
    double h = options.h_init;
    bool have_first = false;
    while (s < 1.0) {
      h = std::min(h, 1.0 - s);
      if (h < options.h_min) throw Error(ErrorKind::kStepUnderflow, "step size underflow");
      const double err = stepper.trial(seg, s, h, result.values, y_new, options.tol, have_first);
      if (++result.steps > options.max_steps) throw Error(ErrorKind::kStepUnderflow, "step budget exhausted");
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        s = (1.0 - s <= h) ? 1.0 : s + h;
        result.values.swap(y_new);
        std::copy(stepper.last_slope().begin(), stepper.last_slope().end(), stepper.first_slope().begin());
        have_first = true;
        for (std::size_t m = 0; m < n; ++m) {
          result.det_drift = std::max(result.det_drift, std::abs(result.values[m].det() - det0[m]));
        }
      } else {
        ++result.rejected;
        have_first = true;  // the slope at s is unchanged
      }
      h *= factor;
    }
  }
  return result;
}

Mat2 integrate(const Potential& xi, const PathSpec& path, const Mat2& initial, cplx lambda,
               const IntegratorOptions& options) {
  const Mat2 init[1] = {initial};
  const cplx lam[1] = {lambda};
  return integrate(xi, path, init, lam, options).values[0];
}

MonodromyReport make_report(std::vector<Mat2> m) {
  MonodromyReport r;
  const std::size_t n = m.size();
  const CircleGrid grid(n);
  r.dm_dt = fourier::derivative_t(m);
  r.m = std::move(m);
  for (std::size_t i = 0; i < n; ++i) {
    r.t.push_back(grid.angle(i));
    r.lambda.push_back(grid.point(i));
    r.rho_plus.push_back(distance(r.m[i], Mat2::identity()));
    r.rho_minus.push_back(distance(r.m[i], -Mat2::identity()));
    r.trace.push_back(r.m[i].trace());
    r.max_det_defect = std::max(r.max_det_defect, std::abs(r.m[i].det() - 1.0));
  }
  return r;
}

MonodromyReport monodromy(const Potential& xi, const ZPoint& base, const CircleGrid& grid,
                          std::span<const Mat2> initial, const IntegratorOptions& options, int turns) {
  const PathSpec path = PathSpec::loop(base, turns);
  auto result = integrate(xi, path, initial, grid.points(), options);
  std::vector<Mat2> m(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) m[i] = result.values[i] * initial[i].inverse();
  MonodromyReport report = make_report(std::move(m));
  report.base = base;
  report.turns = turns;
  report.integration = std::move(result);
  return report;
}

ClosingResidual closing_residual(const MonodromyReport& report, std::size_t index) {
  return {report.rho_plus.at(index), report.rho_minus.at(index), report.dm_dt.at(index).frobenius_norm()};
}

void write_csv(std::ostream& os, const MonodromyReport& report) {
  os << "t,m11_re,m11_im,m12_re,m12_im,m21_re,m21_im,m22_re,m22_im,rho_plus,rho_minus,trace_re,trace_im,delta\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < report.size(); ++i) {
    const Mat2& m = report.m[i];
    os << report.t[i];
    for (const cplx v : {m.a11, m.a12, m.a21, m.a22}) os << ',' << v.real() << ',' << v.imag();
    os << ',' << report.rho_plus[i] << ',' << report.rho_minus[i] << ',' << report.trace[i].real() << ','
       << report.trace[i].imag() << ',' << report.dm_dt[i].frobenius_norm() << '\n';
  }
}

}  // namespace dpw
