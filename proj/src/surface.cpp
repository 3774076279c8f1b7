#include "dpw/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>

#include "dpw/errors.hpp"
#include "dpw/frobenius.hpp"
#include "dpw/kernels.hpp"

namespace dpw {

namespace {

using Frames = std::vector<Mat2>;

struct State {
  ZPoint z;
  Frames l;
};

class Marcher {
 public:
  Marcher(const Potential& xi, const SurfaceOptions& options)
      : xi_(xi), options_(options), lambdas_(CircleGrid(options.lambda_grid).points()) {}

  const std::vector<cplx>& lambdas() const { return lambdas_; }

  State start(const InitialData& init) const {
    Frames l(lambdas_.size());
    for (std::size_t m = 0; m < l.size(); ++m) l[m] = init.value(lambdas_[m]);
    return {init.base, std::move(l)};
  }

  State line(const State& s, cplx to) const {
    if (std::abs(to - s.z.z) <= 1e-15 * std::max(1.0, std::abs(to))) return s;
    PathSpec path(s.z);
    path.line_to(to);
    return run(s, path);
  }

  State arc(const State& s, double sweep) const {
    if (std::abs(s.z.z) == 0.0 || sweep == 0.0) return s;
    PathSpec path(s.z);
    path.arc(sweep);
    return run(s, path);
  }

 private:
  State run(const State& s, const PathSpec& path) const {
    auto r = integrate(xi_, path, s.l, lambdas_, options_.integrator);
    return {r.end, std::move(r.values)};
  }

  const Potential& xi_;
  const SurfaceOptions& options_;
  std::vector<cplx> lambdas_;
};

Frames unitary_part(const Frames& l, const FactorizationOptions& options) { return iwasawa_su2(l, options).f; }

LoopOptions frame_loop_options(std::size_t m) {
  LoopOptions lo;
  lo.grid = m;
  lo.band = static_cast<int>(m / 2);
  lo.drop_tol = 1e-12;  // frames are unitary; smaller coefficients are factorization noise
  return lo;
}

// Frames at (u_i, v_0) for every i.
std::vector<State> row_starts(const Marcher& marcher, const DomainGrid& grid, const InitialData& init) {
  std::vector<State> out;
  State s = marcher.line(marcher.start(init), grid.point(0, 0));
  out.push_back(s);
  for (int i = 1; i < grid.n_u(); ++i) {
    s = marcher.line(s, grid.point(i, 0));
    out.push_back(s);
  }
  return out;
}

std::array<double, 3> as_array(const AmbientPoint& p) { return {p.x1, p.x2, p.x3}; }

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

DomainGrid::DomainGrid(Kind kind, double u0, double u1, double v0, double v1, int n_u, int n_v)
    : kind_(kind), u0_(u0), u1_(u1), v0_(v0), v1_(v1), n_u_(n_u), n_v_(n_v) {
  if (n_u < 2 || n_v < 2) throw Error(ErrorKind::kInvalidArgument, "grid needs at least 2 x 2 samples");
  if (!(u1 > u0) || !(v1 > v0)) throw Error(ErrorKind::kInvalidArgument, "grid ranges must be increasing");
}

DomainGrid DomainGrid::annulus(double r0, double r1, int n_r, int n_theta, double theta_span, double theta0) {
  if (!(r0 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "annulus needs r0 > 0");
  return DomainGrid(Kind::kAnnulus, r0, r1, theta0, theta0 + theta_span, n_r, n_theta);
}

DomainGrid DomainGrid::disk(double r1, int n_r, int n_theta, double theta_span) {
  return DomainGrid(Kind::kDisk, 0.0, r1, 0.0, theta_span, n_r, n_theta);
}

DomainGrid DomainGrid::rectangle(double x0, double x1, double y0, double y1, int n_x, int n_y) {
  return DomainGrid(Kind::kRectangle, x0, x1, y0, y1, n_x, n_y);
}

double DomainGrid::u(int i) const { return i == n_u_ - 1 ? u1_ : u0_ + du() * i; }
double DomainGrid::v(int j) const { return j == n_v_ - 1 ? v1_ : v0_ + dv() * j; }

cplx DomainGrid::point(int i, int j) const {
  if (kind_ == Kind::kRectangle) return {u(i), v(j)};
  return std::polar(u(i), v(j));
}

bool DomainGrid::closed_seam() const {
  return kind_ != Kind::kRectangle && std::abs(v1_ - v0_ - 2.0 * kPi) < 1e-12;
}

InitialData InitialData::identity_at(ZPoint base) {
  return {base, [](cplx) { return Mat2::identity(); }, "id"};
}

InitialData InitialData::frobenius(cplx c, ZPoint base) {
  auto sol = std::make_shared<FrobeniusSolution>(build_frobenius(c, 2));
  return {base, [sol, base](cplx lambda) { return sol->l_tilde_value(base, lambda); }, "frobenius"};
}

double SurfaceMesh::max_seam_defect() const {
  double worst = 0.0;
  for (double d : seam_defect) worst = std::max(worst, d);
  return worst;
}

LoopMatrix FrameField::frame(int i, int j) const {
  const auto& samples = f[static_cast<std::size_t>(i * grid.n_v() + j)];
  return LoopMatrix::from_samples(samples, frame_loop_options(samples.size()));
}

FrameField compute_frames(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                          const SurfaceOptions& options) {
  const Marcher marcher(xi, options);
  FrameField out{grid, CircleGrid(options.lambda_grid), {}};
  out.f.resize(static_cast<std::size_t>(grid.n_u() * grid.n_v()));
  const auto starts = row_starts(marcher, grid, init);
  for (int i = 0; i < grid.n_u(); ++i) {
    State s = starts[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid.n_v(); ++j) {
      if (j > 0) {
        s = grid.kind() == DomainGrid::Kind::kRectangle ? marcher.line(s, grid.point(i, j))
                                                        : marcher.arc(s, grid.v(j) - grid.v(j - 1));
      }
      out.f[static_cast<std::size_t>(i * grid.n_v() + j)] = unitary_part(s.l, options.factorization);
    }
  }
  return out;
}

SurfaceMesh sym_mesh(const FrameField& frames, double h, cplx lambda0, const std::string& descriptor) {
  const DomainGrid& grid = frames.grid;
  SurfaceMesh mesh{grid, {}, lambda0, h, descriptor, {}};
  mesh.points.reserve(frames.f.size());
  for (int i = 0; i < grid.n_u(); ++i) {
    for (int j = 0; j < grid.n_v(); ++j) mesh.points.push_back(sym_bobenko(frames.frame(i, j), h, lambda0));
  }
  if (grid.closed_seam()) {
    for (int i = 0; i < grid.n_u(); ++i) mesh.seam_defect.push_back(distance(mesh.at(i, 0), mesh.at(i, grid.n_v() - 1)));
  }
  return mesh;
}

SurfaceMesh generate(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                     const SurfaceOptions& options) {
  return sym_mesh(compute_frames(xi, grid, init, options), options.h, options.lambda0, xi.descriptor());
}

double ClosureReport::sup_defect(std::size_t l) const {
  double worst = 0.0;
  for (double d : defect[l]) worst = std::max(worst, d);
  return worst;
}

double ClosureReport::min_sup_defect() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < defect.size(); ++l) best = std::min(best, sup_defect(l));
  return best;
}

double ClosureReport::max_sup_defect() const {
  double worst = 0.0;
  for (std::size_t l = 0; l < defect.size(); ++l) worst = std::max(worst, sup_defect(l));
  return worst;
}

double ClosureReport::max_gap() const {
  double worst = 0.0;
  for (const auto& row : gap) {
    for (double g : row) worst = std::max(worst, g);
  }
  return worst;
}

ClosureReport closure_defect(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                             std::span<const cplx> lambda0s, const SurfaceOptions& options) {
  if (grid.kind() == DomainGrid::Kind::kRectangle) {
    throw Error(ErrorKind::kInvalidArgument, "closure defect needs an annulus or disk grid");
  }
  const Marcher marcher(xi, options);
  const CircleGrid lgrid(options.lambda_grid);
  const std::size_t n_l = lambda0s.size();
  ClosureReport report;
  report.lambda0s.assign(lambda0s.begin(), lambda0s.end());
  report.defect.assign(n_l, {});
  report.predicted.assign(n_l, {});
  report.gap.assign(n_l, {});

  for (const State& s : row_starts(marcher, grid, init)) {
    report.radii.push_back(std::abs(s.z.z));
    if (std::abs(s.z.z) == 0.0) {
      for (std::size_t l = 0; l < n_l; ++l) {
        report.defect[l].push_back(0.0);
        report.predicted[l].push_back(0.0);
        report.gap[l].push_back(0.0);
      }
      continue;
    }
    const State around = marcher.arc(s, 2.0 * kPi);
    Frames fz = unitary_part(s.l, options.factorization);
    Frames ft = unitary_part(around.l, options.factorization);

    const auto mono = monodromy(xi, s.z, lgrid, s.l, options.integrator);
    const Frames m_fine = fourier::resample(mono.m, fz.size());
    Frames dressed(fz.size());
    kernels::mat2_mul(m_fine, fz, dressed);
    Frames f_dressed = unitary_part(dressed, options.factorization);

    const std::size_t n = std::max({fz.size(), ft.size(), f_dressed.size()});
    fz = fourier::resample(fz, n);
    ft = fourier::resample(ft, n);
    f_dressed = fourier::resample(f_dressed, n);
    Frames mf(n);
    kernels::mat2_mul_adjoint(f_dressed, fz, mf);
    const LoopOptions lo = frame_loop_options(n);

    const LoopMatrix fz_loop = LoopMatrix::from_samples(fz, lo);
    const LoopMatrix ft_loop = LoopMatrix::from_samples(ft, lo);
    const LoopMatrix mf_loop = LoopMatrix::from_samples(mf, lo);
    const LoopMatrix mf_prime = lambda_derivative(mf_loop);
    for (std::size_t l = 0; l < n_l; ++l) {
      const cplx l0 = lambda0s[l];
      const AmbientPoint a = sym_bobenko(fz_loop, options.h, l0);
      const AmbientPoint b = sym_bobenko(ft_loop, options.h, l0);
      const AmbientPoint p = translational_period(mf_loop.eval(l0), kI * l0 * mf_prime.eval(l0), a, options.h);
      report.defect[l].push_back(distance(a, b));
      report.predicted[l].push_back(distance(a, p));
      report.gap[l].push_back(distance(b, p));
    }
  }
  return report;
}

CmcReport verify_cmc(std::span<const AmbientPoint> points, int n_u, int n_v, double du, double dv, double target,
                     int margin) {
  margin = std::max(margin, 2);
  if (static_cast<std::size_t>(n_u * n_v) != points.size()) {
    throw Error(ErrorKind::kInvalidArgument, "point count does not match the grid");
  }
  if (n_u <= 2 * margin || n_v <= 2 * margin) throw Error(ErrorKind::kInvalidArgument, "grid too small for the stencil");
  auto at = [&](int i, int j) { return as_array(points[static_cast<std::size_t>(i * n_v + j)]); };
  auto combine = [](std::initializer_list<std::pair<double, std::array<double, 3>>> terms, double scale) {
    std::array<double, 3> r{};
    for (const auto& [w, p] : terms) {
      for (int k = 0; k < 3; ++k) r[k] += w * p[k];
    }
    for (auto& x : r) x *= scale;
    return r;
  };
  // Fourth-order centered differences.
  auto d1 = [&](auto f, int k, double h) {
    return combine({{1.0, f(k - 2)}, {-8.0, f(k - 1)}, {8.0, f(k + 1)}, {-1.0, f(k + 2)}}, 1.0 / (12.0 * h));
  };
  auto d2 = [&](auto f, int k, double h) {
    return combine({{-1.0, f(k - 2)}, {16.0, f(k - 1)}, {-30.0, f(k)}, {16.0, f(k + 1)}, {-1.0, f(k + 2)}},
                   1.0 / (12.0 * h * h));
  };

  CmcReport report;
  report.target = target;
  report.margin = margin;
  report.h.assign(points.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> interior;
  double sum = 0.0;
  for (int i = margin; i < n_u - margin; ++i) {
    for (int j = margin; j < n_v - margin; ++j) {
      const auto fu = d1([&](int k) { return at(k, j); }, i, du);
      const auto fv = d1([&](int k) { return at(i, k); }, j, dv);
      const auto fuu = d2([&](int k) { return at(k, j); }, i, du);
      const auto fvv = d2([&](int k) { return at(i, k); }, j, dv);
      const auto fuv = d1([&](int k) { return d1([&](int m) { return at(m, k); }, i, du); }, j, dv);
      const double e = dot3(fu, fu), f = dot3(fu, fv), g = dot3(fv, fv);
      const double det = e * g - f * f;
      if (!(det >= 1e-12)) throw Error(ErrorKind::kDegenerateMetric, "induced metric degenerates on the grid");
      auto n = cross(fu, fv);
      const double nn = std::sqrt(dot3(n, n));
      for (auto& x : n) x /= nn;
      const double l = dot3(fuu, n), m = dot3(fuv, n), nv = dot3(fvv, n);
      const double h = (e * nv - 2.0 * f * m + g * l) / (2.0 * det);
      const auto idx = static_cast<std::size_t>(i * n_v + j);
      report.h[idx] = h;
      interior.push_back(idx);
      sum += h;
    }
  }
  // Orient the normal so that the mean agrees in sign with the target.
  const double flip = (sum < 0.0) == (target < 0.0) ? 1.0 : -1.0;
  double total = 0.0;
  for (std::size_t idx : interior) {
    report.h[idx] *= flip;
    total += report.h[idx];
    report.max_deviation = std::max(report.max_deviation, std::abs(report.h[idx] - target));
  }
  report.mean = total / static_cast<double>(interior.size());
  return report;
}

CmcReport verify_cmc(const SurfaceMesh& mesh, int margin) {
  return verify_cmc(mesh.points, mesh.grid.n_u(), mesh.grid.n_v(), mesh.grid.du(), mesh.grid.dv(), mesh.h, margin);
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  os << std::setprecision(17);
  os << "# " << mesh.descriptor << " lambda0 = " << mesh.lambda0 << " H = " << mesh.h << "\n";
  for (const auto& p : mesh.points) os << "v " << p.x1 << ' ' << p.x2 << ' ' << p.x3 << '\n';
  const int nv = mesh.grid.n_v();
  for (int i = 0; i + 1 < mesh.grid.n_u(); ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const int a = i * nv + j + 1;
      os << "f " << a << ' ' << a + nv << ' ' << a + nv + 1 << ' ' << a + 1 << '\n';
    }
  }
}

void write_points_csv(std::ostream& os, const SurfaceMesh& mesh) {
  os << std::setprecision(17) << "i,j,u,v,x1,x2,x3\n";
  for (int i = 0; i < mesh.grid.n_u(); ++i) {
    for (int j = 0; j < mesh.grid.n_v(); ++j) {
      const auto& p = mesh.at(i, j);
      os << i << ',' << j << ',' << mesh.grid.u(i) << ',' << mesh.grid.v(j) << ',' << p.x1 << ',' << p.x2 << ','
         << p.x3 << '\n';
    }
  }
}

std::vector<AmbientPoint> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::kParse, "empty points CSV");
  std::vector<AmbientPoint> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double i, j, u, v;
    AmbientPoint p;
    if (!(row >> i >> j >> u >> v >> p.x1 >> p.x2 >> p.x3)) throw Error(ErrorKind::kParse, "bad points CSV row: " + line);
    out.push_back(p);
  }
  return out;
}

void write_defect_csv(std::ostream& os, const ClosureReport& report) {
  os << std::setprecision(17) << "lambda0_re,lambda0_im,radius,defect,predicted,gap\n";
  for (std::size_t l = 0; l < report.lambda0s.size(); ++l) {
    for (std::size_t r = 0; r < report.radii.size(); ++r) {
      os << report.lambda0s[l].real() << ',' << report.lambda0s[l].imag() << ',' << report.radii[r] << ','
         << report.defect[l][r] << ',' << report.predicted[l][r] << ',' << report.gap[l][r] << '\n';
    }
  }
}

void export_mesh(const SurfaceMesh& mesh, const std::string& stem) {
  std::ofstream obj(stem + ".obj"), csv(stem + ".csv");
  if (!obj || !csv) throw Error(ErrorKind::kIo, "cannot open " + stem + ".obj/.csv for writing");
  write_obj(obj, mesh);
  write_points_csv(csv, mesh);
  if (!obj || !csv) throw Error(ErrorKind::kIo, "write failed for " + stem);
}

}  // namespace dpw
