#pragma once

// The DPW pipeline over a parameter grid: integrate dL = L xi from the
// initial data, split L = F B per grid point (all lambda samples), and map
// F through the Sym-Bobenko formula at lambda0.

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpw/factorization.hpp"
#include "dpw/holonomy.hpp"
#include "dpw/sym.hpp"

namespace dpw {

/// Parameters (u, v): (r, theta) for annuli and disks, (x, y) for rectangles.
/// Frames are carried along u at v = v0 first, then along v.
class DomainGrid {
 public:
  enum class Kind { kAnnulus, kDisk, kRectangle };

  static DomainGrid annulus(double r0, double r1, int n_r, int n_theta, double theta_span = 2.0 * kPi,
                            double theta0 = 0.0);
  static DomainGrid disk(double r1, int n_r, int n_theta, double theta_span = 2.0 * kPi);
  static DomainGrid rectangle(double x0, double x1, double y0, double y1, int n_x, int n_y);

  Kind kind() const { return kind_; }
  int n_u() const { return n_u_; }
  int n_v() const { return n_v_; }
  double u(int i) const;
  double v(int j) const;
  double du() const { return (u1_ - u0_) / (n_u_ - 1); }
  double dv() const { return (v1_ - v0_) / (n_v_ - 1); }
  cplx point(int i, int j) const;
  /// Angular grids whose last column is the first one continued once around.
  bool closed_seam() const;

 private:
  DomainGrid(Kind kind, double u0, double u1, double v0, double v1, int n_u, int n_v);
  Kind kind_;
  double u0_, u1_, v0_, v1_;
  int n_u_, n_v_;
};

struct InitialData {
  ZPoint base;
  std::function<Mat2(cplx lambda)> value;
  std::string descriptor;

  static InitialData identity_at(ZPoint base);
  /// L~(base) of the Frobenius solution for xi = lambda^{-1} offdiag(1, c/z).
  static InitialData frobenius(cplx c, ZPoint base);
};

struct SurfaceOptions {
  double h = 0.5;
  cplx lambda0 = 1.0;
  std::size_t lambda_grid = 64;
  IntegratorOptions integrator;
  FactorizationOptions factorization;
};

struct SurfaceMesh {
  DomainGrid grid;
  std::vector<AmbientPoint> points;  // index i * n_v + j
  cplx lambda0;
  double h;
  std::string descriptor;
  std::vector<double> seam_defect;   // |f(u_i, v_last) - f(u_i, v_0)| on closed seams

  const AmbientPoint& at(int i, int j) const { return points[static_cast<std::size_t>(i * grid.n_v() + j)]; }
  double max_seam_defect() const;
};

/// Unitary frames F on the lambda grid at every grid point.
struct FrameField {
  DomainGrid grid;
  CircleGrid lambdas;  // integration grid; frames are stored on it or on a finer one
  std::vector<std::vector<Mat2>> f;  // index i * n_v + j

  LoopMatrix frame(int i, int j) const;
};

FrameField compute_frames(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                          const SurfaceOptions& options = {});
SurfaceMesh sym_mesh(const FrameField& frames, double h, cplx lambda0, const std::string& descriptor = {});
SurfaceMesh generate(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                     const SurfaceOptions& options = {});

struct ClosureReport {
  std::vector<double> radii;
  std::vector<cplx> lambda0s;
  std::vector<std::vector<double>> defect;     // [lambda0][radius], |f(tau z) - f(z)|
  std::vector<std::vector<double>> predicted;  // same, from tau* f with the dressed monodromy
  std::vector<std::vector<double>> gap;        // |f(tau z) - tau* f(z)|

  double sup_defect(std::size_t l) const;
  double min_sup_defect() const;
  double max_sup_defect() const;
  double max_gap() const;
};

/// Seam defect at theta0 for every radius of an annulus (or disk) grid and
/// every lambda0. The prediction integrates the monodromy M around the
/// circle, dresses F(z) by it (M F(z) = F_tau B'), and applies
/// translational_period with M_F = F_tau F(z)^{-1}.
ClosureReport closure_defect(const Potential& xi, const DomainGrid& grid, const InitialData& init,
                             std::span<const cplx> lambda0s, const SurfaceOptions& options = {});

struct CmcReport {
  std::vector<double> h;  // n_u * n_v, NaN outside the interior
  double target = 0.0;
  double max_deviation = 0.0;
  double mean = 0.0;
  int margin = 2;
};

/// Mean curvature from the fundamental forms with fourth-order centered
/// differences in the grid parameters; the normal is oriented so that H
/// has the sign of the target. Throws DegenerateMetric when EG - F^2 < 1e-12.
CmcReport verify_cmc(std::span<const AmbientPoint> points, int n_u, int n_v, double du, double dv, double target,
                     int margin = 2);
CmcReport verify_cmc(const SurfaceMesh& mesh, int margin = 2);

struct CylinderFit {
  std::array<double, 3> point;
  std::array<double, 3> axis;  // unit
  double radius = 0.0;
  double max_residual = 0.0;   // max | dist(x, axis) - radius |
  double rms_residual = 0.0;
};

CylinderFit fit_cylinder(std::span<const AmbientPoint> points);

void write_obj(std::ostream& os, const SurfaceMesh& mesh);
void write_points_csv(std::ostream& os, const SurfaceMesh& mesh);
std::vector<AmbientPoint> read_points_csv(std::istream& is);
void write_defect_csv(std::ostream& os, const ClosureReport& report);
/// Writes <stem>.obj and <stem>.csv; throws Io.
void export_mesh(const SurfaceMesh& mesh, const std::string& stem);

}  // namespace dpw
