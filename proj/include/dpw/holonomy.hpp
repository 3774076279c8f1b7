#pragma once

// Integration of dL = L xi along paths in C \ {0} and monodromy around the
// origin. The solution is integrated for all lambda samples at once with a
// shared step-size controller; log z is carried along exactly.

#include <iosfwd>
#include <span>
#include <vector>

#include "dpw/fourier.hpp"
#include "dpw/potentials.hpp"

namespace dpw {

class PathSpec {
 public:
  struct Segment {
    enum class Kind { kLine, kArc } kind;
    ZPoint from;
    cplx to;       // lines: end point
    double sweep;  // arcs: signed angle about the origin
  };

  explicit PathSpec(ZPoint start) : start_(start), end_(start) {}
  explicit PathSpec(cplx start) : PathSpec(ZPoint::principal(start)) {}

  PathSpec& line_to(cplx z);
  /// Arc about the origin through `sweep` radians (counterclockwise if positive).
  PathSpec& arc(double sweep);

  /// Circle through the start point, `turns` times counterclockwise.
  static PathSpec loop(ZPoint start, int turns = 1);

  const ZPoint& start() const { return start_; }
  const ZPoint& end() const { return end_; }
  const std::vector<Segment>& segments() const { return segments_; }
  /// Net turns about the origin, from the tracked logarithm.
  double winding() const { return (end_.log_z - start_.log_z).imag() / (2.0 * kPi); }
  /// Smallest distance from the path to the origin.
  double clearance() const;

  /// Position and d/ds along segment i at s in [0, 1].
  ZPoint point(std::size_t i, double s) const;
  cplx velocity(std::size_t i, double s) const;

 private:
  ZPoint start_;
  ZPoint end_;
  std::vector<Segment> segments_;
};

struct IntegratorOptions {
  double tol = 1e-10;          // absolute and relative local tolerance
  double h_min = 1e-14;        // in units of the segment parameter
  double h_init = 1.0 / 64.0;
  std::size_t max_steps = 2'000'000;
  double path_clearance = 1e-3;
};

struct IntegrationResult {
  std::vector<Mat2> values;  // one per lambda
  ZPoint end;
  double det_drift = 0.0;    // max |det L - det L0| over accepted steps
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// Solves dL/dz = L xi(z, lambda_m) along the path for every lambda_m.
/// Throws PathTooClose or StepUnderflow.
IntegrationResult integrate(const Potential& xi, const PathSpec& path, std::span<const Mat2> initial,
                            std::span<const cplx> lambdas, const IntegratorOptions& options = {});
Mat2 integrate(const Potential& xi, const PathSpec& path, const Mat2& initial, cplx lambda,
               const IntegratorOptions& options = {});

struct MonodromyReport {
  std::vector<double> t;
  std::vector<cplx> lambda;
  std::vector<Mat2> m;
  std::vector<Mat2> dm_dt;
  std::vector<double> rho_plus;
  std::vector<double> rho_minus;
  std::vector<cplx> trace;
  double max_det_defect = 0.0;
  ZPoint base;
  int turns = 1;
  IntegrationResult integration;

  std::size_t size() const { return m.size(); }
};

/// Builds the report from sampled monodromy matrices (t_m = 2 pi m / M).
MonodromyReport make_report(std::vector<Mat2> m);

/// M(lambda_m) = L(tau z0) L0^{-1} for the circle |z| = |z0| traversed
/// `turns` times counterclockwise.
MonodromyReport monodromy(const Potential& xi, const ZPoint& base, const CircleGrid& grid,
                          std::span<const Mat2> initial, const IntegratorOptions& options = {}, int turns = 1);

struct ClosingResidual {
  double rho_plus;
  double rho_minus;
  double delta;
  bool closes(double tol) const { return std::min(rho_plus, rho_minus) < tol && delta < tol; }
};

ClosingResidual closing_residual(const MonodromyReport& report, std::size_t index);

/// One row per lambda: t, the 8 real entries of M, rho+, rho-, Re/Im trace, delta.
void write_csv(std::ostream& os, const MonodromyReport& report);

}  // namespace dpw
