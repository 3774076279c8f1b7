#pragma once

// Holomorphic potentials xi = lambda^{-1} offdiag(g, h) dz, gauge loops and
// the coordinate changes used to relate the family xi_k.
//
// A Potential is a function of (z, lambda) returning the dz-coefficient.
// Points carry a tracked log z so that multivalued ingredients (sqrt z,
// log z) are evaluated on the correct sheet.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpw/loop_matrix.hpp"
#include "dpw/mat2.hpp"

namespace dpw {

/// A point of the universal cover of C \ {0}: z together with a chosen log z.
struct ZPoint {
  cplx z;
  cplx log_z;

  static ZPoint principal(cplx z) { return {z, std::log(z)}; }
  static ZPoint from_log(cplx log_z) { return {std::exp(log_z), log_z}; }
};

class Potential {
 public:
  using Fn = std::function<Mat2(const ZPoint&, cplx)>;

  Potential(std::string descriptor, Fn fn) : descriptor_(std::move(descriptor)), fn_(std::move(fn)) {}

  Mat2 operator()(const ZPoint& z, cplx lambda) const { return fn_(z, lambda); }
  Mat2 operator()(cplx z, cplx lambda) const { return fn_(ZPoint::principal(z), lambda); }
  const std::string& descriptor() const { return descriptor_; }

  /// Family parameters when this is exactly xi_k.
  std::optional<int> k;
  std::optional<cplx> c;
  /// Regular at z = 0, so paths may start at the origin.
  bool holomorphic_at_zero = false;

  /// Loop in lambda at fixed z, recovered from grid samples.
  LoopMatrix at(const ZPoint& z, const LoopOptions& options = {}) const;

 private:
  std::string descriptor_;
  Fn fn_;
};

/// z -> lambda^{-1} [[0, 1], [c z^k, 0]]. Throws ZeroC for c == 0.
Potential make_xi(int k, cplx c);
/// The constant potential lambda^{-1} offdiag(1, 1).
Potential vacuum_potential();
/// sqrt(c) lambda^{-1} offdiag(1, 1) / z, the endpoint of the k = -2 reduction.
Potential reduced_cylinder_potential(double c);

/// A z-dependent positive loop p with its analytic z-derivative.
class GaugeLoop {
 public:
  using Fn = std::function<Mat2(const ZPoint&, cplx)>;

  GaugeLoop(std::string descriptor, Fn value, Fn dz)
      : descriptor_(std::move(descriptor)), value_(std::move(value)), dz_(std::move(dz)) {}

  Mat2 value(const ZPoint& z, cplx lambda) const { return value_(z, lambda); }
  Mat2 dz(const ZPoint& z, cplx lambda) const { return dz_(z, lambda); }
  const std::string& descriptor() const { return descriptor_; }

  /// |central difference - dz| at (z, lambda) with step eps (along the
  /// same sheet).
  double derivative_defect(const ZPoint& z, cplx lambda, double eps = 1e-5) const;
  /// Most negative-degree mass of the loop lambda -> value(z, lambda).
  double negative_mass(const ZPoint& z, const LoopOptions& options = {}) const;

 private:
  std::string descriptor_;
  Fn value_;
  Fn dz_;
};

GaugeLoop identity_gauge();
GaugeLoop constant_gauge(const Mat2& p, std::string descriptor = "constant");

/// p^{-1} xi p + p^{-1} dp. Evaluation throws SingularGauge where |det p| < 1e-13.
Potential apply_gauge(const Potential& xi, const GaugeLoop& p);
/// Pullback under z -> 1/z.
Potential invert_z(const Potential& xi);
/// Pullback under z -> alpha z.
Potential scale_z(const Potential& xi, cplx alpha);

/// [[i/z, 0], [-i lambda, -i z]], which takes invert_z(xi_k) to xi_{-k-4}.
GaugeLoop inversion_partner_gauge();

/// Omega(lambda) = 1 + lambda^2 / (4c) with principal-branch roots.
struct OmegaData {
  double c;
  cplx omega(cplx lambda) const { return 1.0 + lambda * lambda / (4.0 * c); }
  cplx sqrt_omega(cplx lambda) const { return std::exp(0.5 * std::log(omega(lambda))); }
  cplx quarter(cplx lambda) const { return std::exp(0.25 * std::log(omega(lambda))); }
};

struct Section5Chain {
  double c;
  Potential start;                 // xi_{-2}
  std::vector<GaugeLoop> gauges;   // p_{+,1} .. p_{+,5}
  std::vector<Potential> stages;   // potential after each gauge
  const Potential& final_potential() const { return stages.back(); }
};

/// Gauges xi_{-2} step by step into sqrt(c) lambda^{-1} offdiag(1,1) dz/z.
/// Requires c > 0; throws BranchPointHit if |Omega| < 1e-8 on the working
/// lambda set (default: 256 points on the unit circle).
Section5Chain section5_chain(double c, std::span<const cplx> working_lambdas = {});
/// Closed form of the potential after gauge `stage` (1..5).
Potential section5_expected_stage(int stage, double c);

struct CoordinateScale {
  cplx alpha;  // z -> alpha z
};

struct CNormalization {
  Potential normalized;
  GaugeLoop gauge;
  CoordinateScale scale;
  cplx mu;  // gauge = diag(mu, 1/mu)
};

/// Removes c from xi_{-1}: scale_z by alpha = 1/c then gauge by diag(mu, 1/mu),
/// mu^2 = 1/c. Throws InvalidArgument unless the input is xi_{-1}.
CNormalization normalize_c(const Potential& xi);

struct SampleSpec {
  std::size_t count = 100;
  std::uint64_t seed = 1;
  double r_min = 0.5;
  double r_max = 2.0;
  // Keep |arg z| below this so principal branches stay continuous.
  double max_arg = kPi - 0.05;
};

struct ZLambdaSample {
  ZPoint z;
  cplx lambda;
};

std::vector<ZLambdaSample> draw_samples(const SampleSpec& spec);

/// Largest Frobenius distance between two potentials over the samples.
double potential_distance(const Potential& a, const Potential& b, std::span<const ZLambdaSample> samples);

struct EquivalenceReport {
  int k;
  int partner;
  cplx c;
  std::size_t samples;
  double max_residual;
};

/// Evaluates apply_gauge(invert_z(xi_k), p) against xi_{-k-4}.
EquivalenceReport k_equivalence_certificate(int k, cplx c, const SampleSpec& spec = {});

}  // namespace dpw
