#pragma once

// Dressing isotropy of L~: pairs (h, W+) with h L~ = L~ W+.

#include <iosfwd>
#include <vector>

#include "dpw/frobenius.hpp"

namespace dpw {

struct ProbeResult {
  LogSeries w;                        // L~^{-1} h L~
  std::vector<double> sector_norms;   // per (log z)^p
  double log_obstruction = 0.0;       // largest coefficient in sectors p >= 1
  double negative_obstruction = 0.0;  // largest negative-degree coefficient in sector 0

  bool positive(double tol) const { return log_obstruction <= tol && negative_obstruction <= tol; }
};

/// W = adj(L~) h L~ with series from `sol`. Throws OverflowOfLogPower when
/// max_log_power < 2.
ProbeResult isotropy_probe(const FrobeniusSolution& sol, const LoopMatrix& h, int max_log_power = 2);

enum class KernelSource { kFrobenius, kVacuum };

struct KernelOptions {
  KernelSource source = KernelSource::kFrobenius;
  double relative_cutoff = 1e-8;
  double ambiguity_factor = 1e3;
  // tr h_n = 0 for even n >= 2; removes the scalar loops alpha(lambda) id,
  // which solve the linear system but have det != 1.
  bool trace_constraints = true;
};

struct KernelCertificate {
  cplx c;
  int n_z;
  int n_lambda;
  KernelSource source;
  std::size_t rows;
  std::size_t cols;
  std::vector<double> singular_values;  // descending
  double cutoff;
  int dimension;
  bool rank_ambiguous;                  // RankDeficiencyWarning
  std::vector<LoopMatrix> basis;        // h-parts of the null vectors
};

/// Assembles h L~ = L~ W+ over coefficients of h (degrees 0..n_lambda,
/// twisted) and W+ (z-orders 0..n_z, degrees 0..n_lambda, twisted) and
/// returns the null-space dimension by SVD.
KernelCertificate isotropy_kernel(cplx c, int n_z, int n_lambda, const KernelOptions& options = {});

void write_certificate(std::ostream& os, const KernelCertificate& cert);

/// Series for the vacuum solution exp(lambda^{-1} z A).
LogSeries vacuum_series(int orders, const LoopOptions& options = {});

struct WPlusResiduals {
  double eq1;  // lambda a' = c b/z - w21, lambda d' = -(c b/z - w21)
  double eq2;  // lambda b' = a - d, -lambda z w21' = c (a - d)
  double eq3;  // (lambda^2/2) b''' + c b/z^2 - (2c/z) b' = 0
  bool eq12_hold(double tol) const { return eq1 <= tol && eq2 <= tol; }
  /// Eq 3 follows from Eqs 1-2; a violation while they hold is flagged.
  bool consistent(double tol12, double tol3) const { return !eq12_hold(tol12) || eq3 <= tol3; }
};

/// Sup-norm residuals of the W+ equations for xi = lambda^{-1} offdiag(1, c/z)
/// over the sample points.
WPlusResiduals wplus_ode_residuals(const LogSeries& w, cplx c, const std::vector<ZPoint>& zs,
                                   const std::vector<cplx>& lambdas);

/// Relative least-squares residual of fitting sqrt z by
/// f1 + f2 log z + f3 (log z)^2 with Laurent polynomials f_i (degrees
/// -degree..degree) on an annulus covering `sheets` turns.
double sqrt_log_fit_residual(int sheets, int degree, double r0 = 0.5, double r1 = 1.0, int n_r = 12, int n_theta = 96);

}  // namespace dpw
