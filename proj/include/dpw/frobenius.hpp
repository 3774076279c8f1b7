#pragma once

// The particular solution L~ = L^ P of dL = L xi for xi = lambda^{-1}
// offdiag(1, c/z), with L^ = exp(log z D) and P holomorphic at z = 0,
// P(0) = id.
//
// P is built order by order from z P' = P (D + z E) - D P where
// D = lambda^{-1} c E21 and E = lambda^{-1} E12; the eta tables are read
// off from P afterwards.

#include <vector>

#include "dpw/log_series.hpp"

namespace dpw {

class FrobeniusSolution {
 public:
  cplx c;
  int orders;      // z-orders 0..orders-1 are stored
  LoopOptions options;
  LoopMatrix d;                 // lambda^{-1} c E21
  LoopMatrix e;                 // lambda^{-1} E12
  std::vector<LoopMatrix> p;    // P_j
  // eta_{i,j}(lambda) = eta_i_coeff[j] * (c lambda^{-2})^j
  std::vector<cplx> eta1_coeff;
  std::vector<cplx> eta2_coeff;

  LogSeries l_hat(int max_log_power = 2) const;
  LogSeries p_series(int max_log_power = 2) const;
  LogSeries l_tilde(int max_log_power = 2) const;
  /// z xi(z) = D + z E as a series.
  LogSeries z_xi(int max_log_power = 2) const;

  cplx eta1(int j, cplx lambda) const;
  cplx eta2(int j, cplx lambda) const;

  /// Pointwise P(z, lambda), summed until the terms are negligible.
  Mat2 p_value(cplx z, cplx lambda) const;
  Mat2 l_hat_value(const ZPoint& z, cplx lambda) const;
  Mat2 l_tilde_value(const ZPoint& z, cplx lambda) const;
};

/// Requires c != 0 and n_z >= 2. The loop band is widened when products of
/// the stored orders would not fit in n_lambda.
FrobeniusSolution build_frobenius(cplx c, int n_z, int n_lambda = 32);

/// [[1, 0], [2 pi i c lambda^{-1}, 1]].
LoopMatrix analytic_monodromy(const FrobeniusSolution& sol);

/// z L~' - L~ (z xi), all sectors.
LogSeries frobenius_residual(const FrobeniusSolution& sol);

/// Largest coefficient of z F'' - c lambda^{-2} F through order `through`,
/// for F = X = lambda L~_12 and F = Y = L~_22.
double column_ode_residual(const FrobeniusSolution& sol, int through);

/// P rebuilt from the displayed product form
///   [[1,0],[-lambda eta21 - c/lambda, 1]] . S(eta1, eta2)
/// with eta_{2,1} = t c lambda^{-2} and eta2 from its recurrence.
LogSeries printed_p(const FrobeniusSolution& sol, cplx t = 0.0);

/// Recurrence values used by printed_p: eta1 = q^j / (j! (j+1)!),
/// eta2_{j+1} = (eta2_j - (2j+1) eta1_j) / (j (j+1)) in units of q^{j+1}.
std::vector<cplx> eta1_recurrence(int count);
std::vector<cplx> eta2_recurrence(int count, cplx t);

}  // namespace dpw
