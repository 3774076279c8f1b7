#pragma once

// Sym-Bobenko and Sym formulas: frames to points of R^3 or L^3.
//
// Points are identified with trace-free matrices: in the Euclidean case
// S = i (x1 s1 + x2 s2 + x3 s3), in the Minkowski case (x3 timelike)
// S = x1 s1 + x2 s2 + i x3 s3, with s_j the Pauli matrices.

#include "dpw/loop_matrix.hpp"

namespace dpw {

enum class Signature { kEuclidean, kMinkowski };

struct AmbientPoint {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
  Signature signature = Signature::kEuclidean;
};

double distance(const AmbientPoint& a, const AmbientPoint& b);
AmbientPoint operator-(const AmbientPoint& a, const AmbientPoint& b);

Mat2 to_matrix(const AmbientPoint& p);
AmbientPoint from_matrix(const Mat2& s, Signature signature);

struct SymOptions {
  double unitarity_tol = 1e-6;
  double trace_tol = 1e-8;  // relative to max(1, |bracket|)
};

/// (-i/2H) [F s3 F^{-1} - 2 lambda F_lambda F^{-1}] at lambda0 from the
/// value and lambda-derivative of F there. Throws NotUnitary when F is not
/// in SU(2) to unitarity_tol or the bracket is not trace-free.
AmbientPoint sym_bobenko(const Mat2& f, const Mat2& df_dlambda, double h, cplx lambda0, const SymOptions& options = {});
AmbientPoint sym_bobenko(const LoopMatrix& f, double h, cplx lambda0, const SymOptions& options = {});

/// -i lambda F_lambda F^{-1} at lambda0, Minkowski coordinates. Throws
/// Singular when det F(lambda0) vanishes.
AmbientPoint sym_sl2r(const Mat2& f, const Mat2& df_dlambda, cplx lambda0);
AmbientPoint sym_sl2r(const LoopMatrix& f, cplx lambda0);

/// tau* f = M f M^{-1} + (1/H) dM/dt M^{-1} for the Sym-Bobenko surface,
/// M f M^{-1} - dM/dt M^{-1} for the Sym surface (Minkowski points).
AmbientPoint translational_period(const Mat2& m, const Mat2& dm_dt, const AmbientPoint& f, double h = 0.5);

}  // namespace dpw
