#include "dpw/sym.hpp"

#include <algorithm>
#include <cmath>

#include "dpw/errors.hpp"

namespace dpw {

namespace {

void require_h(double h) {
  if (h == 0.0 || !std::isfinite(h)) throw Error(ErrorKind::kInvalidArgument, "mean curvature must be nonzero");
}

}  // namespace

double distance(const AmbientPoint& a, const AmbientPoint& b) {
  return std::hypot(a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3);
}

AmbientPoint operator-(const AmbientPoint& a, const AmbientPoint& b) {
  return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3, a.signature};
}

Mat2 to_matrix(const AmbientPoint& p) {
  if (p.signature == Signature::kEuclidean) return kI * (p.x1 * kSigma1 + p.x2 * kSigma2 + p.x3 * kSigma3);
  return p.x1 * kSigma1 + p.x2 * kSigma2 + kI * p.x3 * kSigma3;
}

AmbientPoint from_matrix(const Mat2& s, Signature signature) {
  auto coord = [&](const Mat2& sigma, cplx w) { return 0.5 * (w * (s * sigma).trace()).real(); };
  if (signature == Signature::kEuclidean) {
    return {coord(kSigma1, -kI), coord(kSigma2, -kI), coord(kSigma3, -kI), signature};
  }
  return {coord(kSigma1, 1.0), coord(kSigma2, 1.0), coord(kSigma3, -kI), signature};
}

AmbientPoint sym_bobenko(const Mat2& f, const Mat2& df_dlambda, double h, cplx lambda0, const SymOptions& options) {
  require_h(h);
  if (distance(f.adjoint() * f, Mat2::identity()) > options.unitarity_tol ||
      std::abs(f.det() - 1.0) > options.unitarity_tol) {
    throw Error(ErrorKind::kNotUnitary, "frame is not in SU(2) at lambda0");
  }
  const Mat2 f_inv = f.adjugate();
  const Mat2 s = (-kI / (2.0 * h)) * (f * kSigma3 * f_inv - 2.0 * lambda0 * df_dlambda * f_inv);
  if (std::abs(s.trace()) > options.trace_tol * std::max(1.0, s.frobenius_norm())) {
    throw Error(ErrorKind::kNotUnitary, "Sym-Bobenko bracket is not trace-free");
  }
  return from_matrix(s, Signature::kEuclidean);
}

AmbientPoint sym_bobenko(const LoopMatrix& f, double h, cplx lambda0, const SymOptions& options) {
  return sym_bobenko(f.eval(lambda0), lambda_derivative(f).eval(lambda0), h, lambda0, options);
}

AmbientPoint sym_sl2r(const Mat2& f, const Mat2& df_dlambda, cplx lambda0) {
  if (std::abs(f.det()) < 1e-13) throw Error(ErrorKind::kSingular, "frame is singular at lambda0");
  const Mat2 s = -kI * lambda0 * df_dlambda * f.inverse();
  return from_matrix(s, Signature::kMinkowski);
}

AmbientPoint sym_sl2r(const LoopMatrix& f, cplx lambda0) {
  return sym_sl2r(f.eval(lambda0), lambda_derivative(f).eval(lambda0), lambda0);
}

AmbientPoint translational_period(const Mat2& m, const Mat2& dm_dt, const AmbientPoint& f, double h) {
  const Mat2 m_inv = m.inverse();
  const Mat2 rotated = m * to_matrix(f) * m_inv;
  if (f.signature == Signature::kEuclidean) {
    require_h(h);
    return from_matrix(rotated + (1.0 / h) * dm_dt * m_inv, Signature::kEuclidean);
  }
  return from_matrix(rotated - dm_dt * m_inv, Signature::kMinkowski);
}

}  // namespace dpw
