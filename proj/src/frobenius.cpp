#include "dpw/frobenius.hpp"

#include <algorithm>

#include "dpw/errors.hpp"

namespace dpw {

namespace {

const Mat2 kE12{0.0, 1.0, 0.0, 0.0};
const Mat2 kE21{0.0, 0.0, 1.0, 0.0};

// N(X) = D X - X D
LoopMatrix commutator(const LoopMatrix& d, const LoopMatrix& x, const LoopOptions& o) {
  return loop_mul(d, x, o) - loop_mul(x, d, o);
}

Mat2 commutator(const Mat2& d, const Mat2& x) { return d * x - x * d; }

// Scalar series embedded as multiples of the identity.
LogSeries entry_series(const LogSeries& s, int row, int col, int degree_shift) {
  LogSeries out(s.orders(), s.max_log_power(), s.options());
  for (int p = 0; p <= s.max_log_power(); ++p) {
    for (int j = 0; j < s.orders(); ++j) {
      const auto& t = s.term(p, j);
      if (t.is_zero()) continue;
      std::vector<Mat2> c;
      for (const Mat2& m : t.coefficients()) {
        const cplx v = row == 1 ? (col == 1 ? m.a11 : m.a12) : (col == 1 ? m.a21 : m.a22);
        c.push_back(Mat2::diag(v, v));
      }
      LoopMatrix e(t.min_degree() + degree_shift, std::move(c));
      e.prune(0.0);
      out.term(p, j) = std::move(e);
    }
  }
  return out;
}

}  // namespace

LogSeries FrobeniusSolution::l_hat(int max_log_power) const {
  LogSeries s(orders, max_log_power, options);
  s.term(0, 0) = LoopMatrix::identity();
  if (max_log_power < 1) throw Error(ErrorKind::kOverflowOfLogPower, "L^ needs (log z)^1");
  s.term(1, 0) = d;
  return s;
}

LogSeries FrobeniusSolution::p_series(int max_log_power) const {
  LogSeries s(orders, max_log_power, options);
  for (int j = 0; j < orders; ++j) s.term(0, j) = p[static_cast<std::size_t>(j)];
  return s;
}

LogSeries FrobeniusSolution::l_tilde(int max_log_power) const {
  return multiply(l_hat(max_log_power), p_series(max_log_power));
}

LogSeries FrobeniusSolution::z_xi(int max_log_power) const {
  LogSeries s(orders, max_log_power, options);
  s.term(0, 0) = d;
  if (orders > 1) s.term(0, 1) = e;
  return s;
}

cplx FrobeniusSolution::eta1(int j, cplx lambda) const {
  return eta1_coeff.at(static_cast<std::size_t>(j)) * std::pow(c / (lambda * lambda), j);
}

cplx FrobeniusSolution::eta2(int j, cplx lambda) const {
  return eta2_coeff.at(static_cast<std::size_t>(j)) * std::pow(c / (lambda * lambda), j);
}

Mat2 FrobeniusSolution::p_value(cplx z, cplx lambda) const {
  const Mat2 dm = kE21 * (c / lambda);
  const Mat2 em = kE12 * (1.0 / lambda);
  Mat2 pj = Mat2::identity();
  Mat2 sum = pj;
  cplx zj = 1.0;
  for (int j = 1; j < 400; ++j) {
    const Mat2 x = pj * em;
    const Mat2 nx = commutator(dm, x);
    const Mat2 nnx = commutator(dm, nx);
    const double jj = j;
    pj = (x - nx * (1.0 / jj) + nnx * (1.0 / (jj * jj))) * (1.0 / jj);
    zj *= z;
    const Mat2 term = pj * zj;
    sum += term;
    if (j > 4 && term.frobenius_norm() < 1e-18 * sum.frobenius_norm()) break;
  }
  return sum;
}

Mat2 FrobeniusSolution::l_hat_value(const ZPoint& z, cplx lambda) const {
  return Mat2{1.0, 0.0, c * z.log_z / lambda, 1.0};
}

Mat2 FrobeniusSolution::l_tilde_value(const ZPoint& z, cplx lambda) const {
  return l_hat_value(z, lambda) * p_value(z.z, lambda);
}

FrobeniusSolution build_frobenius(cplx c, int n_z, int n_lambda) {
  if (c == 0.0) throw Error(ErrorKind::kZeroC, "build_frobenius requires c != 0");
  if (n_z < 2) throw Error(ErrorKind::kInvalidArgument, "build_frobenius requires N_z >= 2");
  FrobeniusSolution sol;
  sol.c = c;
  sol.orders = n_z;
  // P_j reaches degree -(2j+1); products of two such series and a loop of
  // degree up to n_lambda must stay inside the band.
  sol.options.band = std::max(n_lambda, 4 * n_z + n_lambda + 8);
  sol.options.drop_tol = 0.0;
  sol.d = LoopMatrix::monomial(-1, kE21 * c);
  sol.e = LoopMatrix::monomial(-1, kE12);

  // (j + N) P_j = P_{j-1} E, and N^3 = 0 because D^2 = 0.
  sol.p.push_back(LoopMatrix::identity());
  for (int j = 1; j < n_z; ++j) {
    const LoopMatrix x = loop_mul(sol.p.back(), sol.e, sol.options);
    const LoopMatrix nx = commutator(sol.d, x, sol.options);
    const LoopMatrix nnx = commutator(sol.d, nx, sol.options);
    const double jj = j;
    LoopMatrix pj = x - (1.0 / jj) * nx + (1.0 / (jj * jj)) * nnx;
    pj *= 1.0 / jj;
    pj.prune(0.0);
    sol.p.push_back(std::move(pj));
  }

  // P_12 = lambda^{-1} z sum eta1_j z^j and, with eta_{2,1} = 0,
  // P_22 = -c lambda^{-2} z sum eta1_j z^j + sum eta2_j z^j.
  for (int j = 0; j + 1 < n_z; ++j) {
    const cplx v = sol.p[static_cast<std::size_t>(j + 1)].coefficient(-2 * j - 1).a12;
    sol.eta1_coeff.push_back(v / std::pow(c, j));
  }
  for (int j = 0; j < n_z; ++j) {
    cplx v = sol.p[static_cast<std::size_t>(j)].coefficient(-2 * j).a22;
    if (j >= 1) v += c * sol.eta1_coeff[static_cast<std::size_t>(j - 1)] * std::pow(c, j - 1);
    sol.eta2_coeff.push_back(v / std::pow(c, j));
  }
  return sol;
}

LoopMatrix analytic_monodromy(const FrobeniusSolution& sol) {
  return LoopMatrix::identity() + LoopMatrix::monomial(-1, kE21 * (2.0 * kPi * kI * sol.c));
}

LogSeries frobenius_residual(const FrobeniusSolution& sol) {
  const LogSeries lt = sol.l_tilde();
  return lt.euler_derivative() - multiply(lt, sol.z_xi());
}

double column_ode_residual(const FrobeniusSolution& sol, int through) {
  const LogSeries lt = sol.l_tilde();
  const LoopMatrix q = LoopMatrix::monomial(-2, Mat2::identity() * sol.c);
  double worst = 0.0;
  for (const LogSeries& f : {entry_series(lt, 1, 2, 1), entry_series(lt, 2, 2, 0)}) {
    const LogSeries t1 = f.euler_derivative();
    const LogSeries t2 = t1.euler_derivative();
    const LogSeries zf2_times_z = t2 - t1;  // z^2 F''
    for (int p = 0; p <= f.max_log_power(); ++p) {
      // z^2 F'' has no z^0 term when z F'' is holomorphic.
      for (const Mat2& m : zf2_times_z.term(p, 0).coefficients()) worst = std::max(worst, m.frobenius_norm());
      for (int j = 0; j <= through && j + 1 < f.orders(); ++j) {
        const LoopMatrix r = zf2_times_z.term(p, j + 1) - loop_mul(q, f.term(p, j), sol.options);
        for (const Mat2& m : r.coefficients()) worst = std::max(worst, m.frobenius_norm());
      }
    }
  }
  return worst;
}

std::vector<cplx> eta1_recurrence(int count) {
  std::vector<cplx> out;
  double v = 1.0;
  for (int j = 0; j < count; ++j) {
    if (j > 0) v /= static_cast<double>(j) * (j + 1);
    out.push_back(v);
  }
  return out;
}

std::vector<cplx> eta2_recurrence(int count, cplx t) {
  const auto a = eta1_recurrence(count);
  std::vector<cplx> b;
  for (int j = 0; j < count; ++j) {
    if (j == 0) {
      b.push_back(1.0);
    } else if (j == 1) {
      b.push_back(t);
    } else {
      const double k = j - 1;
      b.push_back((b[j - 1] - (2.0 * k + 1.0) * a[j - 1]) / (k * (k + 1.0)));
    }
  }
  return b;
}

LogSeries printed_p(const FrobeniusSolution& sol, cplx t) {
  const int n = sol.orders;
  const auto a = eta1_recurrence(n + 1);
  const auto b = eta2_recurrence(n + 1, t);
  const cplx c = sol.c;
  // eta_{i,j} = coeff * c^j lambda^{-2j}
  auto eta = [&](const std::vector<cplx>& v, int j) { return v[static_cast<std::size_t>(j)] * std::pow(c, j); };

  LogSeries s(n, 2, sol.options);
  for (int j = 0; j < n; ++j) {
    LoopMatrix term = LoopMatrix::monomial(-2 * j, Mat2::diag(double(j + 1) * eta(a, j), eta(b, j)));
    if (j >= 1) term += LoopMatrix::monomial(-2 * j + 1, kE12 * eta(a, j - 1));
    // lambda [(j+1) eta2_{j+1} + c lambda^{-2} eta1_j]
    term += LoopMatrix::monomial(-2 * j - 1, kE21 * (double(j + 1) * eta(b, j + 1) + c * eta(a, j)));
    term.prune(0.0);
    s.term(0, j) = std::move(term);
  }
  // -lambda eta_{2,1} - c / lambda = -(1 + t) c / lambda
  const LoopMatrix pre = LoopMatrix::identity() + LoopMatrix::monomial(-1, kE21 * (-(1.0 + t) * c));
  return s.left_mul(pre);
}

}  // namespace dpw
