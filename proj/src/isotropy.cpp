#include "dpw/isotropy.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <iomanip>
#include <map>
#include <ostream>

#include "dpw/errors.hpp"

namespace dpw {

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

Mat2 unit(int entry) {
  Mat2 m;
  (&m.a11)[entry] = 1.0;
  return m;
}

// Entries allowed by the twisted pattern at degree n.
std::array<int, 2> twisted_entries(int n) {
  return (n % 2 == 0) ? std::array<int, 2>{0, 3} : std::array<int, 2>{1, 2};
}


}  // namespace

ProbeResult isotropy_probe(const FrobeniusSolution& sol, const LoopMatrix& h, int max_log_power) {
  if (max_log_power < 1) throw Error(ErrorKind::kOverflowOfLogPower, "L~ itself needs (log z)^1");
  const LogSeries lt = sol.l_tilde(max_log_power);
  LogSeries adj = lt.adjugate();
  // Restrict both factors to the requested log power before multiplying so
  // an insufficient max_log_power is reported rather than widened.
  LogSeries lt_c(lt.orders(), max_log_power, lt.options());
  LogSeries adj_c(lt.orders(), max_log_power, lt.options());
  for (int p = 0; p <= std::min(max_log_power, lt.max_log_power()); ++p) {
    for (int j = 0; j < lt.orders(); ++j) {
      lt_c.term(p, j) = lt.term(p, j);
      adj_c.term(p, j) = adj.term(p, j);
    }
  }
  ProbeResult r{multiply(adj_c.right_mul(h), lt_c), {}, 0.0, 0.0};
  for (int p = 0; p <= r.w.max_log_power(); ++p) {
    r.sector_norms.push_back(r.w.sector_norm(p));
    if (p >= 1) r.log_obstruction = std::max(r.log_obstruction, r.sector_norms.back());
  }
  r.negative_obstruction = r.w.negative_degree_norm();
  return r;
}

LogSeries vacuum_series(int orders, const LoopOptions& options) {
  LogSeries s(orders, 1, options);
  Mat2 power = Mat2::identity();
  double fact = 1.0;
  for (int j = 0; j < orders; ++j) {
    if (j > 0) {
      power = power * kA;
      fact *= j;
    }
    s.term(0, j) = LoopMatrix::monomial(-j, power * (1.0 / fact));
  }
  return s;
}

KernelCertificate isotropy_kernel(cplx c, int n_z, int n_lambda, const KernelOptions& options) {
  if (n_z < 1 || n_lambda < 0) throw Error(ErrorKind::kInvalidArgument, "isotropy_kernel orders");
  LoopOptions loop_opt;
  loop_opt.band = 4 * n_z + 2 * n_lambda + 16;
  loop_opt.drop_tol = 0.0;
  LogSeries lt = options.source == KernelSource::kFrobenius
                     ? build_frobenius(c, n_z + 1, n_lambda).l_tilde(1)
                     : vacuum_series(n_z + 1, loop_opt);
  const int pmax = lt.max_log_power();

  int dmin = 0, dmax = n_lambda;
  for (int p = 0; p <= pmax; ++p) {
    for (int j = 0; j <= n_z; ++j) {
      const auto& t = lt.term(p, j);
      if (t.is_zero()) continue;
      dmin = std::min(dmin, t.min_degree());
      dmax = std::max(dmax, n_lambda + t.max_degree());
    }
  }
  const int span = dmax - dmin + 1;
  auto row_of = [&](int p, int j, int d, int e) {
    return static_cast<Eigen::Index>((((p * (n_z + 1)) + j) * span + (d - dmin)) * 4 + e);
  };
  const Eigen::Index eq_rows = static_cast<Eigen::Index>((pmax + 1) * (n_z + 1) * span * 4);

  // Unknowns: h_n entries, then W_{i,n} entries.
  struct Unknown {
    bool is_h;
    int order;
    int degree;
    int entry;
  };
  std::vector<Unknown> unknowns;
  for (int n = 0; n <= n_lambda; ++n) {
    for (int e : twisted_entries(n)) unknowns.push_back({true, 0, n, e});
  }
  for (int i = 0; i <= n_z; ++i) {
    for (int n = 0; n <= n_lambda; ++n) {
      for (int e : twisted_entries(n)) unknowns.push_back({false, i, n, e});
    }
  }
  const Eigen::Index cols = static_cast<Eigen::Index>(unknowns.size());

  std::vector<std::pair<Eigen::Index, Eigen::Index>> trace_pairs;
  if (options.trace_constraints) {
    for (int n = 2; n <= n_lambda; n += 2) {
      Eigen::Index i11 = -1, i22 = -1;
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& u = unknowns[static_cast<std::size_t>(k)];
        if (u.is_h && u.degree == n) (u.entry == 0 ? i11 : i22) = k;
      }
      trace_pairs.emplace_back(i11, i22);
    }
  }

  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(eq_rows + static_cast<Eigen::Index>(trace_pairs.size()), cols);
  auto scatter = [&](Eigen::Index col, int p, int j, const LoopMatrix& v, double sign) {
    const auto coeffs = v.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const int d = v.min_degree() + static_cast<int>(k);
      const cplx* e = &coeffs[k].a11;
      for (int q = 0; q < 4; ++q) {
        if (e[q] != 0.0) full(row_of(p, j, d, q), col) += sign * e[q];
      }
    }
  };
  for (Eigen::Index col = 0; col < cols; ++col) {
    const auto& u = unknowns[static_cast<std::size_t>(col)];
    const LoopMatrix mono = LoopMatrix::monomial(u.degree, unit(u.entry));
    for (int p = 0; p <= pmax; ++p) {
      if (u.is_h) {
        for (int j = 0; j <= n_z; ++j) scatter(col, p, j, loop_mul(mono, lt.term(p, j), loop_opt), 1.0);
      } else {
        for (int j = u.order; j <= n_z; ++j) {
          scatter(col, p, j, loop_mul(lt.term(p, j - u.order), mono, loop_opt), -1.0);
        }
      }
    }
  }
  for (std::size_t k = 0; k < trace_pairs.size(); ++k) {
    full(eq_rows + static_cast<Eigen::Index>(k), trace_pairs[k].first) = 1.0;
    full(eq_rows + static_cast<Eigen::Index>(k), trace_pairs[k].second) = 1.0;
  }

  // Drop empty rows and equilibrate rows and columns; neither changes the
  // null-space dimension.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < full.rows(); ++r) {
    if (full.row(r).norm() > 0.0) keep.push_back(r);
  }
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(keep.size()), cols);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    a.row(static_cast<Eigen::Index>(k)) = full.row(keep[k]) / full.row(keep[k]).norm();
  }
  Eigen::VectorXd col_scale(cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    const double nrm = a.col(k).norm();
    col_scale(k) = nrm > 0.0 ? 1.0 / nrm : 1.0;
    a.col(k) *= col_scale(k);
  }

  // Reduce to a square triangular factor first; its singular values and
  // right singular vectors are those of a.
  Eigen::MatrixXcd r_factor;
  if (a.rows() > a.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    r_factor = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    r_factor = a;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(r_factor, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();

  KernelCertificate cert;
  cert.c = c;
  cert.n_z = n_z;
  cert.n_lambda = n_lambda;
  cert.source = options.source;
  cert.rows = static_cast<std::size_t>(a.rows());
  cert.cols = static_cast<std::size_t>(cols);
  cert.singular_values.assign(sv.data(), sv.data() + sv.size());
  while (cert.singular_values.size() < cert.cols) cert.singular_values.push_back(0.0);
  const double smax = cert.singular_values.empty() ? 0.0 : cert.singular_values.front();
  cert.cutoff = options.relative_cutoff * smax;
  int rank = 0;
  cert.rank_ambiguous = false;
  for (double s : cert.singular_values) {
    if (s > cert.cutoff) ++rank;
    if (s > cert.cutoff / options.ambiguity_factor && s < cert.cutoff * options.ambiguity_factor) {
      cert.rank_ambiguous = true;
    }
  }
  cert.dimension = static_cast<int>(cols) - rank;

  const Eigen::MatrixXcd& v = svd.matrixV();
  for (Eigen::Index k = rank; k < cols; ++k) {
    Eigen::VectorXcd x = v.col(k).cwiseProduct(col_scale.cast<cplx>());
    // Normalize by the largest h entry.
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index q = 0; q < cols; ++q) {
      if (unknowns[static_cast<std::size_t>(q)].is_h && std::abs(x(q)) > best_abs) {
        best_abs = std::abs(x(q));
        best = q;
      }
    }
    if (best_abs > 0.0) x /= x(best);
    std::vector<Mat2> coeffs(static_cast<std::size_t>(n_lambda + 1), Mat2::zero());
    for (Eigen::Index q = 0; q < cols; ++q) {
      const auto& u = unknowns[static_cast<std::size_t>(q)];
      if (u.is_h) (&coeffs[static_cast<std::size_t>(u.degree)].a11)[u.entry] = x(q);
    }
    LoopMatrix h(0, std::move(coeffs));
    h.prune(1e-12);
    cert.basis.push_back(std::move(h));
  }
  return cert;
}

void write_certificate(std::ostream& os, const KernelCertificate& cert) {
  os << std::setprecision(6);
  os << "isotropy kernel certificate\n";
  os << "source: " << (cert.source == KernelSource::kFrobenius ? "frobenius" : "vacuum") << '\n';
  os << "c: " << cert.c.real() << (cert.c.imag() < 0 ? " - " : " + ") << std::abs(cert.c.imag()) << "i\n";
  os << "N_z: " << cert.n_z << "\nN_lambda: " << cert.n_lambda << '\n';
  os << "system: " << cert.rows << " x " << cert.cols << '\n';
  os << "cutoff: " << std::scientific << cert.cutoff << std::defaultfloat << '\n';
  os << "smallest singular values:";
  const std::size_t n = cert.singular_values.size();
  for (std::size_t k = n > 6 ? n - 6 : 0; k < n; ++k) os << ' ' << std::scientific << cert.singular_values[k];
  os << std::defaultfloat << '\n';
  os << "dimension: " << cert.dimension << '\n';
  if (cert.rank_ambiguous) os << "warning: RankDeficiencyWarning (singular values near the cutoff)\n";
  for (std::size_t b = 0; b < cert.basis.size(); ++b) {
    os << "basis " << b << ":\n";
    const auto& h = cert.basis[b];
    for (int d = h.min_degree(); d <= h.max_degree(); ++d) {
      const Mat2 m = h.coefficient(d);
      if (m.frobenius_norm() == 0.0) continue;
      os << "  lambda^" << d << ": " << m << '\n';
    }
  }
}

WPlusResiduals wplus_ode_residuals(const LogSeries& w, cplx c, const std::vector<ZPoint>& zs,
                                   const std::vector<cplx>& lambdas) {
  const LogSeries t1 = w.euler_derivative();
  const LogSeries t2 = t1.euler_derivative();
  const LogSeries t3 = t2.euler_derivative();
  WPlusResiduals r{0.0, 0.0, 0.0};
  for (const ZPoint& z : zs) {
    for (const cplx l : lambdas) {
      const Mat2 v = w.evaluate(z, l);
      const Mat2 th1 = t1.evaluate(z, l);
      const Mat2 th2 = t2.evaluate(z, l);
      const Mat2 th3 = t3.evaluate(z, l);
      const cplx iz = 1.0 / z.z;
      // f' = th f / z, f''' = (th^3 - 3 th^2 + 2 th) f / z^3
      const Mat2 d1 = th1 * iz;
      const Mat2 d3 = (th3 - th2 * 3.0 + th1 * 2.0) * (iz * iz * iz);
      const cplx a = v.a11, b = v.a12, cw = v.a21, d = v.a22;
      const cplx s = c * b * iz - cw;
      r.eq1 = std::max({r.eq1, std::abs(l * d1.a11 - s), std::abs(l * d1.a22 + s)});
      r.eq2 = std::max({r.eq2, std::abs(l * d1.a12 - (a - d)), std::abs(-l * z.z * d1.a21 - c * (a - d))});
      r.eq3 = std::max(r.eq3, std::abs(0.5 * l * l * d3.a12 + c * b * iz * iz - 2.0 * c * iz * d1.a12));
    }
  }
  return r;
}

double sqrt_log_fit_residual(int sheets, int degree, double r0, double r1, int n_r, int n_theta) {
  const int n_theta_total = n_theta * sheets;
  const int basis_per_log = 2 * degree + 1;
  const Eigen::Index rows = static_cast<Eigen::Index>(n_r) * n_theta_total;
  Eigen::MatrixXcd a(rows, 3 * basis_per_log);
  Eigen::VectorXcd b(rows);
  Eigen::Index row = 0;
  for (int i = 0; i < n_r; ++i) {
    const double r = n_r == 1 ? r0 : r0 + (r1 - r0) * i / (n_r - 1);
    for (int k = 0; k < n_theta_total; ++k) {
      const double theta = 2.0 * kPi * k / n_theta;
      const cplx log_z{std::log(r), theta};
      const cplx z = std::exp(log_z);
      b(row) = std::exp(0.5 * log_z);
      for (int p = 0; p < 3; ++p) {
        for (int j = -degree; j <= degree; ++j) {
          a(row, p * basis_per_log + (j + degree)) = std::pow(z, j) * std::pow(log_z, p);
        }
      }
      ++row;
    }
  }
  const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
  return (a * x - b).norm() / b.norm();
}

}  // namespace dpw
