#include <sstream>

#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/isotropy.hpp"
#include "support.hpp"

using namespace dpw;

namespace {

const Mat2 kE12{0.0, 1.0, 0.0, 0.0};
const Mat2 kE21{0.0, 0.0, 1.0, 0.0};

// Odd n >= 2 N_z + 1 give h = lambda^n E21 whose W has no negative degrees
// through z-order N_z; those survive the truncation.
int predicted_dimension(int n_z, int n_lambda) {
  int extra = 0;
  for (int n = 2 * n_z + 1; n <= n_lambda; ++n) extra += (n % 2 == 1);
  return 1 + extra;
}

}  // namespace

TEST_CASE("isotropy kernel spec examples") {
  for (cplx c : {cplx{1.0}, cplx{2.0, -1.0}}) {
    const auto cert = isotropy_kernel(c, 6, 8);
    CHECK(cert.dimension == 1);
    CHECK_FALSE(cert.rank_ambiguous);
    REQUIRE(cert.basis.size() == 1);
    CHECK(coefficient_distance(cert.basis[0], LoopMatrix::identity()) < 1e-8);
  }
  const auto control = isotropy_kernel(1.0, 6, 8, {KernelSource::kVacuum});
  CHECK(control.dimension > 1);
}

TEST_CASE("isotropy kernel dimension across truncations") {
  for (cplx c : {cplx{1.0}, cplx{2.0}, kI, cplx{2.0, -1.0}}) {
    for (int nz = 3; nz <= 8; ++nz) {
      for (int nl = 4; nl <= 12; ++nl) {
        const auto cert = isotropy_kernel(c, nz, nl);
        CAPTURE(c);
        CAPTURE(nz);
        CAPTURE(nl);
        CHECK(cert.dimension == predicted_dimension(nz, nl));
        CHECK_FALSE(cert.rank_ambiguous);
      }
    }
  }
}

TEST_CASE("truncation artifacts are lambda^n E21 and fail at higher z-order") {
  const auto cert = isotropy_kernel(1.0, 3, 7);
  REQUIRE(cert.dimension == 2);
  const LoopMatrix h = LoopMatrix::identity() + LoopMatrix::monomial(7, kE21);
  // Within z-orders 0..3 the probe sees no obstruction ...
  const auto low = isotropy_probe(build_frobenius(1.0, 4), h);
  CHECK(low.positive(1e-12));
  // ... but one more order exposes negative degrees.
  const auto high = isotropy_probe(build_frobenius(1.0, 5), h);
  CHECK(high.negative_obstruction > 1e-3);
}

TEST_CASE("without trace constraints scalar loops enter the kernel") {
  KernelOptions opt;
  opt.trace_constraints = false;
  CHECK(isotropy_kernel(1.0, 6, 8, opt).dimension == 1 + 4);
}

TEST_CASE("isotropy probe examples") {
  const auto sol = build_frobenius(1.0, 6);
  for (double s : {1.0, -1.0}) {
    const auto r = isotropy_probe(sol, LoopMatrix(Mat2::identity() * s));
    CHECK(r.positive(1e-13));
    CHECK(series_distance(r.w, LogSeries::constant(LoopMatrix(Mat2::identity() * s), 6), 5) < 1e-13);
  }
  const double eps = 1e-2;
  const auto r = isotropy_probe(sol, LoopMatrix::identity() + LoopMatrix::monomial(1, kE12 * eps));
  CHECK(r.log_obstruction > 0.5 * eps);
  CHECK(r.log_obstruction < 10.0 * eps);
  CHECK_THROWS_AS(isotropy_probe(sol, LoopMatrix::identity(), 1), Error);
}

TEST_CASE("leading z^0 term of L~^{-1} h L~") {
  std::mt19937_64 rng(31);
  const cplx c{1.5, 0.5};
  const auto sol = build_frobenius(c, 4);
  const auto h = test::random_twisted(rng, -3, 3);
  const auto w = isotropy_probe(sol, h).w;
  const LoopMatrix d = LoopMatrix::monomial(-1, Mat2::identity() * c);
  auto entry = [](const LoopMatrix& a, int row, int col) {
    std::vector<Mat2> out;
    for (const Mat2& m : a.coefficients()) {
      const cplx v = row == 1 ? (col == 1 ? m.a11 : m.a12) : (col == 1 ? m.a21 : m.a22);
      out.push_back(Mat2::diag(v, v));
    }
    LoopMatrix r(a.min_degree(), std::move(out));
    r.prune(0.0);
    return r;
  };
  auto as_entry = [](const LoopMatrix& scalar, int row, int col) {
    std::vector<Mat2> out;
    for (const Mat2& m : scalar.coefficients()) {
      Mat2 e;
      (row == 1 ? (col == 1 ? e.a11 : e.a12) : (col == 1 ? e.a21 : e.a22)) = m.a11;
      out.push_back(e);
    }
    return LoopMatrix(scalar.min_degree(), std::move(out));
  };
  const auto h11 = entry(h, 1, 1), h12 = entry(h, 1, 2), h21 = entry(h, 2, 1), h22 = entry(h, 2, 2);
  const auto dh12 = loop_mul(d, h12);
  const LoopMatrix s0 = h;
  const LoopMatrix s1 = as_entry(dh12, 1, 1) + as_entry(-1.0 * dh12, 2, 2) + as_entry(-1.0 * loop_mul(d, h11 - h22), 2, 1);
  const LoopMatrix s2 = as_entry(-1.0 * loop_mul(d, dh12), 2, 1);
  CHECK(coefficient_distance(w.term(0, 0), s0) < 1e-13);
  CHECK(coefficient_distance(w.term(1, 0), s1) < 1e-13);
  CHECK(coefficient_distance(w.term(2, 0), s2) < 1e-13);
  // c^2 h12^2 / lambda^2 is not the coefficient here; it differs from
  // -d^2 h12 unless h12 is 0 or -1 in the right units.
  const LoopMatrix printed = as_entry(-1.0 * loop_mul(loop_mul(d, d), loop_mul(h12, h12)), 2, 1);
  CHECK(coefficient_distance(w.term(2, 0), printed) > 1e-3);
}

TEST_CASE("W+ ODE residuals") {
  const std::vector<ZPoint> zs{ZPoint::principal({0.08, 0.02}), ZPoint::principal({-0.05, 0.07}),
                               ZPoint::principal({0.03, -0.09})};
  const std::vector<cplx> lambdas{1.0, std::polar(1.0, 1.1), std::polar(1.0, -2.4)};
  const auto id = LogSeries::constant(LoopMatrix::identity(), 8);
  const auto r0 = wplus_ode_residuals(id, 1.0, zs, lambdas);
  CHECK(r0.eq1 == 0.0);
  CHECK(r0.eq2 == 0.0);
  CHECK(r0.eq3 == 0.0);

  const auto sol = build_frobenius(1.0, 14);
  const auto neg = isotropy_probe(sol, LoopMatrix(-Mat2::identity())).w;
  const auto r1 = wplus_ode_residuals(neg, 1.0, zs, lambdas);
  CHECK(r1.eq1 < 1e-12);
  CHECK(r1.eq2 < 1e-12);
  CHECK(r1.eq3 < 1e-12);

  std::mt19937_64 rng(5);
  for (cplx c : {cplx{1.0}, cplx{2.0, -1.0}}) {
    const auto s = build_frobenius(c, 14);
    for (int trial = 0; trial < 3; ++trial) {
      const auto h = test::random_twisted(rng, 0, 4);
      const auto r = wplus_ode_residuals(isotropy_probe(s, h).w, c, zs, lambdas);
      CHECK(r.eq12_hold(1e-8));
      CHECK(r.consistent(1e-8, 1e-6));
    }
  }
  // A W that breaks Eqs 1-2 is reported as such.
  auto broken = LogSeries::constant(LoopMatrix::identity(), 8);
  broken.term(0, 1) = LoopMatrix::monomial(0, kE12);
  CHECK_FALSE(wplus_ode_residuals(broken, 1.0, zs, lambdas).eq12_hold(1e-8));
}

TEST_CASE("sqrt z versus f1 + f2 log z + f3 (log z)^2") {
  // Two sheets only tie three values of sqrt z per base point together,
  // which a quadratic in log z can match; from three sheets on the fit fails.
  CHECK(sqrt_log_fit_residual(2, 6) < 1e-6);
  const double three = sqrt_log_fit_residual(3, 6);
  const double four = sqrt_log_fit_residual(4, 6);
  MESSAGE("relative residual: three sheets " << three << ", four sheets " << four);
  CHECK(three > 0.1);
  CHECK(four > three);
  CHECK(sqrt_log_fit_residual(4, 10) > 0.1);
}

TEST_CASE("kernel certificate text report") {
  std::ostringstream os;
  write_certificate(os, isotropy_kernel(2.0, 3, 4));
  const auto s = os.str();
  CHECK(s.find("dimension: 1") != std::string::npos);
  CHECK(s.find("N_z: 3") != std::string::npos);
  CHECK(s.find("basis 0") != std::string::npos);
}
