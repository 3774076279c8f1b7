#include <cmath>

#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/frobenius.hpp"
#include "dpw/holonomy.hpp"

using namespace dpw;

namespace {

const std::vector<cplx> kCs{1.0, 2.0, kI, {2.0, -1.0}};

}  // namespace

TEST_CASE("frobenius low orders") {
  const auto sol = build_frobenius(1.0, 6);
  CHECK(coefficient_distance(sol.p[0], LoopMatrix::identity()) == 0.0);
  CHECK(sol.eta1_coeff[0] == 1.0);
  CHECK(sol.eta2_coeff[0] == 1.0);
  CHECK(distance(sol.p_value(1e-12, 1.0), Mat2::identity()) < 1e-10);

  const cplx c{2.0, -1.0};
  const auto s2 = build_frobenius(c, 4);
  const LoopMatrix p1 = LoopMatrix::monomial(-3, Mat2{0.0, 0.0, -2.0 * c * c, 0.0}) +
                        LoopMatrix::monomial(-2, Mat2::diag(c, -c)) +
                        LoopMatrix::monomial(-1, Mat2{0.0, 1.0, 0.0, 0.0});
  CHECK(coefficient_distance(s2.p[1], p1) < 1e-15);

  const ZPoint e{std::exp(1.0), 1.0};
  const cplx l = std::polar(1.0, 0.4);
  CHECK(distance(s2.l_hat_value(e, l), Mat2{1.0, 0.0, c / l, 1.0}) < 1e-15);
}

TEST_CASE("L^ is exp(log z D) and D^2 = 0") {
  const auto sol = build_frobenius(kI, 4);
  CHECK(loop_mul(sol.d, sol.d).is_zero());
}

TEST_CASE("eta tables against independent oracles") {
  for (cplx c : kCs) {
    const auto sol = build_frobenius(c, 12);
    for (std::size_t j = 0; j < sol.eta1_coeff.size(); ++j) {
      const double oracle = 1.0 / (std::tgamma(j + 1.0) * std::tgamma(j + 2.0));
      CHECK(std::abs(sol.eta1_coeff[j] - oracle) <= 1e-14 * oracle + 1e-300);
    }
    const auto rec = eta2_recurrence(static_cast<int>(sol.eta2_coeff.size()), 0.0);
    for (std::size_t j = 0; j < sol.eta2_coeff.size(); ++j) {
      CHECK(std::abs(sol.eta2_coeff[j] - rec[j]) <= 1e-14 * (1.0 + std::abs(rec[j])));
    }
    CHECK(sol.eta2_coeff[1] == 0.0);
  }
}

TEST_CASE("eta1 substitution into z X'' = q X") {
  // X = sum eta1_j z^{j+1}; compare coefficients of z^j on both sides.
  const auto a = eta1_recurrence(15);
  for (int j = 1; j < 15; ++j) {
    const cplx lhs = double(j + 1) * j * a[j];
    const cplx rhs = a[j - 1];
    CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs));
  }
}

TEST_CASE("printed product form of P matches the order-matched P") {
  for (cplx c : kCs) {
    const auto sol = build_frobenius(c, 9);
    for (cplx t : {cplx{0.0}, cplx{0.7}, cplx{0.0, 2.0}}) {
      CAPTURE(c);
      CAPTURE(t);
      CHECK(series_distance(printed_p(sol, t), sol.p_series(), sol.orders - 1) < 1e-12);
    }
  }
}

TEST_CASE("dL~ = L~ xi through order N_z - 2") {
  for (cplx c : kCs) {
    const auto sol = build_frobenius(c, 10);
    CHECK(series_norm(frobenius_residual(sol), sol.orders - 2) < 1e-12);
    CHECK(column_ode_residual(sol, sol.orders - 2) < 1e-12);
  }
}

TEST_CASE("tau action on L~ is the analytic monodromy") {
  for (cplx c : kCs) {
    const auto sol = build_frobenius(c, 8);
    const auto lt = sol.l_tilde();
    const auto shifted = lt.shift_log(cplx{0.0, 2.0 * kPi});
    const auto predicted = lt.left_mul(analytic_monodromy(sol));
    CHECK(series_distance(shifted, predicted, sol.orders - 1) < 1e-12);
  }
}

TEST_CASE("analytic monodromy examples") {
  const auto m1 = analytic_monodromy(build_frobenius(1.0, 3));
  CHECK(distance(m1.eval(kI), Mat2{1.0, 0.0, 2.0 * kPi, 1.0}) < 1e-14);
  CHECK(distance(m1.eval(1.0), Mat2{1.0, 0.0, 2.0 * kPi * kI, 1.0}) < 1e-14);
}

TEST_CASE("pointwise L~ solves the ODE") {
  const cplx c{0.5, 1.0};
  const auto sol = build_frobenius(c, 3);
  const auto xi = make_xi(-1, c);
  const ZPoint z0 = ZPoint::principal({0.6, 0.2});
  PathSpec path(z0);
  path.line_to({-0.3, 0.9});
  for (cplx l : {cplx{1.0}, std::polar(1.0, 2.5)}) {
    const Mat2 end = integrate(xi, path, sol.l_tilde_value(z0, l), l);
    CHECK(distance(end, sol.l_tilde_value(path.end(), l)) < 1e-9);
    CHECK(std::abs(sol.l_tilde_value(z0, l).det() - 1.0) < 1e-12);
  }
}

TEST_CASE("integrated monodromy of xi_{-1} matches the analytic formula") {
  const CircleGrid grid(64);
  for (cplx c : {cplx{1.0}, cplx{2.0}, kI}) {
    const auto sol = build_frobenius(c, 3);
    const ZPoint base = ZPoint::principal(1.0);
    std::vector<Mat2> init;
    for (cplx l : grid.points()) init.push_back(sol.l_tilde_value(base, l));
    const auto report = monodromy(make_xi(-1, c), base, grid, init);
    const auto oracle = analytic_monodromy(sol);
    double worst = 0.0;
    for (std::size_t m = 0; m < grid.size(); ++m) worst = std::max(worst, distance(report.m[m], oracle.eval(grid.point(m))));
    CAPTURE(c);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("log series overflow is loud") {
  const auto sol = build_frobenius(1.0, 4);
  const auto lh = sol.l_hat(1);
  CHECK_THROWS_AS(multiply(lh, lh), Error);
  CHECK_NOTHROW(multiply(sol.l_hat(2), sol.l_hat(2)));
}

TEST_CASE("log series euler derivative and evaluation agree") {
  const auto sol = build_frobenius(cplx{1.0, 0.5}, 30);
  const auto lt = sol.l_tilde();
  const auto d = lt.euler_derivative();
  const ZPoint z = ZPoint::principal({0.3, -0.2});
  const cplx l = std::polar(1.0, 0.9);
  const double h = 1e-6;
  const ZPoint zp{z.z + h, z.log_z + std::log(1.0 + h / z.z)};
  const ZPoint zm{z.z - h, z.log_z + std::log(1.0 - h / z.z)};
  const Mat2 fd = (lt.evaluate(zp, l) - lt.evaluate(zm, l)) * (z.z / (2.0 * h));
  CHECK(distance(fd, d.evaluate(z, l)) < 1e-7);
  CHECK(distance(lt.evaluate(z, l), sol.l_tilde_value(z, l)) < 1e-12);
}
