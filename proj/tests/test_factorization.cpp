#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/factorization.hpp"
#include "dpw/kernels.hpp"
#include "support.hpp"

using namespace dpw;

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

// exp(lambda^n s A) on the default grid.
LoopMatrix exp_monomial(int n, cplx s) {
  const CircleGrid grid(256);
  std::vector<Mat2> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = exp_involution(s * std::pow(grid.point(m), n), kA);
  return LoopMatrix::from_samples(v);
}

double det_defect(const LoopMatrix& a) {
  double worst = 0.0;
  for (const Mat2& m : a.sample(CircleGrid(256))) worst = std::max(worst, std::abs(m.det() - 1.0));
  return worst;
}

}  // namespace

TEST_CASE("spectral factorization examples") {
  CHECK(coefficient_distance(spectral_factorize(LoopMatrix::identity()), LoopMatrix::identity()) < 1e-14);
  const auto b = spectral_factorize(LoopMatrix(Mat2::diag(4.0, 0.25)));
  CHECK(coefficient_distance(b, LoopMatrix(Mat2::diag(2.0, 0.5))) < 1e-14);

  const auto e = exp_monomial(1, 0.3);
  const auto q = loop_mul(loop_star(e), e);
  const auto be = spectral_factorize(q);
  CHECK(coefficient_distance(be, e) < 1e-12);
  CHECK(sample_distance(loop_mul(loop_star(be), be), q, CircleGrid(256)) < 1e-12);
}

TEST_CASE("spectral factor of a general positive loop") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto b0 = test::random_positive_loop(rng, 3, 0.6);
    const auto q = loop_mul(loop_star(b0), b0);
    const auto samples = q.sample(CircleGrid(128));
    const auto sf = spectral_factor(samples);
    CHECK(sf.residual < 1e-12);
    CHECK(sf.b0.a21 == 0.0);
    CHECK(sf.b0.a11.real() > 0.0);
    CHECK(sf.b0.a22.real() > 0.0);
    CHECK(std::abs(sf.b0.a11.imag()) + std::abs(sf.b0.a22.imag()) == 0.0);
    const auto b = LoopMatrix::from_samples(sf.b);
    CHECK(coefficient_distance(b, b0) < 1e-10);
    CHECK(b.min_degree() >= 0);
    // B^{-1} is a positive loop too.
    CHECK(LoopMatrix::from_samples(sf.b_inv).min_degree() >= 0);
  }
}

TEST_CASE("spectral factorization rejects non-positive Q") {
  CHECK_THROWS_AS(spectral_factorize(LoopMatrix(Mat2::diag(1.0, -1.0))), Error);
  try {
    spectral_factorize(LoopMatrix(Mat2::diag(1.0, 0.0)));
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotPositive);
  }
  // |1 + lambda|^2 id vanishes at lambda = -1.
  const auto p = LoopMatrix::identity() + LoopMatrix::monomial(1, Mat2::identity());
  CHECK_THROWS_AS(spectral_factorize(loop_mul(loop_star(p), p)), Error);
}

TEST_CASE("iwasawa su2 examples") {
  const auto id = iwasawa_su2(LoopMatrix::identity());
  CHECK(coefficient_distance(id.f, LoopMatrix::identity()) < 1e-14);
  CHECK(coefficient_distance(id.b, LoopMatrix::identity()) < 1e-14);

  std::mt19937_64 rng(11);
  const Mat2 u = test::random_su2(rng);
  const auto cu = iwasawa_su2(LoopMatrix(u));
  CHECK(coefficient_distance(cu.f, LoopMatrix(u)) < 1e-13);
  CHECK(coefficient_distance(cu.b, LoopMatrix::identity()) < 1e-13);

  const cplx z{0.4, 0.2};
  const auto vac = iwasawa_su2(exp_monomial(-1, z));
  const CircleGrid grid(256);
  std::vector<Mat2> f(grid.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    const cplx l = grid.point(m);
    f[m] = exp_involution(z / l - l * std::conj(z), kA);
  }
  CHECK(coefficient_distance(vac.f, LoopMatrix::from_samples(f)) < 1e-9);
  CHECK(coefficient_distance(vac.b, exp_monomial(1, std::conj(z))) < 1e-9);
  CHECK(vac.unitarity < 1e-12);
  CHECK(vac.residual < 1e-12);
}

TEST_CASE("iwasawa su2 synthetic round trips and invariants") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const auto f0 = test::random_unitary_loop(rng, 3, 0.5);
    const auto b0 = test::random_positive_loop(rng, 3, 0.5);
    const auto l = loop_mul(f0, b0);
    const auto r = iwasawa_su2(l);
    CHECK(coefficient_distance(r.f, f0) < 1e-8);
    CHECK(coefficient_distance(r.b, b0) < 1e-8);
    CHECK(r.residual < 1e-8);
    CHECK(r.unitarity < 1e-8);
    CHECK(r.f.twist_defect() < 1e-10);
    CHECK(r.b.twist_defect() < 1e-10);
    CHECK(det_defect(r.f) < 1e-9);
    CHECK(det_defect(r.b) < 1e-9);
    const Mat2 bz = r.b.coefficient(0);
    CHECK(bz.is_diagonal(1e-12));
    CHECK(bz.a11.real() > 0.0);
    CHECK(std::abs(bz.a11.imag()) < 1e-12);

    const auto again = iwasawa_su2(r.f);
    CHECK(coefficient_distance(again.f, r.f) < 2e-8);
    CHECK(coefficient_distance(again.b, LoopMatrix::identity()) < 2e-8);
  }
}

TEST_CASE("sampled and coefficient iwasawa agree") {
  std::mt19937_64 rng(19);
  const auto l = loop_mul(test::random_unitary_loop(rng, 2, 0.5), test::random_positive_loop(rng, 2, 0.5));
  const auto samples = l.sample(CircleGrid(64));
  const auto s = iwasawa_su2(samples);
  const auto c = iwasawa_su2(l);
  REQUIRE(s.f.size() >= samples.size());
  const auto cf = c.f.sample(CircleGrid(s.f.size()));
  double worst = 0.0;
  for (std::size_t m = 0; m < cf.size(); ++m) worst = std::max(worst, distance(cf[m], s.f[m]));
  CHECK(worst < 1e-10);
  CHECK(s.unitarity < 1e-12);
}

TEST_CASE("ill-conditioned loops are split on a refined grid") {
  const CircleGrid grid(32);
  std::vector<Mat2> l(grid.size());
  for (std::size_t m = 0; m < l.size(); ++m) {
    const cplx inv = 1.0 / grid.point(m);
    l[m] = Mat2{1.0, 30.0 * inv, 0.0, 1.0} * exp_involution(0.7 * inv, kA);
  }
  const auto s = iwasawa_su2(l);
  MESSAGE("grid " << s.f.size() << ", section " << s.section);
  CHECK(s.f.size() > grid.size());
  CHECK(s.unitarity < 1e-12);
  const auto fine = fourier::resample(l, s.f.size());
  double recon = 0.0, det = 0.0;
  for (std::size_t m = 0; m < fine.size(); ++m) {
    recon = std::max(recon, distance(s.f[m] * s.b[m], fine[m]) / fine[m].frobenius_norm());
    det = std::max(det, std::abs(s.f[m].det() - 1.0));
  }
  CHECK(recon < 1e-12);
  CHECK(det < 1e-12);
  LoopOptions lo;
  lo.grid = s.f.size();
  lo.band = static_cast<int>(s.f.size() / 2);
  lo.drop_tol = 1e-12;
  const auto f = LoopMatrix::from_samples(s.f, lo);
  double trace = 0.0;
  for (std::size_t m = 0; m < 8; ++m) {
    const cplx l0 = CircleGrid(8).point(m);
    trace = std::max(trace, std::abs((f.eval(l0).adjugate() * lambda_derivative(f).eval(l0)).trace()));
  }
  CHECK(trace < 1e-8);
}

TEST_CASE("scalar and avx2 kernels give the same factorization") {
  std::mt19937_64 rng(23);
  const auto l = loop_mul(test::random_unitary_loop(rng, 2, 0.5), test::random_positive_loop(rng, 2, 0.5));
  const auto samples = l.sample(CircleGrid(64));
  kernels::set_isa(kernels::Isa::kScalar);
  const auto a = iwasawa_su2(samples);
  kernels::set_isa(kernels::best_available_isa());
  const auto b = iwasawa_su2(samples);
  double worst = 0.0;
  for (std::size_t m = 0; m < a.f.size(); ++m) worst = std::max(worst, distance(a.f[m], b.f[m]));
  CHECK(worst < 1e-13);
}

TEST_CASE("iwasawa su11 cells") {
  const auto id = iwasawa_su11(LoopMatrix::identity());
  CHECK(id.report.cell == Cell::kB1);
  REQUIRE(id.pair);
  CHECK(coefficient_distance(id.pair->f, LoopMatrix::identity()) < 1e-14);
  CHECK(coefficient_distance(id.pair->b, LoopMatrix::identity()) < 1e-14);

  const LoopMatrix omega(-1, {Mat2::offdiag(0.0, 1.0), Mat2::zero(), Mat2::offdiag(-1.0, 0.0)});
  const auto w = iwasawa_su11(omega);
  CHECK(w.report.cell == Cell::kB2);
  CHECK_FALSE(w.pair);
  CHECK_THROWS_AS(require_big_cell(w), Error);

  // [[1, 0], [t / lambda, 1]] crosses the boundary at |t| = 1.
  auto unipotent = [](double t) { return LoopMatrix::identity() + LoopMatrix::monomial(-1, Mat2::offdiag(0.0, t)); };
  CHECK(iwasawa_su11(unipotent(0.5)).report.cell == Cell::kB1);
  const auto edge = iwasawa_su11(unipotent(1.0));
  CHECK(edge.report.cell == Cell::kBoundary);
  try {
    require_big_cell(edge);
    FAIL("expected CellBoundary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCellBoundary);
  }
}

TEST_CASE("iwasawa su11 synthetic round trips") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 4; ++trial) {
    const auto f0 = test::random_unitary_loop(rng, 2, 0.4, -1.0);
    const auto b0 = test::random_positive_loop(rng, 2, 0.4);
    const auto r = iwasawa_su11(loop_mul(f0, b0));
    REQUIRE(r.report.cell == Cell::kB1);
    CHECK(coefficient_distance(r.pair->f, f0) < 1e-6);
    CHECK(coefficient_distance(r.pair->b, b0) < 1e-6);
    CHECK(r.pair->unitarity < 1e-6);
  }
}
