#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/sym.hpp"
#include "support.hpp"

using namespace dpw;

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

LoopMatrix vacuum_frame(cplx z) {
  const CircleGrid grid(256);
  std::vector<Mat2> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    const cplx l = grid.point(m);
    v[m] = exp_involution(z / l - l * std::conj(z), kA);
  }
  return LoopMatrix::from_samples(v);
}

double norm(const AmbientPoint& p) { return std::hypot(p.x1, p.x2, p.x3); }

}  // namespace

TEST_CASE("sym-bobenko examples") {
  const auto p = sym_bobenko(LoopMatrix::identity(), 0.5, 1.0);
  CHECK(p.x1 == doctest::Approx(0.0));
  CHECK(p.x2 == doctest::Approx(0.0));
  CHECK(p.x3 == doctest::Approx(-1.0));
  CHECK(sym_bobenko(LoopMatrix::identity(), 2.0, kI).x3 == doctest::Approx(-0.25));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    const auto q = sym_bobenko(LoopMatrix(test::random_su2(rng)), -0.5, std::polar(1.0, 0.3 * i));
    CHECK(norm(q) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sym_bobenko(LoopMatrix(Mat2::diag(2.0, 0.5)), 0.5, 1.0), Error);
  CHECK_THROWS_AS(sym_bobenko(LoopMatrix::identity(), 0.0, 1.0), Error);
}

TEST_CASE("vacuum frames land on a cylinder") {
  const double h = 0.5;
  for (double x : {-0.3, 0.0, 0.4}) {
    for (double y : {-0.2, 0.1, 0.35}) {
      const auto p = sym_bobenko(vacuum_frame({x, y}), h, 1.0);
      CHECK(std::hypot(p.x2, p.x3) == doctest::Approx(1.0 / (2.0 * h)).epsilon(1e-10));
      CHECK(p.x1 == doctest::Approx(-4.0 * x / (2.0 * h)).epsilon(1e-10));
      CHECK(p.x2 == doctest::Approx(-std::sin(4.0 * y)).epsilon(1e-10));
    }
  }
}

TEST_CASE("frame changes by unitaries move the surface rigidly") {
  std::mt19937_64 rng(4);
  const double h = 0.5;
  const cplx l0 = std::polar(1.0, 0.7);
  std::vector<LoopMatrix> frames;
  for (cplx z : {cplx{0.1, 0.2}, cplx{-0.3, 0.05}, cplx{0.25, -0.4}, cplx{0.0, 0.3}}) frames.push_back(vacuum_frame(z));
  const Mat2 k = test::random_su2(rng);
  const auto u = test::random_unitary_loop(rng, 2, 0.5);
  std::vector<AmbientPoint> base, by_k, by_u;
  for (const auto& f : frames) {
    base.push_back(sym_bobenko(f, h, l0));
    by_k.push_back(sym_bobenko(loop_mul(LoopMatrix(k), f), h, l0));
    by_u.push_back(sym_bobenko(loop_mul(u, f), h, l0));
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(norm(by_k[i]) == doctest::Approx(norm(base[i])).epsilon(1e-12));
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      CHECK(std::abs(distance(by_k[i], by_k[j]) - distance(base[i], base[j])) < 1e-9);
      CHECK(std::abs(distance(by_u[i], by_u[j]) - distance(base[i], base[j])) < 1e-9);
    }
  }
}

TEST_CASE("translational period") {
  const AmbientPoint f{0.3, -0.2, 0.9};
  for (const Mat2& m : {Mat2::identity(), -Mat2::identity()}) {
    const auto g = translational_period(m, Mat2::zero(), f);
    CHECK(distance(g, f) < 1e-15);
  }
  // tau* f for F -> M F with M a unitary loop agrees with evaluating the
  // Sym-Bobenko formula on M F directly.
  std::mt19937_64 rng(8);
  const auto m = test::random_unitary_loop(rng, 2, 0.5);
  const auto dm = lambda_derivative(m);
  const auto frame = vacuum_frame({0.2, -0.1});
  for (double t : {0.0, 1.3, -2.2}) {
    const cplx l0 = std::polar(1.0, t);
    const double h = 0.5;
    const auto direct = sym_bobenko(loop_mul(m, frame), h, l0);
    const auto predicted = translational_period(m.eval(l0), kI * l0 * dm.eval(l0), sym_bobenko(frame, h, l0), h);
    CHECK(distance(direct, predicted) < 1e-10);
  }
}

TEST_CASE("sym formula for timelike surfaces") {
  const auto o = sym_sl2r(LoopMatrix(Mat2{2.0, 1.0, 1.0, 1.0}), kI);
  CHECK(std::hypot(o.x1, o.x2, o.x3) < 1e-15);
  CHECK(o.signature == Signature::kMinkowski);

  // F = exp(t (lambda + 1/lambda) s1): -i lambda F_lambda F^{-1} = 2 t sin(theta) s1.
  const double t = 0.4;
  const CircleGrid grid(128);
  std::vector<Mat2> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = exp_involution(t * (grid.point(m) + 1.0 / grid.point(m)), kSigma1);
  const auto f = LoopMatrix::from_samples(v);
  for (double theta : {0.3, 1.2, 2.5}) {
    const auto p = sym_sl2r(f, std::polar(1.0, theta));
    CHECK(p.x1 == doctest::Approx(2.0 * t * std::sin(theta)).epsilon(1e-11));
    CHECK(std::abs(p.x2) + std::abs(p.x3) < 1e-11);
  }

  // F = diag(e^{a lambda}, e^{-a lambda}) traces the x3 line as lambda0 moves.
  const double a = 0.3;
  auto diag_frame = [&](cplx l) { return Mat2::diag(std::exp(a * l), std::exp(-a * l)); };
  for (double theta : {0.0, 0.8, 2.0, 3.0}) {
    const cplx l0 = std::polar(1.0, theta);
    const auto p = sym_sl2r(diag_frame(l0), a * Mat2::diag(std::exp(a * l0), -std::exp(-a * l0)), l0);
    CHECK(std::abs(p.x1) + std::abs(p.x2) < 1e-14);
    CHECK(p.x3 == doctest::Approx(-a * std::cos(theta)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sym_sl2r(Mat2::zero(), Mat2::zero(), 1.0), Error);
}

TEST_CASE("point matrix round trip") {
  for (Signature s : {Signature::kEuclidean, Signature::kMinkowski}) {
    const AmbientPoint p{0.3, -1.1, 2.5, s};
    const auto q = from_matrix(to_matrix(p), s);
    CHECK(distance(p, q) < 1e-15);
  }
}
