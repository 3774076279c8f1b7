#include <random>
#include <sstream>

#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/loop_matrix.hpp"
#include "support.hpp"

using namespace dpw;

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);
const Mat2 kE12{0.0, 1.0, 0.0, 0.0};
const Mat2 kE21{0.0, 0.0, 1.0, 0.0};

LoopMatrix omega() { return LoopMatrix(-1, {Mat2::offdiag(0.0, 1.0), Mat2::zero(), Mat2::offdiag(-1.0, 0.0)}); }

// exp(s lambda^{-1} A) from its closed form, sampled and recovered.
LoopMatrix exp_inv_lambda(cplx s) {
  const CircleGrid grid(256);
  std::vector<Mat2> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = exp_involution(s / grid.point(m), kA);
  return LoopMatrix::from_samples(v);
}

}  // namespace

TEST_CASE("loop_mul examples") {
  const auto id = LoopMatrix::identity();
  CHECK(coefficient_distance(id * id, id) == 0.0);
  CHECK(coefficient_distance(omega() * omega(), LoopMatrix(-Mat2::identity())) < 1e-15);
  const auto a = LoopMatrix::monomial(-1, kA);
  CHECK(coefficient_distance(a * a, LoopMatrix::monomial(-2, Mat2::identity())) < 1e-15);
}

TEST_CASE("loop_mul reports truncation tail") {
  LoopOptions opt;
  opt.band = 2;
  const auto a = LoopMatrix::monomial(-1, kA);
  const auto p = loop_mul(a, loop_mul(a, a, opt), opt);
  CHECK(p.is_zero());
  CHECK(p.tail() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("loop_inverse examples") {
  CHECK(coefficient_distance(loop_inverse(LoopMatrix::identity()), LoopMatrix::identity()) < 1e-14);
  auto neg = omega();
  neg *= -1.0;
  CHECK(coefficient_distance(loop_inverse(omega()), neg) < 1e-14);
  const auto inv = loop_inverse(exp_inv_lambda(1.0));
  CHECK(coefficient_distance(inv, exp_inv_lambda(-1.0)) < 1e-13);
  const auto prod = loop_mul(exp_inv_lambda(1.0), inv);
  CHECK(sample_distance(prod, LoopMatrix::identity(), CircleGrid(256)) < 1e-10);
}

TEST_CASE("loop_inverse rejects singular samples") {
  const LoopMatrix singular(Mat2::diag(1.0, 0.0));
  CHECK_THROWS_AS(loop_inverse(singular), Error);
  try {
    loop_inverse(singular);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSingularOnCircle);
  }
}

TEST_CASE("loop_eval examples") {
  CHECK(distance(loop_eval(LoopMatrix::identity(), {0.3, 2.0}), Mat2::identity()) == 0.0);
  CHECK(distance(loop_eval(omega(), 1.0), Mat2{0.0, -1.0, 1.0, 0.0}) < 1e-15);
  const auto x = LoopMatrix::monomial(-1, kA);
  CHECK(distance(loop_eval(x, kI), Mat2{0.0, -kI, -kI, 0.0}) < 1e-15);
}

TEST_CASE("loop_star examples") {
  CHECK(coefficient_distance(loop_star(LoopMatrix::identity()), LoopMatrix::identity()) == 0.0);
  CHECK(coefficient_distance(loop_star(LoopMatrix::monomial(1, kE12)), LoopMatrix::monomial(-1, kE21)) == 0.0);
  std::mt19937_64 rng(2);
  const LoopMatrix f(test::random_su2(rng));
  CHECK(coefficient_distance(loop_star(f), loop_inverse(f)) < 1e-14);
}

TEST_CASE("loop_star is the pointwise adjoint on the circle") {
  std::mt19937_64 rng(4);
  const auto a = test::random_twisted(rng, -5, 6);
  const CircleGrid grid(64);
  const auto sa = a.sample(grid);
  const auto ss = loop_star(a).sample(grid);
  for (std::size_t m = 0; m < grid.size(); ++m) CHECK(distance(ss[m], sa[m].adjoint()) < 1e-13);
}

TEST_CASE("lambda_derivative examples") {
  CHECK(lambda_derivative(LoopMatrix::identity()).is_zero());
  const auto a = LoopMatrix::monomial(1, kE12) + LoopMatrix::monomial(-1, kE21);
  const auto expected = LoopMatrix::monomial(0, kE12) + LoopMatrix::monomial(-2, -kE21);
  CHECK(coefficient_distance(lambda_derivative(a), expected) == 0.0);
  // lambda d/dlambda exp(lambda^{-1} A) at lambda = 1 is -A exp(A).
  const Mat2 got = loop_eval(lambda_derivative(exp_inv_lambda(1.0)), 1.0);
  CHECK(distance(got, -(kA * exp_involution(1.0, kA))) < 1e-12);
}

TEST_CASE("parity closure") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = test::random_twisted(rng, -4, 5);
    const auto b = test::random_twisted(rng, -3, 3);
    CHECK(a.is_twisted());
    CHECK(loop_mul(a, b).is_twisted(1e-12));
    CHECK(loop_star(a).is_twisted(1e-12));
    // Invertibility: a small twisted perturbation of the identity.
    auto near_id = LoopMatrix::identity() + 0.2 * b;
    CHECK(loop_inverse(near_id).is_twisted(1e-12));
  }
}

TEST_CASE("coefficient and sample round trip") {
  std::mt19937_64 rng(8);
  const auto a = test::random_twisted(rng, -10, 10, 0.9);
  const CircleGrid grid(64);
  REQUIRE(grid.resolves(a.min_degree(), a.max_degree()));
  const auto back = LoopMatrix::from_samples(a.sample(grid));
  CHECK(coefficient_distance(a, back) < 1e-12);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    CHECK(distance(back.cached_samples()[m], a.eval(grid.point(m))) < 1e-12 * (1.0 + a.eval(grid.point(m)).frobenius_norm()));
  }
}

TEST_CASE("resample evaluates the interpolant on a finer grid") {
  std::mt19937_64 rng(9);
  const auto a = test::random_twisted(rng, -10, 10, 0.9);
  const auto fine = fourier::resample(a.sample(CircleGrid(32)), 96);
  const CircleGrid grid(96);
  double worst = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) worst = std::max(worst, distance(fine[m], a.eval(grid.point(m))));
  CHECK(worst < 1e-12);

  // lambda^8 + lambda^-8 occupies only the Nyquist bin of a 16-point grid.
  const auto cosine = LoopMatrix(-8, [] {
    std::vector<Mat2> c(17);
    c.front() = Mat2::identity();
    c.back() = Mat2::identity();
    return c;
  }());
  const auto up = fourier::resample(cosine.sample(CircleGrid(16)), 64);
  worst = 0.0;
  for (std::size_t m = 0; m < 64; ++m) worst = std::max(worst, distance(up[m], cosine.eval(CircleGrid(64).point(m))));
  CHECK(worst < 1e-13);
  CHECK_THROWS_AS(fourier::resample(up, 32), Error);
}

TEST_CASE("det multiplicativity and star anti-automorphism") {
  std::mt19937_64 rng(9);
  const CircleGrid grid(128);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = test::random_twisted(rng, -6, 6);
    const auto b = test::random_twisted(rng, -6, 6);
    const auto ab = loop_mul(a, b);
    const auto sa = a.sample(grid), sb = b.sample(grid), sab = ab.sample(grid);
    for (std::size_t m = 0; m < grid.size(); ++m) CHECK(std::abs(sab[m].det() - sa[m].det() * sb[m].det()) <= 1e-10);
    CHECK(coefficient_distance(loop_star(ab), loop_mul(loop_star(b), loop_star(a))) <= 1e-11);
  }
}

TEST_CASE("coefficient dump round trip") {
  std::mt19937_64 rng(10);
  const auto a = test::random_twisted(rng, -7, 9);
  std::stringstream ss;
  ss << "# header\n";
  write_coefficients(ss, a);
  const auto b = read_coefficients(ss);
  CHECK(coefficient_distance(a, b) <= 1e-15);
  std::stringstream bad("3 1 2 x\n");
  CHECK_THROWS_AS(read_coefficients(bad), Error);
}
