#pragma once

// Seeded random loops with known Iwasawa factors, shared by the tests, the
// certificate suites and the CLI.

#include <cmath>
#include <random>
#include <vector>

#include "dpw/loop_matrix.hpp"
#include "dpw/mat2.hpp"

namespace dpw::synthetic {

inline cplx random_cplx(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

// Twisted traceless coefficient of degree d.
inline Mat2 random_twisted_coefficient(std::mt19937_64& rng, int d, double scale) {
  if (d % 2 == 0) {
    const cplx a = random_cplx(rng, scale);
    return Mat2::diag(a, -a);
  }
  return Mat2::offdiag(random_cplx(rng, scale), random_cplx(rng, scale));
}

// Pointwise exp of a traceless Laurent polynomial, recovered on the grid.
inline LoopMatrix loop_exp(const LoopMatrix& x, const LoopOptions& options = {}) {
  auto v = x.sample(CircleGrid(options.grid));
  for (auto& m : v) m = exp_traceless(m);
  return LoopMatrix::from_samples(v, options);
}

// exp of X with X(lambda)^H = -J X(lambda) J on the circle, J = diag(1, s):
// s = 1 gives Lambda SU(2), s = -1 gives Lambda SU(1,1).
inline LoopMatrix random_unitary_loop(std::mt19937_64& rng, int degree, double scale, double s = 1.0) {
  const Mat2 j = Mat2::diag(1.0, s);
  std::vector<Mat2> c(static_cast<std::size_t>(2 * degree + 1));
  const double a = random_cplx(rng, scale).real();
  c[static_cast<std::size_t>(degree)] = Mat2::diag(cplx{0.0, a}, cplx{0.0, -a});
  for (int n = 1; n <= degree; ++n) {
    const Mat2 x = random_twisted_coefficient(rng, n, std::pow(scale, n));
    c[static_cast<std::size_t>(degree + n)] = x;
    c[static_cast<std::size_t>(degree - n)] = -(j * x.adjoint() * j);
  }
  return loop_exp(LoopMatrix(-degree, std::move(c)));
}

// diag(r, 1/r) exp(Y) with Y of degrees 1..degree: an element of Lambda_+^R.
inline LoopMatrix random_positive_loop(std::mt19937_64& rng, int degree, double scale) {
  std::vector<Mat2> c;
  for (int n = 1; n <= degree; ++n) c.push_back(random_twisted_coefficient(rng, n, std::pow(scale, n)));
  const double r = std::exp(random_cplx(rng, 0.3).real());
  return loop_mul(LoopMatrix(Mat2::diag(r, 1.0 / r)), loop_exp(LoopMatrix(1, std::move(c))));
}

}  // namespace dpw::synthetic
