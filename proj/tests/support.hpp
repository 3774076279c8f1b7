#pragma once

#include <random>
#include <vector>

#include "dpw/loop_matrix.hpp"
#include "dpw/mat2.hpp"
#include "dpw/synthetic.hpp"

namespace dpw::test {

using synthetic::loop_exp;
using synthetic::random_cplx;
using synthetic::random_positive_loop;
using synthetic::random_twisted_coefficient;
using synthetic::random_unitary_loop;

inline Mat2 random_mat2(std::mt19937_64& rng, double scale = 1.0) {
  return {random_cplx(rng, scale), random_cplx(rng, scale), random_cplx(rng, scale), random_cplx(rng, scale)};
}

inline std::vector<Mat2> random_mat2s(std::mt19937_64& rng, std::size_t n) {
  std::vector<Mat2> out(n);
  for (auto& m : out) m = random_mat2(rng);
  return out;
}

// Twisted Laurent polynomial with degrees in [lo, hi] and decaying coefficients.
inline LoopMatrix random_twisted(std::mt19937_64& rng, int lo, int hi, double scale = 0.5) {
  std::vector<Mat2> c;
  for (int d = lo; d <= hi; ++d) {
    const double s = std::pow(scale, std::abs(d));
    Mat2 m = random_mat2(rng, s);
    if (d % 2 == 0) {
      m.a12 = m.a21 = 0.0;
    } else {
      m.a11 = m.a22 = 0.0;
    }
    c.push_back(m);
  }
  return LoopMatrix(lo, std::move(c));
}

inline Mat2 random_su2(std::mt19937_64& rng) {
  cplx a = random_cplx(rng), b = random_cplx(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  return {a, -std::conj(b), b, std::conj(a)};
}

}  // namespace dpw::test
