#pragma once

// Truncated series sum_{p, j} A_{p,j}(lambda) z^j (log z)^p with loop-matrix
// coefficients, j = 0..orders-1 and p = 0..max_log_power.

#include <vector>

#include "dpw/loop_matrix.hpp"
#include "dpw/potentials.hpp"

namespace dpw {

class LogSeries {
 public:
  LogSeries(int orders, int max_log_power = 2, LoopOptions options = {});

  static LogSeries constant(const LoopMatrix& a, int orders, int max_log_power = 2, LoopOptions options = {});

  int orders() const { return orders_; }
  int max_log_power() const { return pmax_; }
  const LoopOptions& options() const { return options_; }

  const LoopMatrix& term(int p, int j) const { return terms_[index(p, j)]; }
  LoopMatrix& term(int p, int j) { return terms_[index(p, j)]; }

  bool sector_is_zero(int p) const;
  /// Largest coefficient norm in sector p.
  double sector_norm(int p) const;
  /// Largest norm of a negative-degree coefficient in sector 0.
  double negative_degree_norm() const;
  int highest_log_power() const;

  LogSeries& operator+=(const LogSeries& o);
  LogSeries& operator-=(const LogSeries& o);
  LogSeries& operator*=(cplx s);

  /// z d/dz, acting on both z^j and (log z)^p.
  LogSeries euler_derivative() const;
  /// Substitutes log z -> log z + delta.
  LogSeries shift_log(cplx delta) const;
  /// Coefficientwise adjugate; the inverse for det = 1.
  LogSeries adjugate() const;
  LogSeries left_mul(const LoopMatrix& a) const;
  LogSeries right_mul(const LoopMatrix& a) const;
  /// Keeps z-orders below `orders`.
  LogSeries truncated(int orders) const;

  Mat2 evaluate(const ZPoint& z, cplx lambda) const;

 private:
  std::size_t index(int p, int j) const { return static_cast<std::size_t>(p * orders_ + j); }

  int orders_;
  int pmax_;
  LoopOptions options_;
  std::vector<LoopMatrix> terms_;

  friend LogSeries multiply(const LogSeries& a, const LogSeries& b);
};

/// Product of two series; throws OverflowOfLogPower if a nonzero product
/// sector would exceed the larger max_log_power of the operands.
LogSeries multiply(const LogSeries& a, const LogSeries& b);
inline LogSeries operator*(const LogSeries& a, const LogSeries& b) { return multiply(a, b); }
inline LogSeries operator+(LogSeries a, const LogSeries& b) { return a += b; }
inline LogSeries operator-(LogSeries a, const LogSeries& b) { return a -= b; }

/// Largest coefficient distance over z-orders 0..through_order.
double series_distance(const LogSeries& a, const LogSeries& b, int through_order);
/// Largest coefficient norm over z-orders 0..through_order.
double series_norm(const LogSeries& a, int through_order);

}  // namespace dpw
