#include "dpw/log_series.hpp"

#include <algorithm>

#include "dpw/errors.hpp"

namespace dpw {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double max_norm(const LoopMatrix& a) {
  double worst = 0.0;
  for (const Mat2& c : a.coefficients()) worst = std::max(worst, c.frobenius_norm());
  return worst;
}

LoopMatrix map_coefficients(const LoopMatrix& a, Mat2 (*f)(const Mat2&)) {
  std::vector<Mat2> c(a.coefficients().begin(), a.coefficients().end());
  for (auto& m : c) m = f(m);
  return LoopMatrix(a.min_degree(), std::move(c));
}

}  // namespace

LogSeries::LogSeries(int orders, int max_log_power, LoopOptions options)
    : orders_(orders), pmax_(max_log_power), options_(options),
      terms_(static_cast<std::size_t>((max_log_power + 1) * orders)) {
  if (orders < 1 || max_log_power < 0) throw Error(ErrorKind::kInvalidArgument, "bad LogSeries shape");
}

LogSeries LogSeries::constant(const LoopMatrix& a, int orders, int max_log_power, LoopOptions options) {
  LogSeries s(orders, max_log_power, options);
  s.term(0, 0) = a;
  return s;
}

bool LogSeries::sector_is_zero(int p) const {
  for (int j = 0; j < orders_; ++j) {
    if (!term(p, j).is_zero()) return false;
  }
  return true;
}

double LogSeries::sector_norm(int p) const {
  double worst = 0.0;
  for (int j = 0; j < orders_; ++j) worst = std::max(worst, max_norm(term(p, j)));
  return worst;
}

double LogSeries::negative_degree_norm() const {
  double worst = 0.0;
  for (int j = 0; j < orders_; ++j) {
    const auto& t = term(0, j);
    for (int d = t.min_degree(); d < 0 && d <= t.max_degree(); ++d) {
      worst = std::max(worst, t.coefficient(d).frobenius_norm());
    }
  }
  return worst;
}

int LogSeries::highest_log_power() const {
  for (int p = pmax_; p > 0; --p) {
    if (!sector_is_zero(p)) return p;
  }
  return 0;
}

LogSeries& LogSeries::operator+=(const LogSeries& o) {
  if (o.orders_ != orders_) throw Error(ErrorKind::kInvalidArgument, "LogSeries order mismatch");
  if (o.pmax_ > pmax_) {
    LogSeries grown(orders_, o.pmax_, options_);
    for (int p = 0; p <= pmax_; ++p) {
      for (int j = 0; j < orders_; ++j) grown.term(p, j) = term(p, j);
    }
    *this = std::move(grown);
  }
  for (int p = 0; p <= o.pmax_; ++p) {
    for (int j = 0; j < orders_; ++j) term(p, j) += o.term(p, j);
  }
  return *this;
}

LogSeries& LogSeries::operator-=(const LogSeries& o) {
  LogSeries neg = o;
  neg *= -1.0;
  return *this += neg;
}

LogSeries& LogSeries::operator*=(cplx s) {
  for (auto& t : terms_) t *= s;
  return *this;
}

LogSeries LogSeries::euler_derivative() const {
  LogSeries out(orders_, pmax_, options_);
  for (int p = 0; p <= pmax_; ++p) {
    for (int j = 0; j < orders_; ++j) {
      LoopMatrix t = term(p, j);
      t *= static_cast<double>(j);
      if (p + 1 <= pmax_) {
        LoopMatrix u = term(p + 1, j);
        u *= static_cast<double>(p + 1);
        t += u;
      }
      out.term(p, j) = std::move(t);
    }
  }
  return out;
}

LogSeries LogSeries::shift_log(cplx delta) const {
  // A (log + delta)^p = sum_q C(p, q) delta^{p-q} A log^q.
  LogSeries out(orders_, pmax_, options_);
  for (int p = 0; p <= pmax_; ++p) {
    for (int q = 0; q <= p; ++q) {
      const cplx w = binomial(p, q) * std::pow(delta, p - q);
      for (int j = 0; j < orders_; ++j) {
        if (term(p, j).is_zero()) continue;
        out.term(q, j) += w * term(p, j);
      }
    }
  }
  return out;
}

LogSeries LogSeries::adjugate() const {
  LogSeries out(orders_, pmax_, options_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out.terms_[i] = map_coefficients(terms_[i], [](const Mat2& m) { return m.adjugate(); });
  }
  return out;
}

LogSeries LogSeries::left_mul(const LoopMatrix& a) const {
  LogSeries out(orders_, pmax_, options_);
  for (std::size_t i = 0; i < terms_.size(); ++i) out.terms_[i] = loop_mul(a, terms_[i], options_);
  return out;
}

LogSeries LogSeries::right_mul(const LoopMatrix& a) const {
  LogSeries out(orders_, pmax_, options_);
  for (std::size_t i = 0; i < terms_.size(); ++i) out.terms_[i] = loop_mul(terms_[i], a, options_);
  return out;
}

LogSeries LogSeries::truncated(int orders) const {
  LogSeries out(std::min(orders, orders_), pmax_, options_);
  for (int p = 0; p <= pmax_; ++p) {
    for (int j = 0; j < out.orders_; ++j) out.term(p, j) = term(p, j);
  }
  return out;
}

Mat2 LogSeries::evaluate(const ZPoint& z, cplx lambda) const {
  Mat2 total = Mat2::zero();
  cplx logp = 1.0;
  for (int p = 0; p <= pmax_; ++p) {
    Mat2 acc = Mat2::zero();
    for (int j = orders_ - 1; j >= 0; --j) acc = acc * z.z + term(p, j).eval(lambda);
    total += acc * logp;
    logp *= z.log_z;
  }
  return total;
}

LogSeries multiply(const LogSeries& a, const LogSeries& b) {
  const int orders = std::min(a.orders_, b.orders_);
  const int pmax = std::max(a.pmax_, b.pmax_);
  LoopOptions options = a.options_;
  options.band = std::max(a.options_.band, b.options_.band);
  LogSeries out(orders, pmax, options);
  for (int p = 0; p <= a.pmax_; ++p) {
    if (a.sector_is_zero(p)) continue;
    for (int q = 0; q <= b.pmax_; ++q) {
      if (b.sector_is_zero(q)) continue;
      if (p + q > pmax) {
        throw Error(ErrorKind::kOverflowOfLogPower,
                    "product needs (log z)^" + std::to_string(p + q) + " but max is " + std::to_string(pmax));
      }
      for (int i = 0; i < orders; ++i) {
        if (a.term(p, i).is_zero()) continue;
        for (int j = 0; i + j < orders; ++j) {
          if (b.term(q, j).is_zero()) continue;
          out.term(p + q, i + j) += loop_mul(a.term(p, i), b.term(q, j), options);
        }
      }
    }
  }
  return out;
}

double series_distance(const LogSeries& a, const LogSeries& b, int through_order) {
  double worst = 0.0;
  const int pmax = std::max(a.max_log_power(), b.max_log_power());
  const LoopMatrix zero;
  for (int p = 0; p <= pmax; ++p) {
    for (int j = 0; j <= through_order; ++j) {
      const LoopMatrix& x = (p <= a.max_log_power() && j < a.orders()) ? a.term(p, j) : zero;
      const LoopMatrix& y = (p <= b.max_log_power() && j < b.orders()) ? b.term(p, j) : zero;
      worst = std::max(worst, coefficient_distance(x, y));
    }
  }
  return worst;
}

double series_norm(const LogSeries& a, int through_order) {
  double worst = 0.0;
  for (int p = 0; p <= a.max_log_power(); ++p) {
    for (int j = 0; j <= through_order && j < a.orders(); ++j) worst = std::max(worst, max_norm(a.term(p, j)));
  }
  return worst;
}

}  // namespace dpw
