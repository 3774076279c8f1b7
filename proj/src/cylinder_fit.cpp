#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "dpw/errors.hpp"
#include "dpw/surface.hpp"

namespace dpw {

namespace {

using Vec3 = Eigen::Vector3d;

struct Cylinder {
  Vec3 p;
  Vec3 d;
  double r;
};

Eigen::VectorXd residuals(const std::vector<Vec3>& x, const Cylinder& c) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Vec3 w = x[k] - c.p;
    out(static_cast<Eigen::Index>(k)) = (w - w.dot(c.d) * c.d).norm() - c.r;
  }
  return out;
}

// Orthonormal e1, e2 perpendicular to d.
std::pair<Vec3, Vec3> frame(const Vec3& d) {
  const Vec3 t = std::abs(d.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = d.cross(t).normalized();
  return {e1, d.cross(e1)};
}

// Local coordinates q = (a, b, s, t, dr): d' ~ d + a e1 + b e2, p' = p + s e1 + t e2.
Cylinder moved(const Cylinder& c, const Eigen::Matrix<double, 5, 1>& q) {
  const auto [e1, e2] = frame(c.d);
  return {c.p + q(2) * e1 + q(3) * e2, (c.d + q(0) * e1 + q(1) * e2).normalized(), c.r + q(4)};
}

// Algebraic circle fit of the points projected on the plane normal to d.
Cylinder initial_guess(const std::vector<Vec3>& x, const Vec3& centroid, const Vec3& d) {
  const auto [e1, e2] = frame(d);
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vec3 w = x[static_cast<std::size_t>(k)] - centroid;
    const double u = w.dot(e1), v = w.dot(e2);
    a(k, 0) = u;
    a(k, 1) = v;
    a(k, 2) = 1.0;
    b(k) = -(u * u + v * v);
  }
  const Eigen::Vector3d s = a.colPivHouseholderQr().solve(b);
  const double cu = -0.5 * s(0), cv = -0.5 * s(1);
  const double r2 = cu * cu + cv * cv - s(2);
  return {centroid + cu * e1 + cv * e2, d, std::sqrt(std::max(r2, 0.0))};
}

Cylinder refine(const std::vector<Vec3>& x, Cylinder c) {
  double mu = 1e-3;
  Eigen::VectorXd r = residuals(x, c);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < 200 && cost > 0.0; ++iter) {
    Eigen::MatrixXd jac(r.size(), 5);
    for (int k = 0; k < 5; ++k) {
      Eigen::Matrix<double, 5, 1> q = Eigen::Matrix<double, 5, 1>::Zero();
      const double step = 1e-7;
      q(k) = step;
      const Eigen::VectorXd plus = residuals(x, moved(c, q));
      q(k) = -step;
      jac.col(k) = (plus - residuals(x, moved(c, q))) / (2.0 * step);
    }
    const Eigen::Matrix<double, 5, 5> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 5, 1> g = jac.transpose() * r;
    bool improved = false;
    while (mu < 1e12) {
      Eigen::Matrix<double, 5, 5> a = jtj;
      a.diagonal() *= 1.0 + mu;
      const Eigen::Matrix<double, 5, 1> q = -a.ldlt().solve(g);
      const Cylinder trial = moved(c, q);
      const Eigen::VectorXd rt = residuals(x, trial);
      if (rt.squaredNorm() < cost) {
        const double gain = cost - rt.squaredNorm();
        c = trial;
        r = rt;
        cost = rt.squaredNorm();
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        if (gain <= 1e-15 * cost || q.norm() < 1e-14) return c;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return c;
}

}  // namespace

CylinderFit fit_cylinder(std::span<const AmbientPoint> points) {
  if (points.size() < 6) throw Error(ErrorKind::kInvalidArgument, "cylinder fit needs at least 6 points");
  std::vector<Vec3> x;
  x.reserve(points.size());
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) {
    x.emplace_back(p.x1, p.x2, p.x3);
    centroid += x.back();
  }
  centroid /= static_cast<double>(x.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3& v : x) cov += (v - centroid) * (v - centroid).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);

  Cylinder best{};
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const Cylinder c = refine(x, initial_guess(x, centroid, eig.eigenvectors().col(k)));
    const double cost = residuals(x, c).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  const Eigen::VectorXd r = residuals(x, best);
  CylinderFit out;
  out.point = {best.p.x(), best.p.y(), best.p.z()};
  out.axis = {best.d.x(), best.d.y(), best.d.z()};
  out.radius = best.r;
  out.max_residual = r.cwiseAbs().maxCoeff();
  out.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
  return out;
}

}  // namespace dpw
