#include "dpw/potentials.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dpw/errors.hpp"

namespace dpw {

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

std::string format_c(cplx c) {
  std::ostringstream os;
  const double im = std::abs(c.imag());
  if (c.imag() == 0.0 || c.real() != 0.0) os << c.real();
  if (c.imag() != 0.0) {
    if (c.imag() < 0.0 || c.real() != 0.0) os << (c.imag() < 0.0 ? "-" : "+");
    if (im != 1.0) os << im;
    os << "i";
  }
  return os.str();
}

cplx int_pow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < std::abs(k); ++i) r *= z;
  return k < 0 ? 1.0 / r : r;
}

void check_omega(const OmegaData& om, cplx lambda) {
  if (std::abs(om.omega(lambda)) < 1e-8) {
    throw Error(ErrorKind::kBranchPointHit, "Omega vanishes at lambda");
  }
}

}  // namespace

LoopMatrix Potential::at(const ZPoint& z, const LoopOptions& options) const {
  const CircleGrid grid(options.grid);
  std::vector<Mat2> samples(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) samples[m] = fn_(z, grid.point(m));
  return LoopMatrix::from_samples(samples, options);
}

Potential make_xi(int k, cplx c) {
  if (c == 0.0) throw Error(ErrorKind::kZeroC, "make_xi requires c != 0");
  Potential xi("xi_k(k=" + std::to_string(k) + ",c=" + format_c(c) + ")",
               [k, c](const ZPoint& z, cplx lambda) {
                 return Mat2::offdiag(1.0, c * int_pow(z.z, k)) * (1.0 / lambda);
               });
  xi.holomorphic_at_zero = k >= 0;
  xi.k = k;
  xi.c = c;
  return xi;
}

Potential vacuum_potential() {
  Potential xi("vacuum", [](const ZPoint&, cplx lambda) { return kA * (1.0 / lambda); });
  xi.holomorphic_at_zero = true;
  return xi;
}

Potential reduced_cylinder_potential(double c) {
  const double s = std::sqrt(c);
  return Potential("reduced_cylinder(c=" + format_c(c) + ")",
                   [s](const ZPoint& z, cplx lambda) { return kA * (s / (lambda * z.z)); });
}

double GaugeLoop::derivative_defect(const ZPoint& z, cplx lambda, double eps) const {
  // Shift along the sheet of z: log(z + h) = log z + log(1 + h/z).
  const auto shifted = [&](cplx h) { return ZPoint{z.z + h, z.log_z + std::log(1.0 + h / z.z)}; };
  const Mat2 fd = (value(shifted(eps), lambda) - value(shifted(-eps), lambda)) * (1.0 / (2.0 * eps));
  return distance(fd, dz(z, lambda));
}

double GaugeLoop::negative_mass(const ZPoint& z, const LoopOptions& options) const {
  const CircleGrid grid(options.grid);
  std::vector<Mat2> samples(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) samples[m] = value(z, grid.point(m));
  const auto bins = fourier::analyze(samples);
  double worst = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    if (fourier::bin_degree(k, bins.size()) < 0) worst = std::max(worst, bins[k].frobenius_norm());
  }
  return worst;
}

GaugeLoop identity_gauge() { return constant_gauge(Mat2::identity(), "identity"); }

GaugeLoop constant_gauge(const Mat2& p, std::string descriptor) {
  return GaugeLoop(
      std::move(descriptor), [p](const ZPoint&, cplx) { return p; },
      [](const ZPoint&, cplx) { return Mat2::zero(); });
}

Potential apply_gauge(const Potential& xi, const GaugeLoop& p) {
  Potential out(xi.descriptor() + " . gauge[" + p.descriptor() + "]",
                [xi, p](const ZPoint& z, cplx lambda) {
                  const Mat2 v = p.value(z, lambda);
                  if (std::abs(v.det()) < 1e-13) {
                    throw Error(ErrorKind::kSingularGauge, "gauge " + p.descriptor() + " is singular");
                  }
                  const Mat2 inv = v.inverse();
                  return inv * xi(z, lambda) * v + inv * p.dz(z, lambda);
                });
  if (p.descriptor() == "identity") {
    out.k = xi.k;
    out.c = xi.c;
  }
  return out;
}

Potential invert_z(const Potential& xi) {
  return Potential("invert_z[" + xi.descriptor() + "]", [xi](const ZPoint& w, cplx lambda) {
    const ZPoint inv{1.0 / w.z, -w.log_z};
    return xi(inv, lambda) * (-1.0 / (w.z * w.z));
  });
}

Potential scale_z(const Potential& xi, cplx alpha) {
  const cplx log_alpha = std::log(alpha);
  return Potential("scale_z[" + xi.descriptor() + "]", [xi, alpha, log_alpha](const ZPoint& w, cplx lambda) {
    return xi(ZPoint{alpha * w.z, log_alpha + w.log_z}, lambda) * alpha;
  });
}

GaugeLoop inversion_partner_gauge() {
  return GaugeLoop(
      "p+=[[i/z,0],[-i lambda,-i z]]",
      [](const ZPoint& z, cplx lambda) { return Mat2{kI / z.z, 0.0, -kI * lambda, -kI * z.z}; },
      [](const ZPoint& z, cplx) { return Mat2{-kI / (z.z * z.z), 0.0, 0.0, -kI}; });
}

Potential section5_expected_stage(int stage, double c) {
  const double s = std::sqrt(c);
  const OmegaData om{c};
  switch (stage) {
    case 1:
      return Potential("stage1", [c](const ZPoint& z, cplx l) {
        const cplx z2 = z.z * z.z;
        return Mat2{-1.0 / (2.0 * z.z), 1.0 / l, l / (4.0 * z2) + c / (l * z2), 1.0 / (2.0 * z.z)};
      });
    case 2:
      return Potential("stage2", [c](const ZPoint& z, cplx l) {
        return Mat2::offdiag(1.0 / l, c / l + l / 4.0) * (1.0 / z.z);
      });
    case 3:
      return Potential("stage3", [c, s](const ZPoint& z, cplx l) {
        return Mat2::offdiag(1.0 / l, 1.0 / l + l / (4.0 * c)) * (s / z.z);
      });
    case 4:
      return Potential("stage4", [om, s](const ZPoint& z, cplx l) {
        check_omega(om, l);
        return kA * (s * om.sqrt_omega(l) / (l * z.z));
      });
    case 5:
      return reduced_cylinder_potential(c);
    default:
      throw Error(ErrorKind::kInvalidArgument, "section5 stage must be 1..5");
  }
}

Section5Chain section5_chain(double c, std::span<const cplx> working_lambdas) {
  if (!(c > 0.0)) throw Error(ErrorKind::kInvalidArgument, "section5_chain requires c > 0");
  const OmegaData om{c};
  if (working_lambdas.empty()) {
    const CircleGrid grid(256);
    for (const cplx l : grid.points()) check_omega(om, l);
  } else {
    for (const cplx l : working_lambdas) check_omega(om, l);
  }
  const double s = std::sqrt(c);
  const double mu = std::pow(c, -0.25);

  std::vector<GaugeLoop> gauges;
  gauges.reserve(5);
  gauges.emplace_back(
      "p1=[[1,0],[-lambda/(2z),1]]",
      [](const ZPoint& z, cplx l) { return Mat2{1.0, 0.0, -l / (2.0 * z.z), 1.0}; },
      [](const ZPoint& z, cplx l) { return Mat2{0.0, 0.0, l / (2.0 * z.z * z.z), 0.0}; });
  gauges.emplace_back(
      "p2=diag(sqrt z,1/sqrt z)",
      [](const ZPoint& z, cplx) {
        const cplx r = std::exp(0.5 * z.log_z);
        return Mat2::diag(r, 1.0 / r);
      },
      [](const ZPoint& z, cplx) {
        const cplx r = std::exp(0.5 * z.log_z);
        return Mat2::diag(0.5 / r, -0.5 / (r * z.z));
      });
  gauges.push_back(constant_gauge(Mat2::diag(mu, 1.0 / mu), "p3=diag(c^-1/4,c^1/4)"));
  gauges.emplace_back(
      "p4=Q^-1",
      [om, s](const ZPoint&, cplx l) {
        check_omega(om, l);
        const cplx w = om.quarter(l);
        const cplx u = l / (2.0 * s);
        return Mat2{w, -u / w, -u * w, w * w * w};
      },
      [](const ZPoint&, cplx) { return Mat2::zero(); });
  gauges.emplace_back(
      "p5=exp(kappa log z A)",
      [om, s](const ZPoint& z, cplx l) {
        check_omega(om, l);
        const cplx kappa = s * (1.0 - om.sqrt_omega(l)) / l;
        return exp_involution(kappa * z.log_z, kA);
      },
      [om, s](const ZPoint& z, cplx l) {
        check_omega(om, l);
        const cplx kappa = s * (1.0 - om.sqrt_omega(l)) / l;
        return exp_involution(kappa * z.log_z, kA) * kA * (kappa / z.z);
      });

  Potential start = make_xi(-2, c);
  std::vector<Potential> stages;
  Potential current = start;
  for (const auto& g : gauges) {
    current = apply_gauge(current, g);
    stages.push_back(current);
  }
  return Section5Chain{c, std::move(start), std::move(gauges), std::move(stages)};
}

CNormalization normalize_c(const Potential& xi) {
  if (!xi.k || *xi.k != -1 || !xi.c) {
    throw Error(ErrorKind::kInvalidArgument, "normalize_c requires xi_{-1}");
  }
  const cplx c = *xi.c;
  const cplx alpha = 1.0 / c;
  const cplx mu = std::sqrt(alpha);
  GaugeLoop gauge = (c == 1.0) ? identity_gauge() : constant_gauge(Mat2::diag(mu, 1.0 / mu), "diag(mu,1/mu)");
  Potential scaled = (c == 1.0) ? xi : scale_z(xi, alpha);
  Potential normalized = apply_gauge(scaled, gauge);
  normalized.k = -1;
  normalized.c = 1.0;
  return CNormalization{std::move(normalized), std::move(gauge), CoordinateScale{alpha}, mu};
}

std::vector<ZLambdaSample> draw_samples(const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> radius(spec.r_min, spec.r_max);
  std::uniform_real_distribution<double> arg(-spec.max_arg, spec.max_arg);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<ZLambdaSample> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double r = radius(rng);
    const double a = arg(rng);
    const double t = angle(rng);
    out.push_back({ZPoint::from_log(cplx{std::log(r), a}), std::polar(1.0, t)});
  }
  return out;
}

double potential_distance(const Potential& a, const Potential& b, std::span<const ZLambdaSample> samples) {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, distance(a(s.z, s.lambda), b(s.z, s.lambda)));
  return worst;
}

EquivalenceReport k_equivalence_certificate(int k, cplx c, const SampleSpec& spec) {
  const int partner = -k - 4;
  const Potential lhs = apply_gauge(invert_z(make_xi(k, c)), inversion_partner_gauge());
  const Potential rhs = make_xi(partner, c);
  const auto samples = draw_samples(spec);
  return EquivalenceReport{k, partner, c, samples.size(), potential_distance(lhs, rhs, samples)};
}

}  // namespace dpw
