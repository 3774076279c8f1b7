#include "dpw/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "dpw/factorization.hpp"
#include "dpw/frobenius.hpp"
#include "dpw/holonomy.hpp"
#include "dpw/isotropy.hpp"
#include "dpw/log_series.hpp"
#include "dpw/synthetic.hpp"

namespace dpw {

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string show(cplx c) {
  auto imag = [](double v) { return v == 1.0 ? std::string("i") : fmt("%gi", v); };
  if (c.imag() == 0.0) return fmt("%g", c.real());
  if (c.real() == 0.0) return c.imag() < 0.0 ? "-" + imag(-c.imag()) : imag(c.imag());
  return fmt("%g", c.real()) + (c.imag() < 0.0 ? "-" : "+") + imag(std::abs(c.imag()));
}

const char* relation(Bound b) {
  switch (b) {
    case Bound::kAtMost: return "<=";
    case Bound::kAtLeast: return ">=";
    case Bound::kAbove: return ">";
    case Bound::kEqual: return "==";
  }
  return "?";
}

// exp(s lambda^n A) sampled on a fine grid.
LoopMatrix exp_monomial(int n, cplx s) {
  const CircleGrid grid(256);
  std::vector<Mat2> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = exp_involution(s * std::pow(grid.point(m), n), kA);
  return LoopMatrix::from_samples(v);
}

double pointwise_unitarity(const LoopMatrix& f) {
  double worst = 0.0;
  for (const Mat2& m : f.sample(CircleGrid(256))) worst = std::max(worst, distance(m.adjoint() * m, Mat2::identity()));
  return worst;
}

std::vector<cplx> unit_lambdas(int n) { return CircleGrid(static_cast<std::size_t>(n)).points(); }

DomainGrid nonclosing_annulus() { return DomainGrid::annulus(0.5, 1.0, 4, 24); }

}  // namespace

bool Check::passed() const {
  switch (bound) {
    case Bound::kAtMost: return measured <= threshold;
    case Bound::kAtLeast: return measured >= threshold;
    case Bound::kAbove: return measured > threshold;
    case Bound::kEqual: return measured == threshold;
  }
  return false;
}

void SuiteReport::add(std::string name, double measured, double threshold, Bound bound) {
  checks.push_back({std::move(name), measured, threshold, bound});
}

void SuiteReport::merge(const SuiteReport& other) {
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool SuiteReport::passed() const { return first_failure() == nullptr; }

const Check* SuiteReport::first_failure() const {
  for (const Check& c : checks) {
    if (!c.passed()) return &c;
  }
  return nullptr;
}

void write_report(std::ostream& os, const SuiteReport& report) {
  os << "suite: " << report.suite << '\n';
  for (const Check& c : report.checks) {
    const bool exact = c.bound == Bound::kEqual || (c.bound == Bound::kAbove && c.threshold == std::floor(c.threshold));
    const std::string measured = exact ? fmt("%g", c.measured) : fmt("%.3e", c.measured);
    os << (c.passed() ? "PASS  " : "FAIL  ") << c.name << "  " << measured << ' ' << relation(c.bound) << ' '
       << fmt("%g", c.threshold) << '\n';
  }
  for (const std::string& n : report.notes) os << "  " << n << '\n';
  const Check* fail = report.first_failure();
  if (fail) {
    os << "result: FAIL (first failing check: " << fail->name << ")\n";
  } else {
    os << "result: PASS (" << report.checks.size() << " checks)\n";
  }
}

SuiteReport monodromy_suite(std::span<const cplx> cs, std::size_t lambda_grid) {
  SuiteReport r{"monodromy", {}, {}};
  const CircleGrid grid(lambda_grid);
  const ZPoint base = ZPoint::principal(1.0);
  for (cplx c : cs) {
    const auto sol = build_frobenius(c, 3);
    std::vector<Mat2> init;
    for (cplx l : grid.points()) init.push_back(sol.l_tilde_value(base, l));
    const auto mono = monodromy(make_xi(-1, c), base, grid, init);
    double worst = 0.0;
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const Mat2 oracle{1.0, 0.0, 2.0 * kPi * kI * c / grid.point(m), 1.0};
      worst = std::max(worst, distance(mono.m[m], oracle));
    }
    r.add("M vs [[1,0],[2 pi i c/lambda,1]] at " + std::to_string(lambda_grid) + " lambda, c=" + show(c), worst, 1e-8);
  }
  return r;
}

SuiteReport isotropy_suite(const IsotropySweep& sweep) {
  SuiteReport r{"isotropy", {}, {}};
  for (cplx c : sweep.cs) {
    for (int nz = sweep.nz_lo; nz <= sweep.nz_hi; ++nz) {
      for (int nl = sweep.nl_lo; nl <= sweep.nl_hi; ++nl) {
        const auto cert = isotropy_kernel(c, nz, nl);
        const std::string cell = "c=" + show(c) + " N_z=" + std::to_string(nz) + " N_lambda=" + std::to_string(nl);
        r.add("kernel dimension " + cell, cert.dimension, 1.0, Bound::kEqual);
        if (cert.rank_ambiguous) r.notes.push_back("rank ambiguous at " + cell);
      }
    }
  }
  if (sweep.vacuum_control) {
    KernelOptions vac;
    vac.source = KernelSource::kVacuum;
    r.add("vacuum control kernel dimension N_z=6 N_lambda=8", isotropy_kernel(1.0, 6, 8, vac).dimension, 1.0,
          Bound::kAbove);
  }
  return r;
}

SuiteReport gauges_suite(std::span<const int> ks, cplx c, const SampleSpec& samples) {
  SuiteReport r{"gauges", {}, {}};
  for (int k : ks) {
    const auto rep = k_equivalence_certificate(k, c, samples);
    r.add("k=" + std::to_string(k) + " <-> k=" + std::to_string(rep.partner) + " on " + std::to_string(rep.samples) +
              " samples, c=" + show(c),
          rep.max_residual, 1e-10);
  }
  return r;
}

SuiteReport reduced_cylinder_suite(double c, const SampleSpec& samples) {
  SuiteReport r{"reduced cylinder", {}, {}};
  const auto chain = section5_chain(c);
  const auto zs = draw_samples(samples);
  r.add("reduction chain vs sqrt(c) A dz/(lambda z), c=" + show(c),
        potential_distance(chain.final_potential(), reduced_cylinder_potential(c), zs), 1e-10);

  const auto grid = DomainGrid::annulus(0.6, 1.2, 6, 33);
  const auto init = InitialData::identity_at(ZPoint::principal(0.6));
  const auto mesh = generate(chain.final_potential(), grid, init);
  const auto fit = fit_cylinder(mesh.points);
  r.add("cylinder fit max radial residual", fit.max_residual, 1e-6);
  r.notes.push_back("cylinder radius " + fmt("%.12g", fit.radius));
  const std::vector<cplx> l0{1.0, -1.0, std::polar(1.0, 0.5)};
  const auto rep = closure_defect(chain.final_potential(), grid, init, l0);
  r.add("closing defect at lambda0 = 1", rep.sup_defect(0), 1e-6);
  r.add("closing defect at lambda0 = -1", rep.sup_defect(1), 1e-6);
  r.notes.push_back("defect at lambda0 = exp(0.5 i) (not on the closing locus): " + fmt("%.6g", rep.sup_defect(2)));
  return r;
}

SuiteReport frobenius_suite(std::span<const cplx> cs, int n_z) {
  SuiteReport r{"frobenius", {}, {}};
  for (cplx c : cs) {
    const auto sol = build_frobenius(c, n_z);
    const std::string tag = " through order " + std::to_string(sol.orders - 2) + ", c=" + show(c);
    r.add("dL~ - L~ xi series residual" + tag, series_norm(frobenius_residual(sol), sol.orders - 2), 1e-12);
    r.add("column ODE residual" + tag, column_ode_residual(sol, sol.orders - 2), 1e-12);
  }
  return r;
}

SuiteReport iwasawa_suite(std::uint64_t seed, int trials) {
  SuiteReport r{"iwasawa", {}, {}};
  std::mt19937_64 rng(seed);
  double df = 0.0, db = 0.0, res = 0.0, unit = 0.0, b0_shape = 0.0, b0_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const auto f0 = synthetic::random_unitary_loop(rng, 3, 0.5);
    const auto b0 = synthetic::random_positive_loop(rng, 3, 0.5);
    const auto pair = iwasawa_su2(loop_mul(f0, b0));
    df = std::max(df, coefficient_distance(pair.f, f0));
    db = std::max(db, coefficient_distance(pair.b, b0));
    res = std::max(res, pair.residual);
    unit = std::max(unit, pointwise_unitarity(pair.f));
    const Mat2 bz = pair.b.coefficient(0);
    b0_shape = std::max({b0_shape, std::abs(bz.a12), std::abs(bz.a21), std::abs(bz.a11.imag()), std::abs(bz.a22.imag())});
    b0_min = std::min({b0_min, bz.a11.real(), bz.a22.real()});
  }
  const std::string n = " (" + std::to_string(trials) + " trials, seed " + std::to_string(seed) + ")";
  r.add("round trip F" + n, df, 1e-8);
  r.add("round trip B" + n, db, 1e-8);
  r.add("F B - L coefficient residual" + n, res, 1e-8);
  r.add("F unitary pointwise" + n, unit, 1e-8);
  r.add("B(0) real diagonal" + n, b0_shape, 1e-12);
  r.add("B(0) diagonal positive" + n, b0_min, 0.0, Bound::kAbove);

  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double vf = 0.0, vb = 0.0;
  std::vector<cplx> zs{{0.4, 0.2}};
  for (int i = 0; i < 3; ++i) zs.emplace_back(u(rng), u(rng));
  for (cplx z : zs) {
    const auto vac = iwasawa_su2(exp_monomial(-1, z));
    const CircleGrid grid(256);
    std::vector<Mat2> f(grid.size());
    for (std::size_t m = 0; m < f.size(); ++m) {
      const cplx l = grid.point(m);
      f[m] = exp_involution(z / l - l * std::conj(z), kA);
    }
    vf = std::max(vf, coefficient_distance(vac.f, LoopMatrix::from_samples(f)));
    vb = std::max(vb, coefficient_distance(vac.b, exp_monomial(1, std::conj(z))));
  }
  r.add("vacuum closed form F = exp((z/lambda - lambda conj z) A), " + std::to_string(zs.size()) + " points", vf, 1e-9);
  r.add("vacuum closed form B = exp(lambda conj z A)", vb, 1e-9);
  return r;
}

SuiteReport nonclosing_suite(const NonclosingSpec& spec) {
  SuiteReport r{"nonclosing", {}, {}};
  const cplx c = spec.c;
  const CircleGrid grid(64);
  const ZPoint base = ZPoint::principal(1.0);
  const auto sol = build_frobenius(c, 3);
  std::vector<Mat2> init;
  for (cplx l : grid.points()) init.push_back(sol.l_tilde_value(base, l));
  const auto mono = monodromy(make_xi(-1, c), base, grid, init, spec.surface.integrator);
  double rho = std::numeric_limits<double>::infinity(), trace = 0.0;
  for (std::size_t m = 0; m < mono.size(); ++m) {
    rho = std::min({rho, mono.rho_plus[m], mono.rho_minus[m]});
    trace = std::max(trace, std::abs(mono.trace[m] - 2.0));
  }
  r.add("k=-1 min over 64 lambda of min |M -+ id|, c=" + show(c), rho, 2.0 * kPi * std::abs(c) - 1e-6, Bound::kAtLeast);
  r.add("k=-1 max |tr M - 2|", trace, 1e-8);

  const auto l0 = unit_lambdas(spec.lambda0_count);
  const auto rep = closure_defect(make_xi(-1, c), nonclosing_annulus(), InitialData::frobenius(c, ZPoint::principal(0.5)),
                                  l0, spec.surface);
  r.add("k=-1 seam defect, min over " + std::to_string(l0.size()) + " lambda0", rep.min_sup_defect(), spec.margin,
        Bound::kAbove);
  for (std::size_t l = 0; l < l0.size(); ++l) {
    r.notes.push_back("lambda0 = exp(" + fmt("%.6f", std::arg(l0[l])) + " i): sup seam defect " +
                      fmt("%.9f", rep.sup_defect(l)));
  }

  const auto disk = DomainGrid::disk(0.8, 5, 24);
  const auto xi0 = make_xi(0, c);
  const auto init0 = InitialData::identity_at(ZPoint{0.0, 0.0});
  r.add("k=0 mesh seam defect", generate(xi0, disk, init0, spec.surface).max_seam_defect(), 1e-7);
  r.add("k=0 seam defect, max over lambda0", closure_defect(xi0, disk, init0, l0, spec.surface).max_sup_defect(), 1e-7);
  return r;
}

SuiteReport seam_prediction_suite(const NonclosingSpec& spec) {
  SuiteReport r{"seam prediction", {}, {}};
  const auto l0 = unit_lambdas(spec.lambda0_count);
  const auto rep = closure_defect(make_xi(-1, spec.c), nonclosing_annulus(),
                                  InitialData::frobenius(spec.c, ZPoint::principal(0.5)), l0, spec.surface);
  double diff = 0.0;
  for (std::size_t l = 0; l < rep.defect.size(); ++l) {
    for (std::size_t i = 0; i < rep.defect[l].size(); ++i) diff = std::max(diff, std::abs(rep.defect[l][i] - rep.predicted[l][i]));
  }
  r.add("max |f(tau z) - tau* f(z)| on the k=-1 annulus, c=" + show(spec.c), rep.max_gap(), 1e-6);
  r.add("max |geometric defect - predicted defect|", diff, 1e-6);
  return r;
}

SuiteReport cmc_suite(int n, double h) {
  SuiteReport r{"cmc", {}, {}};
  SurfaceOptions opt;
  opt.h = h;
  const InitialData init = InitialData::identity_at(ZPoint{0.0, 0.0});
  const auto vac = verify_cmc(generate(vacuum_potential(), DomainGrid::rectangle(-0.5, 0.5, -0.5, 0.5, n, n), init, opt));
  r.add("vacuum mesh " + std::to_string(n) + "x" + std::to_string(n) + " max |H - " + fmt("%g", h) + "|",
        vac.max_deviation, 5e-3);
  const auto smyth =
      verify_cmc(generate(make_xi(0, 2.0), DomainGrid::rectangle(0.1, 0.6, -0.25, 0.25, n, n), init, opt));
  r.add("Smyth k=0 c=2 mesh " + std::to_string(n) + "x" + std::to_string(n) + " max |H - " + fmt("%g", h) + "|",
        smyth.max_deviation, 5e-3);
  r.notes.push_back("mean H: vacuum " + fmt("%.9f", vac.mean) + ", Smyth " + fmt("%.9f", smyth.mean));
  return r;
}

}  // namespace dpw
