#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dpw/certificates.hpp"
#include "dpw/errors.hpp"
#include "dpw/fourier.hpp"
#include "dpw/holonomy.hpp"
#include "dpw/potentials.hpp"
#include "dpw/surface.hpp"

namespace dpwlab {

using namespace dpw;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.6e", v); }

std::string show(cplx c) {
  if (c.imag() == 0.0) return fmt("%g", c.real());
  return fmt("%g", c.real()) + (c.imag() < 0.0 ? "-" : "+") + fmt("%gi", std::abs(c.imag()));
}

std::string grid_kind(const RunConfig& c) {
  if (!c.grid.empty()) return c.grid;
  if (c.vacuum) return "rectangle";
  return c.k >= 0 ? "disk" : "annulus";
}

DomainGrid make_grid(const RunConfig& c) {
  const std::string kind = grid_kind(c);
  if (kind == "annulus") return DomainGrid::annulus(c.r0, c.r1, c.n_r, c.n_theta, c.theta_span);
  if (kind == "disk") return DomainGrid::disk(c.r1, c.n_r, c.n_theta, c.theta_span);
  return DomainGrid::rectangle(c.x0, c.x1, c.y0, c.y1, c.n_x, c.n_y);
}

std::string describe_grid(const RunConfig& c) {
  const std::string kind = grid_kind(c);
  if (kind == "rectangle") {
    return "rectangle [" + fmt("%g", c.x0) + ", " + fmt("%g", c.x1) + "] x [" + fmt("%g", c.y0) + ", " +
           fmt("%g", c.y1) + "], " + std::to_string(c.n_x) + " x " + std::to_string(c.n_y);
  }
  const std::string radii =
      kind == "annulus" ? "r in [" + fmt("%g", c.r0) + ", " + fmt("%g", c.r1) + "]" : "r in [0, " + fmt("%g", c.r1) + "]";
  return kind + " " + radii + ", theta in [0, " + fmt("%.6f", c.theta_span) + "], " + std::to_string(c.n_r) + " x " +
         std::to_string(c.n_theta);
}

Potential make_potential(const RunConfig& c) { return c.vacuum ? vacuum_potential() : make_xi(c.k, c.c); }

bool singular_at_origin(const RunConfig& c) { return !c.vacuum && c.k < 0; }

InitialData make_init(const RunConfig& c, const DomainGrid& grid) {
  if (!singular_at_origin(c)) return InitialData::identity_at(ZPoint{0.0, 0.0});
  if (grid.kind() == DomainGrid::Kind::kDisk) {
    throw Error(ErrorKind::kInvalidArgument, "k < 0 is singular at z = 0; use an annulus or a rectangle away from 0");
  }
  const ZPoint base = ZPoint::principal(grid.point(0, 0));
  return c.k == -1 ? InitialData::frobenius(c.c, base) : InitialData::identity_at(base);
}

SurfaceOptions surface_options(const RunConfig& c) {
  SurfaceOptions o;
  o.h = c.h;
  o.lambda0 = c.lambda0;
  o.lambda_grid = c.lambda_grid;
  o.integrator.tol = c.integrator_tol;
  o.integrator.path_clearance = c.path_clearance;
  o.factorization.positivity_tol = c.positivity_tol;
  return o;
}

std::vector<cplx> unit_lambdas(int count) {
  std::vector<cplx> out;
  for (int m = 0; m < count; ++m) out.push_back(std::polar(1.0, 2.0 * kPi * m / count));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::kIo, "write failed for " + path);
}

void require_unit_lambda0(cplx lambda0) {
  if (std::abs(std::abs(lambda0) - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "gen needs |lambda0| = 1 for SU(2) frames");
  }
}

}  // namespace

int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_unit_lambda0(config.lambda0);
  const DomainGrid grid = make_grid(config);
  const Potential xi = make_potential(config);
  const InitialData init = make_init(config, grid);
  const SurfaceOptions options = surface_options(config);
  const SurfaceMesh mesh = generate(xi, grid, init, options);
  const std::string stem = config.output.empty() ? "dpw_mesh" : config.output;
  export_mesh(mesh, stem);

  out << "potential: " << xi.descriptor() << '\n';
  out << "grid: " << describe_grid(config) << '\n';
  out << "lambda0: " << show(config.lambda0) << "  H: " << fmt("%g", config.h)
      << "  lambda grid: " << config.lambda_grid << '\n';
  out << "initial data: " << init.descriptor << '\n';
  out << "points: " << mesh.points.size() << '\n';

  if (grid.closed_seam()) {
    out << "seam defect: " << sci(mesh.max_seam_defect()) << '\n';
  } else {
    out << "seam defect: n/a (grid has no closed seam)\n";
  }

  try {
    const CmcReport cmc = verify_cmc(mesh);
    out << "cmc: max |H - " << fmt("%g", cmc.target) << "| = " << sci(cmc.max_deviation) << ", mean H = "
        << fmt("%.9f", cmc.mean) << '\n';
  } catch (const Error& e) {
    out << "cmc: unavailable (" << e.what() << ")\n";
  }

  if (config.vacuum) {
    const CylinderFit fit = fit_cylinder(mesh.points);
    out << "cylinder: radius " << fmt("%.9f", fit.radius) << " (1/(2H) = " << fmt("%.9f", 1.0 / (2.0 * std::abs(config.h)))
        << "), max residual " << sci(fit.max_residual) << '\n';
  }

  std::vector<std::string> files{stem + ".obj", stem + ".csv"};
  if (singular_at_origin(config) && config.k == -1 && grid.closed_seam()) {
    const auto l0 = unit_lambdas(config.lambda0_count);
    const ClosureReport rep = closure_defect(xi, grid, init, l0, options);
    std::ostringstream csv;
    write_defect_csv(csv, rep);
    write_file(stem + "_defect.csv", csv.str());
    files.push_back(stem + "_defect.csv");
    const std::string warning = "warning: does not close (k = -1); seam defect stays above " +
                                sci(rep.min_sup_defect()) + " for every lambda0";
    out << warning << '\n';
    err << warning << '\n';
    out << "lambda0 arg    sup seam defect\n";
    for (std::size_t l = 0; l < l0.size(); ++l) {
      out << fmt("%11.6f", std::arg(l0[l])) << "    " << sci(rep.sup_defect(l)) << '\n';
    }
  } else if (grid.closed_seam() && mesh.max_seam_defect() > 1e-6) {
    const std::string warning = "warning: does not close at lambda0 = " + show(config.lambda0);
    out << warning << '\n';
    err << warning << '\n';
  }

  out << "files:";
  for (const auto& f : files) out << ' ' << f;
  out << '\n';
  return kPass;
}

int cmd_monodromy(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Potential xi = make_potential(config);
  const ZPoint base = ZPoint::principal(config.base_radius);
  const CircleGrid lgrid(config.lambda_grid);
  std::vector<Mat2> initial(lgrid.size(), Mat2::identity());
  if (singular_at_origin(config) && config.k == -1) {
    const InitialData init = InitialData::frobenius(config.c, base);
    for (std::size_t m = 0; m < lgrid.size(); ++m) initial[m] = init.value(lgrid.point(m));
  }
  IntegratorOptions io;
  io.tol = config.integrator_tol;
  io.path_clearance = config.path_clearance;
  const MonodromyReport report = monodromy(xi, base, lgrid, initial, io);

  std::ostringstream csv;
  write_csv(csv, report);
  if (config.output.empty()) {
    out << csv.str();
  } else {
    write_file(config.output, csv.str());
  }

  double rho = 1e300, trace = 0.0;
  std::size_t closing = 0;
  for (std::size_t m = 0; m < report.size(); ++m) {
    const ClosingResidual r = closing_residual(report, m);
    rho = std::min(rho, std::min(r.rho_plus, r.rho_minus));
    trace = std::max(trace, std::abs(report.trace[m] - 2.0));
    closing += r.closes(1e-8) ? 1 : 0;
  }
  err << "monodromy of " << xi.descriptor() << " at |z| = " << fmt("%g", config.base_radius) << ": min |M -+ id| "
      << sci(rho) << ", max |tr M - 2| " << sci(trace) << ", closes at " << closing << " of " << report.size()
      << " lambda\n";
  return kPass;
}

int cmd_verify(const RunConfig& config, const std::string& suite, std::ostream& out, std::ostream& err) {
  SuiteReport report;
  if (suite == "gauges") {
    std::vector<int> ks{0, 1, 2, -2};
    if (config.k_given) ks = {config.k};
    SampleSpec samples;
    samples.count = config.samples;
    samples.seed = config.seed;
    report = gauges_suite(ks, config.c, samples);
    if (std::find(ks.begin(), ks.end(), -2) != ks.end()) report.merge(reduced_cylinder_suite(config.chain_c, samples));
  } else if (suite == "frobenius") {
    const std::vector<cplx> cs{config.c};
    report = frobenius_suite(cs, config.nz);
  } else if (suite == "isotropy") {
    IsotropySweep sweep;
    sweep.cs = {config.c};
    sweep.nz_lo = sweep.nz_hi = config.nz;
    sweep.nl_lo = sweep.nl_hi = config.nl;
    report = isotropy_suite(sweep);
  } else if (suite == "iwasawa") {
    report = iwasawa_suite(config.seed, config.trials);
  } else if (suite == "nonclosing") {
    if (config.k_given && config.k != -1) throw Error(ErrorKind::kInvalidArgument, "the nonclosing suite is for k = -1");
    NonclosingSpec spec;
    spec.c = config.c;
    spec.lambda0_count = config.lambda0_count;
    spec.margin = config.margin;
    spec.surface = surface_options(config);
    report = nonclosing_suite(spec);
    report.merge(seam_prediction_suite(spec));
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                "unknown suite '" + suite + "' (gauges, frobenius, isotropy, iwasawa, nonclosing)");
  }

  std::ostringstream text;
  write_report(text, report);
  out << text.str();
  if (!config.output.empty()) write_file(config.output, text.str());
  if (const Check* failed = report.first_failure()) {
    err << "check failed: " << failed->name << '\n';
    return kCheckFailed;
  }
  return kPass;
}

int cmd_export(const RunConfig& config, std::ostream& out) {
  if (config.input.empty()) throw Error(ErrorKind::kInvalidArgument, "export needs an input points CSV");
  std::ifstream in(config.input);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + config.input);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::istringstream points_stream(text);
  const std::vector<AmbientPoint> points = read_points_csv(points_stream);

  int n_u = 0, n_v = 0;
  double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
  std::istringstream rows(text);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    if (line.empty()) continue;
    int i = 0, j = 0;
    double u = 0.0, v = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &i, &j, &u, &v) != 4) {
      throw Error(ErrorKind::kParse, "bad points CSV row: " + line);
    }
    n_u = std::max(n_u, i + 1);
    n_v = std::max(n_v, j + 1);
    u0 = std::min(u0, u);
    u1 = std::max(u1, u);
    v0 = std::min(v0, v);
    v1 = std::max(v1, v);
  }
  if (n_u < 2 || n_v < 2 || static_cast<std::size_t>(n_u) * static_cast<std::size_t>(n_v) != points.size()) {
    throw Error(ErrorKind::kParse, "points CSV does not describe a complete grid");
  }

  const std::string stem = config.output.empty() ? "dpw_export" : config.output;
  const SurfaceMesh mesh{DomainGrid::rectangle(u0, u1, v0, v1, n_u, n_v), points, config.lambda0, config.h,
                         "imported from " + config.input, {}};
  std::ostringstream obj;
  write_obj(obj, mesh);
  write_file(stem + ".obj", obj.str());
  out << "read " << points.size() << " points (" << n_u << " x " << n_v << ") from " << config.input << '\n';
  out << "files: " << stem << ".obj\n";
  return kPass;
}

}  // namespace dpwlab
