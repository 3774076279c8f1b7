#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace dpwlab;

namespace {

struct Overrides {
  std::string config;
  std::optional<int> k;
  std::optional<std::string> c;
  bool vacuum = false;
  std::optional<std::string> real_form, grid, lambda0, input, output;
  std::optional<double> r0, r1, theta_span, x0, x1, y0, y1, h, base_radius, chain_c;
  std::optional<double> integrator_tol, path_clearance, positivity_tol, margin;
  std::optional<int> n_r, n_theta, n_x, n_y, lambda0_count, nz, nl, trials;
  std::optional<std::size_t> lambda_grid, samples;
  std::optional<std::uint64_t> seed;
};

void add_options(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON config file; flags override its keys");
  app->add_option("--k", o.k, "exponent k of xi_k");
  app->add_option("--c", o.c, "constant c, e.g. 1, i, 2-i or 0.5,0.25");
  app->add_flag("--vacuum", o.vacuum, "use the vacuum potential");
  app->add_option("--real-form", o.real_form, "su2");
  app->add_option("--grid", o.grid, "annulus | disk | rectangle");
  app->add_option("--r0", o.r0, "inner annulus radius");
  app->add_option("--r1", o.r1, "outer radius (annulus, disk)");
  app->add_option("--n-r", o.n_r, "radial samples");
  app->add_option("--n-theta", o.n_theta, "angular samples");
  app->add_option("--theta-span", o.theta_span, "angular extent");
  app->add_option("--x0", o.x0, "rectangle x range start");
  app->add_option("--x1", o.x1, "rectangle x range end");
  app->add_option("--y0", o.y0, "rectangle y range start");
  app->add_option("--y1", o.y1, "rectangle y range end");
  app->add_option("--n-x", o.n_x, "rectangle x samples");
  app->add_option("--n-y", o.n_y, "rectangle y samples");
  app->add_option("--lambda-grid", o.lambda_grid, "lambda samples M on the unit circle");
  app->add_option("--mean-curvature,--H", o.h, "mean curvature H");
  app->add_option("--lambda0", o.lambda0, "Sym point on the unit circle");
  app->add_option("--lambda0-count", o.lambda0_count, "lambda0 samples for closing scans");
  app->add_option("--base-radius", o.base_radius, "radius of the monodromy circle");
  app->add_option("--nz", o.nz, "z truncation N_z");
  app->add_option("--nl", o.nl, "lambda truncation N_lambda");
  app->add_option("--random-seed,--seed", o.seed, "seed for sampled checks");
  app->add_option("--samples", o.samples, "random (z, lambda) samples");
  app->add_option("--trials", o.trials, "synthetic Iwasawa trials");
  app->add_option("--chain-c", o.chain_c, "c of the reduced k = -2 chain");
  app->add_option("--integrator-tol", o.integrator_tol, "ODE local tolerance");
  app->add_option("--path-clearance", o.path_clearance, "minimum distance of paths from z = 0");
  app->add_option("--positivity-tol", o.positivity_tol, "Iwasawa positivity tolerance");
  app->add_option("--margin", o.margin, "required seam defect for non-closing");
  app->add_option("--input", o.input, "input file (export)");
  app->add_option("--out,--output", o.output, "output stem (gen, export) or file (monodromy, verify)");
}

template <class T>
void set(T& field, const std::optional<T>& value) {
  if (value) field = *value;
}

RunConfig build_config(const Overrides& o) {
  RunConfig c;
  if (!o.config.empty()) load_config_file(c, o.config);
  if (o.k) {
    c.k = *o.k;
    c.k_given = true;
  }
  if (o.c) c.c = parse_complex(*o.c);
  if (o.vacuum) c.vacuum = true;
  set(c.real_form, o.real_form);
  set(c.grid, o.grid);
  if (o.lambda0) c.lambda0 = parse_complex(*o.lambda0);
  set(c.input, o.input);
  set(c.output, o.output);
  set(c.r0, o.r0);
  set(c.r1, o.r1);
  set(c.theta_span, o.theta_span);
  set(c.x0, o.x0);
  set(c.x1, o.x1);
  set(c.y0, o.y0);
  set(c.y1, o.y1);
  set(c.h, o.h);
  set(c.base_radius, o.base_radius);
  set(c.chain_c, o.chain_c);
  set(c.integrator_tol, o.integrator_tol);
  set(c.path_clearance, o.path_clearance);
  set(c.positivity_tol, o.positivity_tol);
  set(c.margin, o.margin);
  set(c.n_r, o.n_r);
  set(c.n_theta, o.n_theta);
  set(c.n_x, o.n_x);
  set(c.n_y, o.n_y);
  set(c.lambda0_count, o.lambda0_count);
  set(c.nz, o.nz);
  set(c.nl, o.nl);
  set(c.trials, o.trials);
  set(c.lambda_grid, o.lambda_grid);
  set(c.samples, o.samples);
  set(c.seed, o.seed);
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpwlab: DPW potentials, monodromy, Iwasawa splitting and CMC surfaces"};
  app.require_subcommand(1);
  Overrides o;
  std::string suite;

  auto* gen = app.add_subcommand("gen", "integrate, split and write a CMC mesh (OBJ + CSV) with a summary");
  auto* mono = app.add_subcommand("monodromy", "monodromy around |z| = base radius as CSV");
  auto* verify = app.add_subcommand("verify", "run a certificate suite");
  auto* exp = app.add_subcommand("export", "convert a points CSV written by gen to OBJ");
  for (auto* sub : {gen, mono, verify, exp}) add_options(sub, o);
  verify->add_option("suite", suite, "gauges | frobenius | isotropy | iwasawa | nonclosing")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    const RunConfig config = build_config(o);
    if (gen->parsed()) return cmd_gen(config, std::cout, std::cerr);
    if (mono->parsed()) return cmd_monodromy(config, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(config, suite, std::cout, std::cerr);
    return cmd_export(config, std::cout);
  } catch (const dpw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
