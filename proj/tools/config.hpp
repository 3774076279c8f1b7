#pragma once

// Run configuration for dpwlab: a flat JSON object whose keys are listed in
// README.md. Defaults, then the config file, then command-line flags.

#include <cstdint>
#include <string>
#include <string_view>

#include "dpw/errors.hpp"
#include "dpw/mat2.hpp"

namespace dpwlab {

using dpw::cplx;

struct RunConfig {
  int k = -1;
  bool k_given = false;
  cplx c = 1.0;
  bool vacuum = false;
  std::string real_form = "su2";

  std::string grid;  // annulus | disk | rectangle; empty picks one from the potential
  double r0 = 0.5, r1 = 1.0;
  int n_r = 16, n_theta = 48;
  double theta_span = 2.0 * dpw::kPi;
  double x0 = -0.5, x1 = 0.5, y0 = -0.5, y1 = 0.5;
  int n_x = 32, n_y = 32;

  std::size_t lambda_grid = 64;
  double h = 0.5;
  cplx lambda0 = 1.0;
  int lambda0_count = 16;
  double base_radius = 1.0;

  int nz = 6, nl = 8;
  std::uint64_t seed = 7;
  std::size_t samples = 100;
  int trials = 10;
  double chain_c = 1.0 / 16.0;

  double integrator_tol = 1e-10;
  double path_clearance = 1e-3;
  double positivity_tol = 1e-10;
  double margin = 1e-3;

  std::string input;
  std::string output;
};

/// "1", "-2.5", "i", "-i", "0.5i", "2-i", "1e-3+2e-1i" or "re,im".
cplx parse_complex(std::string_view text);

/// Applies the keys of a JSON object; unknown keys and wrong types throw Parse.
void apply_json(RunConfig& config, std::string_view json_text);
/// Reads a JSON file into `config`; throws Io when it cannot be read.
void load_config_file(RunConfig& config, const std::string& path);
/// Throws InvalidArgument on non-positive tolerances, sizes or radii.
void validate(const RunConfig& config);

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kNumerical = 2, kConfig = 3, kIo = 4 };

int exit_code(dpw::ErrorKind kind);

}  // namespace dpwlab
