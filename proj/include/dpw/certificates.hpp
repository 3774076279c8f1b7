#pragma once

// Certificate suites shared by `dpwlab verify` and the acceptance binary.
// Each suite runs module checks and records (name, measured, threshold).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dpw/mat2.hpp"
#include "dpw/potentials.hpp"
#include "dpw/surface.hpp"

namespace dpw {

enum class Bound { kAtMost, kAtLeast, kAbove, kEqual };

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::kAtMost;

  bool passed() const;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::string> notes;
  std::vector<Check> checks;

  void add(std::string name, double measured, double threshold, Bound bound = Bound::kAtMost);
  void merge(const SuiteReport& other);
  bool passed() const;
  const Check* first_failure() const;
};

/// "PASS|FAIL  name  measured <= threshold" lines, notes, then a result line.
void write_report(std::ostream& os, const SuiteReport& report);

/// Integrated monodromy of xi_{-1} with Frobenius data against
/// [[1, 0], [2 pi i c / lambda, 1]].
SuiteReport monodromy_suite(std::span<const cplx> cs, std::size_t lambda_grid = 64);

struct IsotropySweep {
  std::vector<cplx> cs{1.0};
  int nz_lo = 3, nz_hi = 8;
  int nl_lo = 4, nl_hi = 12;
  bool vacuum_control = true;
};
/// One dimension check per (c, N_z, N_lambda) cell plus the vacuum control.
SuiteReport isotropy_suite(const IsotropySweep& sweep);

/// k <-> -k-4 gauge equivalence on random (z, lambda) samples.
SuiteReport gauges_suite(std::span<const int> ks, cplx c, const SampleSpec& samples);

/// The p+ reduction chain for xi_{-2}, the cylinder it generates and its closing
/// at lambda0 = +-1 (c = 1/16 gives 4 sqrt(c) = 1).
SuiteReport reduced_cylinder_suite(double c, const SampleSpec& samples);

/// dL~ - L~ xi through order N_z - 2, as series and columnwise.
SuiteReport frobenius_suite(std::span<const cplx> cs, int n_z);

/// Synthetic F B round trips, the vacuum closed form, unitarity and B(0).
SuiteReport iwasawa_suite(std::uint64_t seed, int trials);

struct NonclosingSpec {
  cplx c = 1.0;
  int lambda0_count = 16;
  double margin = 1e-3;  // seam defect must stay above this at every lambda0
  SurfaceOptions surface;
};
/// k = -1 monodromy distances and trace, seam defect margin over lambda0,
/// and the k = 0 control.
SuiteReport nonclosing_suite(const NonclosingSpec& spec);
/// Geometric seam defect against the tau* f prediction on the k = -1 annulus.
SuiteReport seam_prediction_suite(const NonclosingSpec& spec);

/// Discrete mean curvature of vacuum and Smyth k = 0 meshes on n x n grids.
SuiteReport cmc_suite(int n, double h = 0.5);

}  // namespace dpw
