#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "dpw/certificates.hpp"
#include "dpw/errors.hpp"

using namespace dpw;

namespace {

struct Criterion {
  int number;
  std::string title;
  double runtime_limit;  // seconds, 0 for none
  std::function<SuiteReport()> run;
};

const std::vector<cplx> kMonodromyCs{1.0, 2.0, kI};
const std::vector<cplx> kAllCs{1.0, 2.0, kI, {2.0, -1.0}};

std::vector<Criterion> criteria() {
  NonclosingSpec nonclosing;
  nonclosing.c = 1.0;
  nonclosing.lambda0_count = 16;
  return {
      {1, "monodromy of xi_{-1} matches [[1,0],[2 pi i c/lambda,1]]", 30.0,
       [] { return monodromy_suite(kMonodromyCs, 64); }},
      {2, "isotropy kernel dimension 1 on {3..8}x{4..12}, vacuum control > 1", 120.0,
       [] {
         IsotropySweep sweep;
         sweep.cs = kAllCs;
         return isotropy_suite(sweep);
       }},
      {3, "k=-1 monodromy never +-id and the surface never closes; k=0 closes", 0.0,
       [nonclosing] { return nonclosing_suite(nonclosing); }},
      {4, "k <-> -k-4 gauge equivalence; k=-2 reduction chain, cylinder fit and closing", 0.0,
       [] {
         const std::vector<int> ks{0, 1, 2, -2};
         SampleSpec samples;
         samples.count = 100;
         samples.seed = 4;
         SuiteReport r = gauges_suite(ks, 1.0, samples);
         r.merge(reduced_cylinder_suite(1.0 / 16.0, samples));
         return r;
       }},
      {5, "Frobenius series solves dL~ = L~ xi through order N_z - 2 (N_z = 10)", 0.0,
       [] { return frobenius_suite(kAllCs, 10); }},
      {6, "Iwasawa round trips, vacuum closed form, unitarity, B(0)", 0.0, [] { return iwasawa_suite(7, 10); }},
      {7, "discrete mean curvature of vacuum and Smyth k=0 meshes (64x64)", 120.0, [] { return cmc_suite(64); }},
      {8, "seam defect equals the tau* f prediction on the k=-1 annulus", 0.0,
       [nonclosing] { return seam_prediction_suite(nonclosing); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = false;
  for (int i = 1; i < argc; ++i) verbose = verbose || std::strcmp(argv[i], "--verbose") == 0;

  int failed = 0;
  for (const Criterion& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    std::string error;
    try {
      report = c.run();
    } catch (const Error& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && c.runtime_limit > 0.0) {
      report.add("runtime seconds", seconds, c.runtime_limit);
    }
    const bool pass = error.empty() && report.passed();
    failed += pass ? 0 : 1;

    std::size_t ok = 0;
    for (const Check& k : report.checks) ok += k.passed() ? 1 : 0;
    std::cout << "criterion " << c.number << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
              << (error.empty() ? std::to_string(ok) + "/" + std::to_string(report.checks.size()) + " checks"
                                : "error: " + error)
              << ")\n";
    if (verbose) {
      write_report(std::cout, report);
    } else if (!pass) {
      for (const Check& k : report.checks) {
        if (!k.passed()) std::cout << "    failing: " << k.name << " = " << k.measured << '\n';
      }
    }
  }
  std::cout << (failed == 0 ? "all criteria pass\n" : std::to_string(failed) + " criteria fail\n");
  return failed == 0 ? 0 : 1;
}
