#pragma once

// Iwasawa splitting L = F B of twisted loops. The SU(2) splitting reduces to
// the spectral factorization star(L) L = star(B) B with B in Lambda_+^R;
// the SU(1,1) variant factors star(L) J L = star(B) J B and reports which
// open cell L lies in.
//
// Factorization runs on a finite block-Toeplitz section [Q_{k-n}] of the
// Laurent coefficients of Q. The block Levinson recursion yields the first
// block column of the inverse of the section, i.e. a polynomial C in
// Lambda_+ with B = C^{-1}; the section doubles until the result settles.

#include <optional>
#include <span>
#include <vector>

#include "dpw/loop_matrix.hpp"

namespace dpw {

struct FactorizationOptions {
  double positivity_tol = 1e-10;  // on sample eigenvalues and pivots, relative to max |Q|
  double pivot_tol = 1e-8;        // SU(1,1) cell boundary, relative to max |Q|
  double settle_tol = 1e-12;      // stop doubling when B changes less than this
  double residual_tol = 1e-12;    // or when star(B) J B matches Q to this
  int min_section = 4;
  int max_section = 4096;
  int refine_passes = 2;          // re-factor F while its unitarity defect exceeds refine_tol
  double refine_tol = 1e-12;
  double resolve_tol = 1e-10;     // Iwasawa doubles the grid while F has more than this beyond degree M/4
  double det_tol = 1e-6;          // det F is snapped to det L when it is already this close
  std::size_t max_grid = 1024;
};

/// Result of factoring sampled Q: values of B and C = B^{-1} on the same
/// grid, B(0), the section size used and the relative residual
/// max |B^H J B - Q| / max |Q| over the samples.
struct SpectralFactor {
  std::vector<Mat2> b;
  std::vector<Mat2> b_inv;
  Mat2 b0;
  int section = 0;
  double residual = 0.0;
};

/// Q given by samples on an M-point circle grid, Hermitian positive
/// definite at every sample. Throws NotPositive otherwise.
SpectralFactor spectral_factor(std::span<const Mat2> q, const FactorizationOptions& options = {});

/// B in Lambda_+ with star(B) B = Q and B(0) upper triangular with positive
/// real diagonal.
LoopMatrix spectral_factorize(const LoopMatrix& q, const LoopOptions& loop_options = {},
                              const FactorizationOptions& options = {});

struct IwasawaPair {
  LoopMatrix f;
  LoopMatrix b;
  double residual = 0.0;    // max coefficient distance of loop_mul(F, B) from L
  double unitarity = 0.0;   // max |F^H J F - J| over samples
  int section = 0;
};

struct IwasawaSamples {
  std::vector<Mat2> f;
  std::vector<Mat2> b;
  double unitarity = 0.0;
  double spectral_residual = 0.0;
  int section = 0;
};

/// Pointwise SU(2) splitting of L given by samples (the factor computation
/// itself is global in lambda). L is taken to be resolved by its samples; the
/// result comes back on a finer grid when B^{-1} needs one.
IwasawaSamples iwasawa_su2(std::span<const Mat2> l, const FactorizationOptions& options = {});
IwasawaPair iwasawa_su2(const LoopMatrix& l, const LoopOptions& loop_options = {},
                        const FactorizationOptions& options = {});

enum class Cell { kB1, kB2, kBoundary };
const char* cell_name(Cell cell);

struct Pivots {
  double first;   // (Pf)_11
  double second;  // Schur complement (Pf)_22 - |(Pf)_12|^2 / (Pf)_11
};

struct CellReport {
  Cell cell = Cell::kB1;
  std::vector<Pivots> pivots;  // one entry per Levinson step, relative to max |Q|
};

struct Su11Result {
  std::optional<IwasawaPair> pair;
  CellReport report;
};

/// Experimental. J = diag(1, -1); F satisfies F^H J F = J on the circle.
/// The pair is present only for cell B1.
Su11Result iwasawa_su11(const LoopMatrix& l, const LoopOptions& loop_options = {},
                        const FactorizationOptions& options = {});
/// Throws CellBoundary or NotInBigCell unless the result is in cell B1.
const IwasawaPair& require_big_cell(const Su11Result& result);

}  // namespace dpw
