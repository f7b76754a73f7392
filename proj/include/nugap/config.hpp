#pragma once

#include <cstdint>

namespace nugap {

// Central numeric tolerances and resolution knobs. Every operation that
// makes a floating-point decision takes one of these explicitly, so a
// whole run can be retuned (or reproduced) from a single record.
struct NumericConfig {
  double tol_root = 1e-7;         // root clustering / identification radius
  double tol_eval = 1e-8;         // relative residual for accepting a root
  double tol_div = 1e-8;          // relative polynomial division remainder
  double tol_bezout = 1e-8;       // coefficient-space Bezout residual
  double tol_bezout_mat = 1e-6;   // matrix Bezout certificate, sup on grid
  double tol_rank = 1e-7;         // sigma_min threshold for coprimeness
  double dist_circle_min = 1e-6;  // exclusion band around |z| = 1 for poles
  double tol_normalization = 1e-8;
  double tol_graph = 1e-7;        // annihilation residual for graph symbols
  double tol_specfac = 1e-9;      // scalar spectral factor, relative on grid
  double tol_specfac_mat = 1e-7;  // matrix spectral factor, absolute on grid
  double tol_invertible = 1e-6;   // modulus floor certifying invertibility
  double tol_norm_rel = 1e-9;     // L-inf refinement stagnation threshold
  double tol_poisson = 1e-9;      // truncation target for harmonic extension

  int grid_size = 1024;           // default circle grid (power of two)
  int validation_grid = 512;      // factorization validation grid
  int positivity_grid = 1024;     // spectral-factor positivity check grid
  int winding_grid = 256;         // initial winding grid
  long winding_budget = 1L << 20; // max samples in winding refinement
  int refine_maxima = 8;          // grid maxima refined by golden section

  int bauer_initial_section = 64;
  int bauer_max_section = 4096;

  int max_dim = 8;                // cap on p, m
  int max_entry_degree = 12;      // cap on per-entry degrees at generation
};

}  // namespace nugap
