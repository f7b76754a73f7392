#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nugap/circle.hpp"
#include "nugap/config.hpp"

namespace nugap {

// n x n finite section of the Toeplitz operator with the given symbol
// coefficients: entry (j, k) = c_{j-k}, zero outside the band.
struct ToeplitzSection {
  FourierCoeffs coeffs;
  int n = 0;
  Eigen::MatrixXcd matrix;
};

ToeplitzSection toeplitz_section(const FourierCoeffs& coeffs, int n);

struct IndexEstimate {
  int index = 0;  // -winding of the (determinant) symbol
  WindingReport det_winding;
  // sigma_min of finite sections: plausibility witness only, never an
  // index estimator (finite sections do not converge to the index).
  std::vector<std::pair<int, double>> sigma_min_trace;
};

// Fredholm index of T_f for a scalar symbol via the winding route, with a
// sigma_min section trace as a consistency witness.
IndexEstimate index_estimate(const ScalarSampler& f,
                             const NumericConfig& cfg = {});
// Matrix symbols are handled exclusively through their determinant.
IndexEstimate index_estimate_matrix(const MatrixSampler& f,
                                    const NumericConfig& cfg = {});

// ||T_n(fg) - T_n(f) T_n(g)|| in the spectral norm: the finite-section
// witness of semicommutator compactness.
double semicommutator_norm(const ScalarSampler& f, const ScalarSampler& g,
                           int n, const NumericConfig& cfg = {});

}  // namespace nugap
