#pragma once

#include <optional>

#include "nugap/circle.hpp"
#include "nugap/config.hpp"
#include "nugap/factorization.hpp"
#include "nugap/transfer_matrix.hpp"

namespace nugap {

struct WindingConditionReport {
  bool invertible = false;
  int winding = 0;
  double min_modulus = 0.0;
  long samples = 0;
  bool holds() const { return invertible && winding == 0; }
};

// Samples f(zeta) = det(G1(zeta)^* G2(zeta)) and certifies its modulus
// floor and winding number. Non-invertibility is a result state here, not
// an error.
WindingConditionReport winding_condition(const GraphSymbols& g1,
                                         const GraphSymbols& g2,
                                         const NumericConfig& cfg = {});

struct NuMetricDiagnostics {
  int norm_grid = 0;
  long winding_samples = 0;
  double residual_1 = 0.0;  // factorization residuals of the two plants
  double residual_2 = 0.0;
};

struct NuMetricOutcome {
  double value = 1.0;
  bool condition_met = false;
  std::optional<int> winding;
  double min_modulus = 0.0;
  std::optional<double> theta_star;
  NuMetricDiagnostics diagnostics;
};

// The nu-metric: ||Gt2 G1||_inf when det(G1^* G2) is invertible with
// winding zero, and 1 otherwise. Throws InternalInconsistencyError if the
// norm exceeds 1 beyond tolerance under a satisfied condition.
NuMetricOutcome nu_metric(const TransferMatrix& p1, const TransferMatrix& p2,
                          const NumericConfig& cfg = {});
// Same with caller-cached factorizations.
NuMetricOutcome nu_metric(const GraphSymbols& g1, const GraphSymbols& g2,
                          const NumericConfig& cfg = {});

// Pointwise gap at zeta = e^{i theta}: the chordal distance
// |a - b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)) for SISO plants (computed from
// plant values only, independent of any factorization), and
// sigma_max(Gt2(zeta) G1(zeta)) for MIMO.
double pointwise_gap(const TransferMatrix& p1, const TransferMatrix& p2,
                     double theta, const NumericConfig& cfg = {});

}  // namespace nugap
