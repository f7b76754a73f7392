#pragma once

#include <optional>

#include "nugap/circle.hpp"
#include "nugap/config.hpp"
#include "nugap/factorization.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/transfer_matrix.hpp"

namespace nugap {

// Closed-loop symbol H(P,C) = [P; I](I - CP)^{-1}[-C, I], evaluated in the
// cancellation-free form G (Kt G)^{-1} Kt built from stable factors only.
// The sampler throws SingularAtPointError where Kt G is numerically
// singular.
MatrixSampler closed_loop_sampler(const GraphSymbols& plant,
                                  const ControllerSymbols& ctrl,
                                  const NumericConfig& cfg = {});

struct StabilizationReport {
  bool ok = false;
  int det_winding = 0;
  double det_min_modulus = 0.0;
  // det(Kt G) lost invertibility on (or within the exclusion band of) the
  // circle itself.
  bool boundary_marginal = false;
};

StabilizationReport stabilizes(const GraphSymbols& plant,
                               const ControllerSymbols& ctrl,
                               const NumericConfig& cfg = {});
StabilizationReport stabilizes(const TransferMatrix& p,
                               const TransferMatrix& c,
                               const NumericConfig& cfg = {});

// Zeros of det(Kt G) after rational reduction: the closed-loop pole
// locations. The independent cross-check for stabilizes(): all strictly
// outside the closed unit disk iff the loop is stable.
std::vector<Complex> closed_loop_pole_candidates(const GraphSymbols& plant,
                                                 const ControllerSymbols& ctrl,
                                                 const NumericConfig& cfg = {});

struct MarginReport {
  bool stabilizes = false;
  std::optional<double> hinf_norm;
  double margin = 0.0;  // 1 / hinf_norm when stabilized, else 0
  int det_winding = 0;
  double det_min_modulus = 0.0;
  bool boundary_marginal = false;
};

MarginReport stability_margin(const GraphSymbols& plant,
                              const ControllerSymbols& ctrl,
                              const NumericConfig& cfg = {});
MarginReport stability_margin(const TransferMatrix& p, const TransferMatrix& c,
                              const NumericConfig& cfg = {});

struct RobustnessReport {
  double lhs = 0.0;    // margin of (P, C)
  double rhs = 0.0;    // margin of (P0, C) - d_nu(P0, P)
  double slack = 0.0;  // lhs - rhs, nonnegative by the robustness bound
  double margin_nominal = 0.0;
  double margin_perturbed = 0.0;
  double dnu = 0.0;
};

RobustnessReport robustness_check(const TransferMatrix& p0,
                                  const TransferMatrix& p,
                                  const TransferMatrix& c,
                                  const NumericConfig& cfg = {});

}  // namespace nugap
