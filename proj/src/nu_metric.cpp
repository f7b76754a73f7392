#include "nugap/nu_metric.hpp"

#include <cmath>

#include "nugap/errors.hpp"

namespace nugap {

WindingConditionReport winding_condition(const GraphSymbols& g1,
                                         const GraphSymbols& g2,
                                         const NumericConfig& cfg) {
  if (g1.p != g2.p || g1.m != g2.m)
    throw std::invalid_argument("winding_condition: dimension mismatch");

  const ScalarSampler f = [&](double theta) {
    const Eigen::MatrixXcd product =
        g1.eval_g(theta).adjoint() * g2.eval_g(theta);
    return product.determinant();
  };

  WindingConditionReport report;
  try {
    const WindingReport w = winding_number(f, cfg);
    report.invertible = w.min_modulus >= cfg.tol_invertible;
    report.winding = w.winding;
    report.min_modulus = w.min_modulus;
    report.samples = w.samples_used;
  } catch (const NotInvertibleError& e) {
    report.invertible = false;
    report.winding = 0;
    report.min_modulus = e.min_modulus;
  }
  return report;
}

NuMetricOutcome nu_metric(const GraphSymbols& g1, const GraphSymbols& g2,
                          const NumericConfig& cfg) {
  const WindingConditionReport cond = winding_condition(g1, g2, cfg);

  NuMetricOutcome out;
  out.min_modulus = cond.min_modulus;
  out.diagnostics.winding_samples = cond.samples;
  out.diagnostics.residual_1 = std::max(g1.residual_right, g1.residual_left);
  out.diagnostics.residual_2 = std::max(g2.residual_right, g2.residual_left);
  if (cond.invertible) out.winding = cond.winding;

  if (!cond.holds()) {
    out.value = 1.0;
    out.condition_met = false;
    return out;
  }

  const NormEstimate norm = linf_norm(
      [&](double theta) {
        return Eigen::MatrixXcd(g2.eval_gt(theta) * g1.eval_g(theta));
      },
      cfg);
  if (norm.value > 1.0 + 1e-6)
    throw InternalInconsistencyError(
        "nu_metric: norm exceeds 1 under a satisfied winding condition");

  out.value = norm.value;
  out.condition_met = true;
  out.theta_star = norm.theta_star;
  out.diagnostics.norm_grid = norm.grid_size;
  return out;
}

NuMetricOutcome nu_metric(const TransferMatrix& p1, const TransferMatrix& p2,
                          const NumericConfig& cfg) {
  if (p1.rows() != p2.rows() || p1.cols() != p2.cols())
    throw std::invalid_argument("nu_metric: plants must share dimensions");
  return nu_metric(graph_symbols(p1, cfg), graph_symbols(p2, cfg), cfg);
}

double pointwise_gap(const TransferMatrix& p1, const TransferMatrix& p2,
                     double theta, const NumericConfig& cfg) {
  const Complex z = std::polar(1.0, theta);
  if (p1.rows() == 1 && p1.cols() == 1 && p2.rows() == 1 && p2.cols() == 1) {
    const Complex a = p1.eval(z, cfg)(0, 0);
    const Complex b = p2.eval(z, cfg)(0, 0);
    return std::abs(a - b) /
           (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
  }
  const GraphSymbols g1 = graph_symbols(p1, cfg);
  const GraphSymbols g2 = graph_symbols(p2, cfg);
  const Eigen::MatrixXcd product = g2.eval_gt(theta) * g1.eval_g(theta);
  return product.jacobiSvd().singularValues()(0);
}

}  // namespace nugap
