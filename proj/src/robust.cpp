#include "nugap/robust.hpp"

#include <cmath>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

ScalarSampler det_ktg_sampler(const GraphSymbols& plant,
                              const ControllerSymbols& ctrl) {
  return [&plant, &ctrl](double theta) {
    const Eigen::MatrixXcd ktg = ctrl.eval_kt(theta) * plant.eval_g(theta);
    return ktg.determinant();
  };
}

}  // namespace

MatrixSampler closed_loop_sampler(const GraphSymbols& plant,
                                  const ControllerSymbols& ctrl,
                                  const NumericConfig& cfg) {
  if (plant.p != ctrl.p || plant.m != ctrl.m)
    throw std::invalid_argument("closed_loop_sampler: dimension mismatch");
  return [plant, ctrl, cfg](double theta) {
    const Eigen::MatrixXcd g = plant.eval_g(theta);
    const Eigen::MatrixXcd kt = ctrl.eval_kt(theta);
    const Eigen::MatrixXcd ktg = kt * g;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        ktg, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().tail(1)(0) < cfg.tol_invertible)
      throw SingularAtPointError(
          "closed_loop_sampler: Kt G numerically singular", theta);
    return Eigen::MatrixXcd(g * svd.solve(kt));
  };
}

StabilizationReport stabilizes(const GraphSymbols& plant,
                               const ControllerSymbols& ctrl,
                               const NumericConfig& cfg) {
  StabilizationReport report;
  try {
    const WindingReport w = winding_number(det_ktg_sampler(plant, ctrl), cfg);
    report.det_winding = w.winding;
    report.det_min_modulus = w.min_modulus;
    report.ok = w.min_modulus >= cfg.tol_invertible && w.winding == 0;
  } catch (const NotInvertibleError& e) {
    report.ok = false;
    report.det_min_modulus = e.min_modulus;
    report.boundary_marginal = true;
  }
  return report;
}

StabilizationReport stabilizes(const TransferMatrix& p, const TransferMatrix& c,
                               const NumericConfig& cfg) {
  if (p.rows() != c.cols() || p.cols() != c.rows())
    throw std::invalid_argument(
        "stabilizes: controller dimensions must be dual to the plant");
  return stabilizes(graph_symbols(p, cfg), controller_symbols(c, cfg), cfg);
}

std::vector<Complex> closed_loop_pole_candidates(const GraphSymbols& plant,
                                                 const ControllerSymbols& ctrl,
                                                 const NumericConfig& cfg) {
  // det(Kt G) = det(Ktnum Gnum) / (den_K den_G)^m as a rational function.
  const PolyMatrix product = ctrl.kt.num * plant.g.num;
  const Polynomial numerator = product.det();
  if (numerator.is_zero()) return {};

  Polynomial denominator = Polynomial::one();
  const Polynomial den_pair = ctrl.kt.den * plant.g.den;
  for (int i = 0; i < plant.m; ++i) denominator = denominator * den_pair;

  const RationalFn reduced =
      rational_simplify(RationalFn(numerator, denominator), cfg);
  if (reduced.num().degree() <= 0) return {};
  return poly_roots(reduced.num(), cfg);
}

MarginReport stability_margin(const GraphSymbols& plant,
                              const ControllerSymbols& ctrl,
                              const NumericConfig& cfg) {
  const StabilizationReport s = stabilizes(plant, ctrl, cfg);
  MarginReport report;
  report.stabilizes = s.ok;
  report.det_winding = s.det_winding;
  report.det_min_modulus = s.det_min_modulus;
  report.boundary_marginal = s.boundary_marginal;
  if (!s.ok) {
    report.margin = 0.0;
    return report;
  }
  const NormEstimate norm = linf_norm(closed_loop_sampler(plant, ctrl, cfg), cfg);
  report.hinf_norm = norm.value;
  report.margin = 1.0 / norm.value;
  return report;
}

MarginReport stability_margin(const TransferMatrix& p, const TransferMatrix& c,
                              const NumericConfig& cfg) {
  if (p.rows() != c.cols() || p.cols() != c.rows())
    throw std::invalid_argument(
        "stability_margin: controller dimensions must be dual to the plant");
  return stability_margin(graph_symbols(p, cfg), controller_symbols(c, cfg),
                          cfg);
}

RobustnessReport robustness_check(const TransferMatrix& p0,
                                  const TransferMatrix& p,
                                  const TransferMatrix& c,
                                  const NumericConfig& cfg) {
  const GraphSymbols g0 = graph_symbols(p0, cfg);
  const GraphSymbols gp = graph_symbols(p, cfg);
  const ControllerSymbols ctrl = controller_symbols(c, cfg);

  RobustnessReport report;
  report.margin_nominal = stability_margin(g0, ctrl, cfg).margin;
  report.margin_perturbed = stability_margin(gp, ctrl, cfg).margin;
  report.dnu = nu_metric(g0, gp, cfg).value;
  report.lhs = report.margin_perturbed;
  report.rhs = report.margin_nominal - report.dnu;
  report.slack = report.lhs - report.rhs;
  return report;
}

}  // namespace nugap
