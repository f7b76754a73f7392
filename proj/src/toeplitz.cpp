#include "nugap/toeplitz.hpp"

#include <stdexcept>

#include "nugap/errors.hpp"

namespace nugap {

ToeplitzSection toeplitz_section(const FourierCoeffs& coeffs, int n) {
  if (n < 1)
    throw std::invalid_argument("toeplitz_section: n must be at least 1");
  ToeplitzSection section;
  section.coeffs = coeffs;
  section.n = n;
  section.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int lag = j - k;
      if (std::abs(lag) <= coeffs.n) section.matrix(j, k) = coeffs.at(lag);
    }
  return section;
}

namespace {

constexpr int kSectionSizes[] = {16, 32, 64, 128, 256};
constexpr int kMaxSection = 256;

IndexEstimate index_from_scalar(const ScalarSampler& det_symbol,
                                const NumericConfig& cfg) {
  IndexEstimate estimate;
  estimate.det_winding = winding_number(det_symbol, cfg);
  estimate.index = -estimate.det_winding.winding;

  const FourierCoeffs coeffs = fourier_coeffs(det_symbol, kMaxSection - 1, cfg);
  for (int n : kSectionSizes) {
    const ToeplitzSection section = toeplitz_section(coeffs, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(section.matrix);
    const double sigma_min = svd.singularValues().tail(1)(0);
    estimate.sigma_min_trace.emplace_back(n, sigma_min);
  }
  return estimate;
}

}  // namespace

IndexEstimate index_estimate(const ScalarSampler& f, const NumericConfig& cfg) {
  return index_from_scalar(f, cfg);
}

IndexEstimate index_estimate_matrix(const MatrixSampler& f,
                                    const NumericConfig& cfg) {
  return index_from_scalar(
      [&](double theta) { return f(theta).determinant(); }, cfg);
}

double semicommutator_norm(const ScalarSampler& f, const ScalarSampler& g,
                           int n, const NumericConfig& cfg) {
  const FourierCoeffs cf = fourier_coeffs(f, n - 1, cfg);
  const FourierCoeffs cg = fourier_coeffs(g, n - 1, cfg);
  const FourierCoeffs cfg_prod = fourier_coeffs(
      [&](double theta) { return f(theta) * g(theta); }, n - 1, cfg);

  const Eigen::MatrixXcd tf = toeplitz_section(cf, n).matrix;
  const Eigen::MatrixXcd tg = toeplitz_section(cg, n).matrix;
  const Eigen::MatrixXcd tfg = toeplitz_section(cfg_prod, n).matrix;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(tfg - tf * tg);
  return svd.singularValues()(0);
}

}  // namespace nugap
