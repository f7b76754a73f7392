#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nugap/config.hpp"
#include "nugap/poly.hpp"

namespace nugap {

using ScalarSampler = std::function<Complex(double)>;
using MatrixSampler = std::function<Eigen::MatrixXcd(double)>;

// Uniform angular grid on [0, 2pi); size a power of two, at least 64.
class CircleGrid {
 public:
  explicit CircleGrid(int n);
  int size() const { return static_cast<int>(thetas_.size()); }
  const std::vector<double>& thetas() const { return thetas_; }
  double theta(int k) const { return thetas_[static_cast<size_t>(k)]; }
  Complex point(int k) const;

 private:
  std::vector<double> thetas_;
};

// Winding number of a nonvanishing circle symbol from unwrapped phase
// increments; valid when min_modulus stayed above the invertibility floor
// and every phase step fit under pi/2.
struct WindingReport {
  int winding = 0;
  double min_modulus = 0.0;
  long samples_used = 0;
  double max_phase_step = 0.0;
};

// Phase-unwrapping winding count with local bisection refinement. Throws
// NotInvertibleError when a sample dips below cfg.tol_invertible and
// BudgetExhaustedError when refinement cannot certify within the sample
// budget.
WindingReport winding_number(const ScalarSampler& f,
                             const NumericConfig& cfg = {});

struct NormEstimate {
  double value = 0.0;
  double theta_star = 0.0;
  int grid_size = 0;
};

// sup over the circle of sigma_max(M(theta)), estimated on the grid and
// sharpened by golden-section search around the leading local maxima. The
// value is a certified lower bound of the true sup.
NormEstimate linf_norm(const MatrixSampler& m, const NumericConfig& cfg = {});
NormEstimate linf_norm_scalar(const ScalarSampler& f,
                              const NumericConfig& cfg = {});

// Fourier coefficients c_k, |k| <= n, of a circle symbol; c[k + n] holds c_k.
struct FourierCoeffs {
  std::vector<Complex> c;
  int n = 0;
  Complex at(int k) const { return c[static_cast<size_t>(k + n)]; }
  // Value of the truncated series at radius r: sum c_k r^|k| e^{ik theta}.
  Complex eval(double r, double theta) const;
};

FourierCoeffs fourier_coeffs(const ScalarSampler& f, int n,
                             const NumericConfig& cfg = {});

// Winding of the harmonic (Poisson) extension on the circle of radius r,
// with the modulus floor tracked on the dyadic radii r, (1+r)/2, ... toward
// the boundary. The Fredholm-index surrogate is -winding.
WindingReport poisson_winding(const FourierCoeffs& coeffs, double r,
                              const NumericConfig& cfg = {});

}  // namespace nugap
