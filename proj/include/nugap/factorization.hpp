#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nugap/circle.hpp"
#include "nugap/config.hpp"
#include "nugap/poly.hpp"
#include "nugap/poly_matrix.hpp"
#include "nugap/transfer_matrix.hpp"

namespace nugap {

// Rational matrix with one shared stable scalar denominator: entry (i, j)
// is num(i, j) / den.
struct RationalMatrix {
  PolyMatrix num;
  Polynomial den;

  int rows() const { return num.rows(); }
  int cols() const { return num.cols(); }
  Eigen::MatrixXcd eval(Complex z) const { return num.eval(z) / den.eval(z); }
  RationalMatrix transpose() const { return {num.transpose(), den}; }
};

// Hermitian trigonometric matrix polynomial sum_{k=-q..q} C_k zeta^k with
// C_{-k} = C_k^H; stores k = 0..q.
struct TrigMatrixPoly {
  std::vector<Eigen::MatrixXcd> c;  // c[k] = C_k, k = 0..q
  int size() const { return static_cast<int>(c.front().rows()); }
  int band() const { return static_cast<int>(c.size()) - 1; }
  Eigen::MatrixXcd coeff(int k) const;  // any k, Hermitian reflection
  Eigen::MatrixXcd eval(double theta) const;
  static TrigMatrixPoly from_gram(const PolyMatrix& s);
  void trim(double rel_tol = 1e-13);
};

// Outer polynomial r with |r(zeta)|^2 = phi(zeta) on the circle and
// r(1) > 0, by companion roots of z^q phi(z) and inside/outside pairing.
// phi is given by Fourier coefficients (must be Hermitian); throws
// NotPositiveError when phi is not strictly positive on the check grid.
Polynomial spectral_factor_scalar(const FourierCoeffs& phi,
                                  const NumericConfig& cfg = {});

struct MatrixSpectralFactor {
  PolyMatrix factor;  // R with R(zeta)^H R(zeta) = Phi(zeta), det R outer
  double residual = 0.0;
  int section = 0;  // converged Toeplitz section size
};

// Bauer's method: banded Cholesky of the block-Toeplitz section of Phi,
// processed from the bottom-right corner so the top block row converges to
// the outer factor. Section size doubles until the grid residual clears
// cfg.tol_specfac_mat.
MatrixSpectralFactor spectral_factor_matrix(const TrigMatrixPoly& phi,
                                            const NumericConfig& cfg = {});

struct NormalizedFactorization {
  FractionSide side = FractionSide::Right;
  RationalMatrix n;  // right: P = n d^{-1}; left: P = d^{-1} n
  RationalMatrix d;
  double residual_norm = 0.0;
  std::optional<double> bezout_residual;

  // Provenance for certificates and diagnostics.
  PolyMatrixFraction mfd;
  PolyMatrix spectral;  // R (right) or the transpose-dual R' (left)
};

NormalizedFactorization nrcf(const TransferMatrix& p,
                             const NumericConfig& cfg = {});
// Left factorization through the transpose duality with nrcf(P^T).
NormalizedFactorization nlcf(const TransferMatrix& p,
                             const NumericConfig& cfg = {});

// G = [N; D] (isometric columns) and Gt = [-Dt, Nt] (coisometric rows)
// for the same plant; Gt G = 0 as a function.
struct GraphSymbols {
  int p = 0, m = 0;
  RationalMatrix g;   // (p+m) x m
  RationalMatrix gt;  // p x (p+m)
  double residual_right = 0.0;
  double residual_left = 0.0;

  Eigen::MatrixXcd eval_g(double theta) const {
    return g.eval(std::polar(1.0, theta));
  }
  Eigen::MatrixXcd eval_gt(double theta) const {
    return gt.eval(std::polar(1.0, theta));
  }
};

// K = [D_C; N_C] and Kt = [-Nt_C, Dt_C] for a controller C in S(R, m, p).
struct ControllerSymbols {
  int p = 0, m = 0;  // plant-side dimensions: C is m x p
  RationalMatrix k;   // (p+m) x p
  RationalMatrix kt;  // m x (p+m)

  Eigen::MatrixXcd eval_k(double theta) const {
    return k.eval(std::polar(1.0, theta));
  }
  Eigen::MatrixXcd eval_kt(double theta) const {
    return kt.eval(std::polar(1.0, theta));
  }
};

GraphSymbols graph_symbols(const TransferMatrix& p,
                           const NumericConfig& cfg = {});
ControllerSymbols controller_symbols(const TransferMatrix& c,
                                     const NumericConfig& cfg = {});

struct BezoutCertificate {
  RationalMatrix x;  // m x p, stable
  RationalMatrix y;  // m x m, stable
  double residual = 0.0;
};

// Stable (X, Y) with X N + Y D = I for a right factorization. SISO is
// solved exactly through the scalar Bezout identity scaled by the spectral
// factor; MIMO by degree-bounded least squares on X Np + Y Dp = R. Throws
// CertificateNotFoundError when the MIMO residual stays above
// cfg.tol_bezout_mat.
BezoutCertificate bezout_certificate(const NormalizedFactorization& f,
                                     const NumericConfig& cfg = {});

}  // namespace nugap
