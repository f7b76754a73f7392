#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nugap/poly.hpp"

namespace nugap {

// Matrix polynomial sum_k C[k] z^k with dense complex coefficient matrices,
// ascending in k. Shape is fixed across coefficients.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<Eigen::MatrixXcd> coeffs);

  static PolyMatrix zero(int rows, int cols);
  static PolyMatrix identity(int n);
  static PolyMatrix constant(Eigen::MatrixXcd c);
  static PolyMatrix from_scalar(const Polynomial& p);
  static PolyMatrix from_entries(
      const std::vector<std::vector<Polynomial>>& entries);
  // Block-diagonal with scalar polynomials on the diagonal.
  static PolyMatrix diag(const std::vector<Polynomial>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool empty() const { return coeffs_.empty(); }
  const std::vector<Eigen::MatrixXcd>& coeffs() const { return coeffs_; }
  // Coefficient of z^k; zero matrix outside the stored range.
  Eigen::MatrixXcd coeff(int k) const;

  Eigen::MatrixXcd eval(Complex z) const;
  Polynomial entry(int i, int j) const;
  double coeff_norm() const;  // max over k of max-abs entry

  PolyMatrix operator+(const PolyMatrix& rhs) const;
  PolyMatrix operator-(const PolyMatrix& rhs) const;
  PolyMatrix operator*(const PolyMatrix& rhs) const;
  PolyMatrix operator*(const Polynomial& rhs) const;
  PolyMatrix operator*(Complex scalar) const;
  PolyMatrix transpose() const;

  // Stack [top; bottom] sharing the column count.
  static PolyMatrix vstack(const PolyMatrix& top, const PolyMatrix& bottom);
  // Concatenate [left, right] sharing the row count.
  static PolyMatrix hstack(const PolyMatrix& left, const PolyMatrix& right);

  // Determinant by evaluation at scaled roots of unity and FFT
  // interpolation; exact for polynomial data up to roundoff. radius picks
  // the sampling circle.
  Polynomial det(double radius = 1.0) const;
  // Adjugate via pointwise cofactors on the sampling circle (no division
  // by the determinant), interpolated per entry.
  PolyMatrix adjugate(double radius = 1.0) const;

  void trim(double rel_tol = 1e-13);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Eigen::MatrixXcd> coeffs_;
};

// Fourier coefficients C_n, n = -q..q, of the Hermitian circle symbol
// S(z)^H S(z) restricted to |z| = 1: C_n = sum_j S_j^H S_{j+n}.
// Returned ascending from n = -q at index 0; q = deg S.
std::vector<Eigen::MatrixXcd> gram_symbol_coeffs(const PolyMatrix& s);

}  // namespace nugap
