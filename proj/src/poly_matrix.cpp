#include "nugap/poly_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nugap/fft.hpp"

namespace nugap {

PolyMatrix::PolyMatrix(std::vector<Eigen::MatrixXcd> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("PolyMatrix: need at least one coefficient");
  rows_ = static_cast<int>(coeffs_.front().rows());
  cols_ = static_cast<int>(coeffs_.front().cols());
  for (const auto& c : coeffs_)
    if (c.rows() != rows_ || c.cols() != cols_)
      throw std::invalid_argument("PolyMatrix: inconsistent coefficient shape");
  trim();
}

PolyMatrix PolyMatrix::zero(int rows, int cols) {
  return PolyMatrix({Eigen::MatrixXcd::Zero(rows, cols)});
}

PolyMatrix PolyMatrix::identity(int n) {
  return PolyMatrix({Eigen::MatrixXcd::Identity(n, n)});
}

PolyMatrix PolyMatrix::constant(Eigen::MatrixXcd c) {
  return PolyMatrix({std::move(c)});
}

PolyMatrix PolyMatrix::from_scalar(const Polynomial& p) {
  std::vector<Eigen::MatrixXcd> coeffs;
  const int d = std::max(p.degree(), 0);
  for (int k = 0; k <= d; ++k) {
    Eigen::MatrixXcd c(1, 1);
    c(0, 0) = p.coeff(k);
    coeffs.push_back(std::move(c));
  }
  return PolyMatrix(std::move(coeffs));
}

PolyMatrix PolyMatrix::from_entries(
    const std::vector<std::vector<Polynomial>>& entries) {
  const int p = static_cast<int>(entries.size());
  const int m = p > 0 ? static_cast<int>(entries.front().size()) : 0;
  int deg = 0;
  for (const auto& row : entries)
    for (const auto& e : row) deg = std::max(deg, e.degree());
  std::vector<Eigen::MatrixXcd> coeffs(
      static_cast<size_t>(deg) + 1, Eigen::MatrixXcd::Zero(p, m));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k <= entries[i][j].degree(); ++k)
        coeffs[static_cast<size_t>(k)](i, j) = entries[i][j].coeff(k);
  return PolyMatrix(std::move(coeffs));
}

PolyMatrix PolyMatrix::diag(const std::vector<Polynomial>& entries) {
  const int n = static_cast<int>(entries.size());
  int deg = 0;
  for (const auto& e : entries) deg = std::max(deg, e.degree());
  std::vector<Eigen::MatrixXcd> coeffs(
      static_cast<size_t>(deg) + 1, Eigen::MatrixXcd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= entries[static_cast<size_t>(i)].degree(); ++k)
      coeffs[static_cast<size_t>(k)](i, i) =
          entries[static_cast<size_t>(i)].coeff(k);
  return PolyMatrix(std::move(coeffs));
}

Eigen::MatrixXcd PolyMatrix::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size()))
    return Eigen::MatrixXcd::Zero(rows_, cols_);
  return coeffs_[static_cast<size_t>(k)];
}

Eigen::MatrixXcd PolyMatrix::eval(Complex z) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows_, cols_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + *it;
  return acc;
}

Polynomial PolyMatrix::entry(int i, int j) const {
  std::vector<Complex> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](i, j);
  return Polynomial(std::move(c));
}

double PolyMatrix::coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& rhs) const {
  std::vector<Eigen::MatrixXcd> c(
      std::max(coeffs_.size(), rhs.coeffs_.size()),
      Eigen::MatrixXcd::Zero(rows_, cols_));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) c[k] += rhs.coeffs_[k];
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& rhs) const {
  return *this + rhs * Complex(-1.0);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("PolyMatrix: shape mismatch in product");
  std::vector<Eigen::MatrixXcd> c(
      coeffs_.size() + rhs.coeffs_.size() - 1,
      Eigen::MatrixXcd::Zero(rows_, rhs.cols_));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::operator*(const Polynomial& rhs) const {
  const int d = std::max(rhs.degree(), 0);
  std::vector<Eigen::MatrixXcd> c(
      coeffs_.size() + static_cast<size_t>(d),
      Eigen::MatrixXcd::Zero(rows_, cols_));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (int k = 0; k <= d; ++k) c[i + static_cast<size_t>(k)] += coeffs_[i] * rhs.coeff(k);
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::operator*(Complex scalar) const {
  std::vector<Eigen::MatrixXcd> c(coeffs_);
  for (auto& x : c) x *= scalar;
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::transpose() const {
  std::vector<Eigen::MatrixXcd> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k].transpose();
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::vstack(const PolyMatrix& top, const PolyMatrix& bottom) {
  if (top.cols() != bottom.cols())
    throw std::invalid_argument("PolyMatrix::vstack: column mismatch");
  const size_t n = std::max(top.coeffs_.size(), bottom.coeffs_.size());
  std::vector<Eigen::MatrixXcd> c(
      n, Eigen::MatrixXcd::Zero(top.rows() + bottom.rows(), top.cols()));
  for (size_t k = 0; k < n; ++k) {
    if (k < top.coeffs_.size()) c[k].topRows(top.rows()) = top.coeffs_[k];
    if (k < bottom.coeffs_.size())
      c[k].bottomRows(bottom.rows()) = bottom.coeffs_[k];
  }
  return PolyMatrix(std::move(c));
}

PolyMatrix PolyMatrix::hstack(const PolyMatrix& left, const PolyMatrix& right) {
  if (left.rows() != right.rows())
    throw std::invalid_argument("PolyMatrix::hstack: row mismatch");
  const size_t n = std::max(left.coeffs_.size(), right.coeffs_.size());
  std::vector<Eigen::MatrixXcd> c(
      n, Eigen::MatrixXcd::Zero(left.rows(), left.cols() + right.cols()));
  for (size_t k = 0; k < n; ++k) {
    if (k < left.coeffs_.size()) c[k].leftCols(left.cols()) = left.coeffs_[k];
    if (k < right.coeffs_.size())
      c[k].rightCols(right.cols()) = right.coeffs_[k];
  }
  return PolyMatrix(std::move(c));
}

Polynomial PolyMatrix::det(double radius) const {
  if (rows_ != cols_)
    throw std::invalid_argument("PolyMatrix::det: square matrix required");
  if (rows_ == 1) return entry(0, 0);
  const int bound = rows_ * std::max(degree(), 0) + 1;
  const int n = next_pow2(std::max(bound, 8));
  std::vector<Complex> samples(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Complex z =
        std::polar(radius, 2.0 * std::numbers::pi * k / static_cast<double>(n));
    samples[static_cast<size_t>(k)] = eval(z).determinant();
  }
  // Coefficient recovery is the analysis transform: forward FFT over n.
  fft_inplace(samples, false);
  double rpow = 1.0;
  for (int k = 0; k < n; ++k) {
    samples[static_cast<size_t>(k)] /= rpow * static_cast<double>(n);
    rpow *= radius;
  }
  samples.resize(static_cast<size_t>(bound));
  Polynomial result{std::vector<Complex>(samples)};
  // Interpolation noise below the representable coefficient scale.
  std::vector<Complex> cleaned = result.coeffs();
  const double floor = result.coeff_norm() * 1e-12;
  for (Complex& c : cleaned)
    if (std::abs(c) < floor) c = Complex(0.0);
  return Polynomial(std::move(cleaned));
}

PolyMatrix PolyMatrix::adjugate(double radius) const {
  if (rows_ != cols_)
    throw std::invalid_argument("PolyMatrix::adjugate: square matrix required");
  const int k = rows_;
  if (k == 1) return identity(1);
  const int bound = (k - 1) * std::max(degree(), 0) + 1;
  const int n = next_pow2(std::max(bound, 8));

  std::vector<Eigen::MatrixXcd> adj_samples(
      static_cast<size_t>(n), Eigen::MatrixXcd::Zero(k, k));
  Eigen::MatrixXcd minor(k - 1, k - 1);
  for (int s = 0; s < n; ++s) {
    const Complex z =
        std::polar(radius, 2.0 * std::numbers::pi * s / static_cast<double>(n));
    const Eigen::MatrixXcd a = eval(z);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        for (int r = 0, rr = 0; r < k; ++r) {
          if (r == i) continue;
          for (int c = 0, cc = 0; c < k; ++c) {
            if (c == j) continue;
            minor(rr, cc) = a(r, c);
            ++cc;
          }
          ++rr;
        }
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        // adj(A)_{j,i} = (-1)^{i+j} det(minor_{i,j})
        adj_samples[static_cast<size_t>(s)](j, i) = sign * minor.determinant();
      }
    }
  }

  std::vector<Eigen::MatrixXcd> coeffs(
      static_cast<size_t>(bound), Eigen::MatrixXcd::Zero(k, k));
  std::vector<Complex> scratch(static_cast<size_t>(n));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int s = 0; s < n; ++s)
        scratch[static_cast<size_t>(s)] = adj_samples[static_cast<size_t>(s)](i, j);
      fft_inplace(scratch, false);
      double rpow = 1.0;
      for (int d = 0; d < bound; ++d) {
        coeffs[static_cast<size_t>(d)](i, j) =
            scratch[static_cast<size_t>(d)] / (rpow * static_cast<double>(n));
        rpow *= radius;
      }
    }
  }
  PolyMatrix adj(std::move(coeffs));
  adj.trim(1e-12);
  return adj;
}

void PolyMatrix::trim(double rel_tol) {
  const double floor = coeff_norm() * rel_tol;
  while (coeffs_.size() > 1 &&
         coeffs_.back().cwiseAbs().maxCoeff() <= floor)
    coeffs_.pop_back();
}

std::vector<Eigen::MatrixXcd> gram_symbol_coeffs(const PolyMatrix& s) {
  const int q = std::max(s.degree(), 0);
  const int m = s.cols();
  std::vector<Eigen::MatrixXcd> c(
      static_cast<size_t>(2 * q + 1), Eigen::MatrixXcd::Zero(m, m));
  for (int n = -q; n <= q; ++n) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 0; j <= q; ++j) {
      const int jn = j + n;
      if (jn < 0 || jn > q) continue;
      acc += s.coeff(j).adjoint() * s.coeff(jn);
    }
    c[static_cast<size_t>(n + q)] = std::move(acc);
  }
  return c;
}

}  // namespace nugap
