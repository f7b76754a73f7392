#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nugap/config.hpp"
#include "nugap/poly.hpp"
#include "nugap/poly_matrix.hpp"

namespace nugap {

// p x m plant with reduced rational entries. Construction rejects entries
// whose denominator has a root within cfg.dist_circle_min of the unit
// circle: boundary poles make every norm and winding computation ill-posed.
class TransferMatrix {
 public:
  static TransferMatrix from_entries(std::vector<std::vector<RationalFn>> entries,
                                     const NumericConfig& cfg = {});
  static TransferMatrix scalar(RationalFn entry, const NumericConfig& cfg = {});
  static TransferMatrix zero(int p, int m);
  static TransferMatrix constant(const Eigen::MatrixXcd& value);

  int rows() const { return p_; }
  int cols() const { return m_; }
  const RationalFn& entry(int i, int j) const {
    return entries_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  // Entry-wise num(z)/den(z). Throws PoleProximityError within cfg.tol_root
  // of an entry pole.
  Eigen::MatrixXcd eval(Complex z, const NumericConfig& cfg = {}) const;

  TransferMatrix transpose() const;

 private:
  TransferMatrix() = default;
  int p_ = 0, m_ = 0;
  std::vector<std::vector<RationalFn>> entries_;
};

enum class FractionSide { Right, Left };

// Polynomial matrix-fraction description P = Np Dp^{-1} (Right) or
// Dp^{-1} Np (Left).
struct PolyMatrixFraction {
  PolyMatrix num;  // Np: p x m
  PolyMatrix den;  // Dp: m x m (Right)
  FractionSide side = FractionSide::Right;
  bool coprime = false;
};

// Right MFD with per-column denominator LCMs, GCRD-reduced. The result is
// flagged coprime only when check_right_coprime passes.
PolyMatrixFraction build_rmfd(const TransferMatrix& p,
                              const NumericConfig& cfg = {});

// Strips common right divisors by unitary column rotation and exact
// division at each rank-deficient root of det(Dp). The fraction's value is
// unchanged as a function.
PolyMatrixFraction gcrd_reduce(const PolyMatrixFraction& f,
                               const NumericConfig& cfg = {});

struct CoprimeReport {
  bool ok = false;
  // (root of det Dp, sigma_min of the stacked evaluation there)
  std::vector<std::pair<Complex, double>> witnesses;
};

CoprimeReport check_right_coprime(const PolyMatrixFraction& f,
                                  const NumericConfig& cfg = {});

// Poles of P with multiplicity: roots of det(Dp) of the coprime right MFD.
std::vector<Complex> poles(const TransferMatrix& p,
                           const NumericConfig& cfg = {});

}  // namespace nugap
