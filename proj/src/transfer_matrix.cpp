#include "nugap/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

// Deterministic off-circle probe points for evaluation consistency checks.
std::vector<Complex> probe_points(int count, double lo_radius,
                                  double hi_radius) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count);
    const double r = lo_radius + (hi_radius - lo_radius) * t;
    pts.push_back(std::polar(r, 2.0 * std::numbers::pi * (0.13 + 0.77 * t)));
  }
  return pts;
}

}  // namespace

TransferMatrix TransferMatrix::from_entries(
    std::vector<std::vector<RationalFn>> entries, const NumericConfig& cfg) {
  TransferMatrix tm;
  tm.p_ = static_cast<int>(entries.size());
  if (tm.p_ == 0)
    throw std::invalid_argument("TransferMatrix: empty entry grid");
  tm.m_ = static_cast<int>(entries.front().size());
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != tm.m_ || tm.m_ == 0)
      throw std::invalid_argument("TransferMatrix: ragged entry grid");

  for (auto& row : entries)
    for (auto& e : row) {
      e = rational_simplify(e, cfg);
      if (e.den().degree() > 0) {
        for (const Complex& r : poly_roots(e.den(), cfg))
          if (std::abs(std::abs(r) - 1.0) < cfg.dist_circle_min)
            throw PoleProximityError(
                "TransferMatrix: entry pole on or near the unit circle", 0, 0,
                r);
      }
    }
  tm.entries_ = std::move(entries);
  return tm;
}

TransferMatrix TransferMatrix::scalar(RationalFn entry,
                                      const NumericConfig& cfg) {
  return from_entries({{std::move(entry)}}, cfg);
}

TransferMatrix TransferMatrix::zero(int p, int m) {
  std::vector<std::vector<RationalFn>> entries(
      static_cast<size_t>(p),
      std::vector<RationalFn>(static_cast<size_t>(m), RationalFn()));
  return from_entries(std::move(entries));
}

TransferMatrix TransferMatrix::constant(const Eigen::MatrixXcd& value) {
  std::vector<std::vector<RationalFn>> entries(
      static_cast<size_t>(value.rows()),
      std::vector<RationalFn>(static_cast<size_t>(value.cols()), RationalFn()));
  for (int i = 0; i < value.rows(); ++i)
    for (int j = 0; j < value.cols(); ++j)
      entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          RationalFn::constant(value(i, j));
  return from_entries(std::move(entries));
}

Eigen::MatrixXcd TransferMatrix::eval(Complex z, const NumericConfig& cfg) const {
  Eigen::MatrixXcd out(p_, m_);
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < m_; ++j) {
      const RationalFn& e = entry(i, j);
      const Complex den = e.den().eval(z);
      // Relative pole-proximity guard: |den(z)| tiny against its
      // coefficient scale means z sits on top of a pole.
      if (std::abs(den) < cfg.tol_root * std::max(1.0, e.den().coeff_norm()))
        throw PoleProximityError("tm_eval: evaluation at or near a pole", i, j,
                                 z);
      out(i, j) = e.num().eval(z) / den;
    }
  return out;
}

TransferMatrix TransferMatrix::transpose() const {
  std::vector<std::vector<RationalFn>> entries(
      static_cast<size_t>(m_),
      std::vector<RationalFn>(static_cast<size_t>(p_), RationalFn()));
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < m_; ++j)
      entries[static_cast<size_t>(j)][static_cast<size_t>(i)] = entry(i, j);
  TransferMatrix tm;
  tm.p_ = m_;
  tm.m_ = p_;
  tm.entries_ = std::move(entries);
  return tm;
}

CoprimeReport check_right_coprime(const PolyMatrixFraction& f,
                                  const NumericConfig& cfg) {
  if (f.side != FractionSide::Right)
    throw std::invalid_argument("check_right_coprime: right fraction required");
  const Polynomial det = f.den.det();
  if (det.is_zero())
    throw std::domain_error("check_right_coprime: det(Dp) identically zero");

  CoprimeReport report;
  report.ok = true;
  if (det.degree() == 0) return report;

  for (const Complex& root : poly_roots(det, cfg)) {
    Eigen::MatrixXcd stacked(f.num.rows() + f.den.rows(), f.num.cols());
    stacked.topRows(f.num.rows()) = f.num.eval(root);
    stacked.bottomRows(f.den.rows()) = f.den.eval(root);
    const double sigma_min =
        stacked.jacobiSvd().singularValues().tail(1)(0);
    report.witnesses.emplace_back(root, sigma_min);
    if (sigma_min < cfg.tol_rank) report.ok = false;
  }
  return report;
}

PolyMatrixFraction gcrd_reduce(const PolyMatrixFraction& f,
                               const NumericConfig& cfg) {
  if (f.side != FractionSide::Right)
    throw std::invalid_argument("gcrd_reduce: right fraction required");

  PolyMatrix num = f.num;
  PolyMatrix den = f.den;
  const int m = den.cols();
  const int max_passes = den.det().degree() + 2;

  for (int pass = 0; pass < max_passes; ++pass) {
    const Polynomial det = den.det();
    if (det.is_zero())
      throw std::domain_error("gcrd_reduce: det(Dp) identically zero");
    if (det.degree() == 0) break;

    bool deflated = false;
    for (const Complex& root : poly_roots(det, cfg)) {
      Eigen::MatrixXcd stacked(num.rows() + den.rows(), m);
      stacked.topRows(num.rows()) = num.eval(root);
      stacked.bottomRows(den.rows()) = den.eval(root);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
      const double sigma_min = svd.singularValues().tail(1)(0);
      if (sigma_min >= 10.0 * cfg.tol_rank) continue;
      if (sigma_min > cfg.tol_rank / 10.0)
        throw AmbiguousRankError(
            "gcrd_reduce: sigma_min inside the undecidable band around "
            "tol_rank",
            sigma_min, cfg.tol_rank);

      // Rotate the null direction into the first column, then divide that
      // column by (z - root).
      Eigen::MatrixXcd v = svd.matrixV();
      Eigen::MatrixXcd rotation(m, m);
      rotation.col(0) = v.col(m - 1);
      for (int j = 1; j < m; ++j) rotation.col(j) = v.col(j - 1);
      num = num * PolyMatrix::constant(rotation);
      den = den * PolyMatrix::constant(rotation);

      const Polynomial factor{-root, Complex(1.0)};
      auto divide_first_column = [&](PolyMatrix& mat) {
        std::vector<std::vector<Polynomial>> entries(
            static_cast<size_t>(mat.rows()),
            std::vector<Polynomial>(static_cast<size_t>(mat.cols())));
        for (int i = 0; i < mat.rows(); ++i) {
          for (int j = 0; j < mat.cols(); ++j) {
            Polynomial e = mat.entry(i, j);
            if (j == 0) {
              auto [q, rem] = Polynomial::divmod(e, factor);
              if (rem.coeff_norm() >
                  cfg.tol_div * std::max(1.0, mat.coeff_norm()))
                throw AmbiguousRankError(
                    "gcrd_reduce: deflation remainder above tolerance",
                    rem.coeff_norm(), cfg.tol_div);
              e = q;
            }
            entries[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
          }
        }
        mat = PolyMatrix::from_entries(entries);
      };
      divide_first_column(num);
      divide_first_column(den);
      deflated = true;
      break;  // det changed; recompute roots
    }
    if (!deflated) break;
  }

  PolyMatrixFraction out;
  out.num = num;
  out.den = den;
  out.side = FractionSide::Right;
  out.coprime = check_right_coprime(out, cfg).ok;
  return out;
}

PolyMatrixFraction build_rmfd(const TransferMatrix& p, const NumericConfig& cfg) {
  const int rows = p.rows(), cols = p.cols();

  std::vector<Polynomial> column_dens;
  column_dens.reserve(static_cast<size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    Polynomial lcm = Polynomial::one();
    for (int i = 0; i < rows; ++i)
      lcm = poly_lcm(lcm, p.entry(i, j).den(), cfg);
    column_dens.push_back(lcm);
  }

  std::vector<std::vector<Polynomial>> num_entries(
      static_cast<size_t>(rows),
      std::vector<Polynomial>(static_cast<size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      auto [q, rem] = Polynomial::divmod(column_dens[static_cast<size_t>(j)],
                                         p.entry(i, j).den());
      if (rem.coeff_norm() >
          cfg.tol_div *
              std::max(1.0, column_dens[static_cast<size_t>(j)].coeff_norm()))
        throw InternalInconsistencyError(
            "build_rmfd: column LCM not divisible by an entry denominator");
      num_entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          p.entry(i, j).num() * q;
    }

  PolyMatrixFraction raw;
  raw.num = PolyMatrix::from_entries(num_entries);
  raw.den = PolyMatrix::diag(column_dens);
  raw.side = FractionSide::Right;
  PolyMatrixFraction reduced = gcrd_reduce(raw, cfg);

  // Evaluation consistency against the entry-wise route.
  for (const Complex& z : probe_points(16, 0.31, 2.17)) {
    Eigen::MatrixXcd direct;
    try {
      direct = p.eval(z, cfg);
    } catch (const PoleProximityError&) {
      continue;
    }
    const Eigen::MatrixXcd dz = reduced.den.eval(z);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(dz);
    if (!lu.isInvertible()) continue;
    const Eigen::MatrixXcd via_mfd = reduced.num.eval(z) * lu.inverse();
    const double scale = std::max(1.0, direct.norm());
    if ((via_mfd - direct).norm() > 1e-8 * scale)
      throw InternalInconsistencyError(
          "build_rmfd: MFD disagrees with entry-wise evaluation");
  }
  return reduced;
}

std::vector<Complex> poles(const TransferMatrix& p, const NumericConfig& cfg) {
  const PolyMatrixFraction mfd = build_rmfd(p, cfg);
  const Polynomial det = mfd.den.det();
  if (det.degree() <= 0) return {};
  return poly_roots(det, cfg);
}

}  // namespace nugap
