#include "nugap/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sup over an n-point grid of sigma_max(M(theta)).
double grid_sup(const std::function<Eigen::MatrixXcd(double)>& m, int n) {
  double sup = 0.0;
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXcd v = m(kTwoPi * k / static_cast<double>(n));
    const double s = v.size() == 1 ? std::abs(v(0, 0))
                                   : v.jacobiSvd().singularValues()(0);
    sup = std::max(sup, s);
  }
  return sup;
}

void require_outside_disk(const Polynomial& den, const NumericConfig& cfg,
                          const char* what) {
  if (den.degree() <= 0) return;
  for (const Complex& r : poly_roots(den, cfg))
    if (std::abs(r) < 1.0 + cfg.dist_circle_min)
      throw InternalInconsistencyError(
          std::string(what) + ": factor denominator root inside the stability "
                              "margin");
}

}  // namespace

Eigen::MatrixXcd TrigMatrixPoly::coeff(int k) const {
  const int q = band();
  const int a = std::abs(k);
  if (a > q) return Eigen::MatrixXcd::Zero(size(), size());
  if (k >= 0) return c[static_cast<size_t>(a)];
  return c[static_cast<size_t>(a)].adjoint();
}

Eigen::MatrixXcd TrigMatrixPoly::eval(double theta) const {
  const int q = band();
  Eigen::MatrixXcd acc = c[0];
  for (int k = 1; k <= q; ++k) {
    const Complex w = std::polar(1.0, k * theta);
    acc += c[static_cast<size_t>(k)] * w +
           c[static_cast<size_t>(k)].adjoint() * std::conj(w);
  }
  return acc;
}

TrigMatrixPoly TrigMatrixPoly::from_gram(const PolyMatrix& s) {
  const int q = std::max(s.degree(), 0);
  const std::vector<Eigen::MatrixXcd> full = gram_symbol_coeffs(s);
  TrigMatrixPoly phi;
  phi.c.assign(full.begin() + q, full.end());
  phi.trim();
  return phi;
}

void TrigMatrixPoly::trim(double rel_tol) {
  double maxc = 0.0;
  for (const auto& m : c) maxc = std::max(maxc, m.cwiseAbs().maxCoeff());
  const double floor = maxc * rel_tol;
  while (c.size() > 1 && c.back().cwiseAbs().maxCoeff() <= floor) c.pop_back();
}

Polynomial spectral_factor_scalar(const FourierCoeffs& phi,
                                  const NumericConfig& cfg) {
  // Hermitian check: c_{-k} = conj(c_k).
  double scale = 0.0;
  for (const Complex& x : phi.c) scale = std::max(scale, std::abs(x));
  for (int k = 1; k <= phi.n; ++k)
    if (std::abs(phi.at(-k) - std::conj(phi.at(k))) > 1e-9 * std::max(1.0, scale))
      throw std::invalid_argument(
          "spectral_factor_scalar: coefficients are not Hermitian");

  // Strict positivity on the check grid.
  double min_val = std::numeric_limits<double>::infinity();
  double min_theta = 0.0;
  const int grid = cfg.positivity_grid;
  for (int j = 0; j < grid; ++j) {
    const double theta = kTwoPi * j / static_cast<double>(grid);
    double v = phi.at(0).real();
    for (int k = 1; k <= phi.n; ++k)
      v += 2.0 * (phi.at(k) * std::polar(1.0, k * theta)).real();
    if (v < min_val) {
      min_val = v;
      min_theta = theta;
    }
  }
  if (!(min_val > scale * 1e-12))
    throw NotPositiveError(
        "spectral_factor_scalar: symbol not strictly positive on the circle",
        min_val, min_theta);

  // Effective band after trimming negligible tail coefficients.
  int q = phi.n;
  while (q > 0 && std::abs(phi.at(q)) <= scale * 1e-13) --q;
  if (q == 0) return Polynomial(std::sqrt(phi.at(0).real()));

  // psi(z) = z^q phi(z), roots split into reciprocal-conjugate pairs.
  std::vector<Complex> psi(static_cast<size_t>(2 * q + 1));
  for (int k = -q; k <= q; ++k) psi[static_cast<size_t>(k + q)] = phi.at(k);
  const std::vector<Complex> roots = poly_roots(Polynomial(psi), cfg);

  std::vector<Complex> inside, outside;
  for (const Complex& r : roots) {
    if (std::abs(r) > 1.0)
      outside.push_back(r);
    else
      inside.push_back(r);
  }
  if (static_cast<int>(outside.size()) != q)
    throw InternalInconsistencyError(
        "spectral_factor_scalar: root set does not split evenly across the "
        "circle");

  // Average each outside root with the reflection of its inside partner to
  // cancel companion-solver noise.
  std::vector<bool> used(inside.size(), false);
  std::vector<Complex> refined;
  refined.reserve(outside.size());
  for (const Complex& r : outside) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < inside.size(); ++j) {
      if (used[j]) continue;
      const Complex reflected = Complex(1.0) / std::conj(inside[j]);
      const double dist = std::abs(reflected - r);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0 && best_dist < 1e-6 * std::max(1.0, std::abs(r))) {
      used[static_cast<size_t>(best)] = true;
      refined.push_back(
          (r + Complex(1.0) / std::conj(inside[static_cast<size_t>(best)])) *
          0.5);
    } else {
      refined.push_back(r);
    }
  }

  const Polynomial shape = Polynomial::from_roots(refined);
  // |r|^2 = phi requires r = sqrt(alpha) * shape rotated so r(1) > 0.
  double phi_one = phi.at(0).real();
  for (int k = 1; k <= q; ++k) phi_one += 2.0 * phi.at(k).real();
  const Complex shape_one = shape.eval(Complex(1.0));
  const double alpha = phi_one / std::norm(shape_one);
  const Complex rotation =
      std::sqrt(alpha) * (std::conj(shape_one) / std::abs(shape_one));
  Polynomial factor = shape * rotation;

  // Residual audit on the validation grid.
  double worst = 0.0;
  for (int j = 0; j < cfg.validation_grid; ++j) {
    const double theta = kTwoPi * j / static_cast<double>(cfg.validation_grid);
    double v = phi.at(0).real();
    for (int k = 1; k <= q; ++k)
      v += 2.0 * (phi.at(k) * std::polar(1.0, k * theta)).real();
    const double got = std::norm(factor.eval(std::polar(1.0, theta)));
    worst = std::max(worst, std::abs(got - v) / std::max(1.0, std::abs(v)));
  }
  if (worst > cfg.tol_specfac)
    throw NoConvergenceError(
        "spectral_factor_scalar: reconstruction residual above tolerance",
        worst);
  return factor;
}

MatrixSpectralFactor spectral_factor_matrix(const TrigMatrixPoly& phi_in,
                                            const NumericConfig& cfg) {
  TrigMatrixPoly phi = phi_in;
  phi.trim();
  const int m = phi.size();
  const int q = phi.band();

  double scale = 0.0;
  for (const auto& mat : phi.c)
    scale = std::max(scale, mat.cwiseAbs().maxCoeff());

  // Positivity of the Hermitian symbol on the check grid.
  double min_eig = std::numeric_limits<double>::infinity();
  double min_theta = 0.0;
  for (int j = 0; j < cfg.positivity_grid; ++j) {
    const double theta = kTwoPi * j / static_cast<double>(cfg.positivity_grid);
    Eigen::MatrixXcd v = phi.eval(theta);
    v = (v + v.adjoint().eval()) * 0.5;
    const double lmin =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(v).eigenvalues()(0);
    if (lmin < min_eig) {
      min_eig = lmin;
      min_theta = theta;
    }
  }
  if (!(min_eig > scale * 1e-12))
    throw NotPositiveError(
        "spectral_factor_matrix: symbol not positive definite on the circle",
        min_eig, min_theta);

  if (q == 0) {
    Eigen::LLT<Eigen::MatrixXcd> llt(phi.c[0]);
    if (llt.info() != Eigen::Success)
      throw NotPositiveError("spectral_factor_matrix: Cholesky failed",
                             min_eig, min_theta);
    MatrixSpectralFactor out;
    out.factor = PolyMatrix::constant(
        Eigen::MatrixXcd(llt.matrixL()).adjoint());
    out.residual = 0.0;
    out.section = 1;
    return out;
  }

  auto residual_of = [&](const PolyMatrix& r) {
    double worst = 0.0;
    for (int j = 0; j < cfg.validation_grid; ++j) {
      const double theta = kTwoPi * j / static_cast<double>(cfg.validation_grid);
      const Eigen::MatrixXcd rv = r.eval(std::polar(1.0, theta));
      const Eigen::MatrixXcd diff = rv.adjoint() * rv - phi.eval(theta);
      worst = std::max(worst, diff.jacobiSvd().singularValues()(0));
    }
    return worst;
  };

  double last_residual = std::numeric_limits<double>::infinity();
  for (int n = cfg.bauer_initial_section; n <= cfg.bauer_max_section; n *= 2) {
    // Reverse (bottom-up) banded block Cholesky T = U U^H of the n-block
    // Toeplitz section T_{j,k} = C_{j-k}. Rows far from the bottom
    // boundary converge to the outer factor; row 0 is read off.
    // rows[d] for the ring buffer of rows j+1..j+q; row storage holds
    // blocks U_{j, j+d}, d = 0..q.
    std::vector<std::vector<Eigen::MatrixXcd>> band(
        static_cast<size_t>(n),
        std::vector<Eigen::MatrixXcd>(static_cast<size_t>(q) + 1,
                                      Eigen::MatrixXcd::Zero(m, m)));
    bool failed = false;
    for (int j = n - 1; j >= 0 && !failed; --j) {
      for (int d = std::min(q, n - 1 - j); d >= 0; --d) {
        const int k = j + d;
        Eigen::MatrixXcd s = phi.coeff(d).adjoint();  // C_{j-k} = C_{-d}
        const int i_hi = std::min({j + q, n - 1, k + q});
        for (int i = k + 1; i <= i_hi; ++i) {
          const int dj = i - j, dk = i - k;
          if (dj > q || dk > q) continue;
          s -= band[static_cast<size_t>(j)][static_cast<size_t>(dj)] *
               band[static_cast<size_t>(k)][static_cast<size_t>(dk)].adjoint();
        }
        if (d == 0) {
          Eigen::LLT<Eigen::MatrixXcd> llt((s + s.adjoint().eval()) * 0.5);
          if (llt.info() != Eigen::Success) {
            failed = true;
            break;
          }
          band[static_cast<size_t>(j)][0] = llt.matrixL();
        } else {
          // U_{j,k} = S (U_{k,k}^H)^{-1} via a triangular solve.
          const Eigen::MatrixXcd& ukk = band[static_cast<size_t>(k)][0];
          band[static_cast<size_t>(j)][static_cast<size_t>(d)] =
              ukk.triangularView<Eigen::Lower>()
                  .solve(s.adjoint())
                  .adjoint();
        }
      }
      // Note: band rows above j+q are never touched again; the full array
      // is kept for clarity at desk scale.
    }
    if (failed) continue;

    std::vector<Eigen::MatrixXcd> coeffs(static_cast<size_t>(q) + 1);
    for (int d = 0; d <= q; ++d)
      coeffs[static_cast<size_t>(d)] = band[0][static_cast<size_t>(d)].adjoint();
    PolyMatrix r(std::move(coeffs));
    const double res = residual_of(r);
    if (res <= cfg.tol_specfac_mat) {
      // Outer verification: det R without zeros in the closed disk.
      const Polynomial det = r.det();
      WindingReport w =
          winding_number([&](double theta) {
            return det.eval(std::polar(1.0, theta));
          }, cfg);
      if (w.winding != 0)
        throw InternalInconsistencyError(
            "spectral_factor_matrix: candidate factor is not outer");
      if (det.degree() > 0)
        for (const Complex& root : poly_roots(det, cfg))
          if (std::abs(root) <= 1.0)
            throw InternalInconsistencyError(
                "spectral_factor_matrix: det root inside the closed disk");
      MatrixSpectralFactor out;
      out.factor = r;
      out.residual = res;
      out.section = n;
      return out;
    }
    last_residual = res;
  }
  throw NoConvergenceError(
      "spectral_factor_matrix: Bauer sections exhausted before convergence",
      last_residual);
}

namespace {

// Shared machinery for nrcf: factor a coprime right MFD into normalized
// rational matrices with the common denominator det R.
NormalizedFactorization normalize_right(const TransferMatrix& p,
                                        const NumericConfig& cfg) {
  PolyMatrixFraction mfd = build_rmfd(p, cfg);
  const int m = p.cols();

  PolyMatrix stacked = PolyMatrix::vstack(mfd.num, mfd.den);
  PolyMatrix r;
  if (m == 1) {
    const std::vector<Eigen::MatrixXcd> gram = gram_symbol_coeffs(stacked);
    const int q = std::max(stacked.degree(), 0);
    FourierCoeffs phi;
    phi.n = q;
    phi.c.resize(static_cast<size_t>(2 * q + 1));
    for (int k = -q; k <= q; ++k)
      phi.c[static_cast<size_t>(k + q)] = gram[static_cast<size_t>(k + q)](0, 0);
    r = PolyMatrix::from_scalar(spectral_factor_scalar(phi, cfg));
  } else {
    r = spectral_factor_matrix(TrigMatrixPoly::from_gram(stacked), cfg).factor;
  }

  const Polynomial det = r.det();
  require_outside_disk(det, cfg, "nrcf");
  const PolyMatrix adj = r.adjugate();

  NormalizedFactorization f;
  f.side = FractionSide::Right;
  f.n = RationalMatrix{mfd.num * adj, det};
  f.d = RationalMatrix{mfd.den * adj, det};
  f.mfd = mfd;
  f.spectral = r;

  // Normalization residual on the validation grid.
  f.residual_norm = grid_sup(
      [&](double theta) {
        const Complex z = std::polar(1.0, theta);
        const Eigen::MatrixXcd nv = f.n.eval(z);
        const Eigen::MatrixXcd dv = f.d.eval(z);
        return Eigen::MatrixXcd(nv.adjoint() * nv + dv.adjoint() * dv -
                                Eigen::MatrixXcd::Identity(m, m));
      },
      cfg.validation_grid);
  if (f.residual_norm > cfg.tol_normalization)
    throw NoConvergenceError(
        "nrcf: normalization residual above tolerance", f.residual_norm);

  // Reconstruction: N D^{-1} must reproduce P wherever D is comfortably
  // invertible.
  for (int k = 0; k < 16; ++k) {
    const double theta = kTwoPi * (k + 0.37) / 16.0;
    const Complex z = std::polar(1.0, theta);
    const Eigen::MatrixXcd dv = f.d.eval(z);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(dv);
    if (!lu.isInvertible()) continue;
    Eigen::MatrixXcd direct;
    try {
      direct = p.eval(z, cfg);
    } catch (const PoleProximityError&) {
      continue;
    }
    const Eigen::MatrixXcd recon = f.n.eval(z) * lu.inverse();
    if ((recon - direct).norm() > 1e-7 * std::max(1.0, direct.norm()))
      throw InternalInconsistencyError(
          "nrcf: normalized factors fail to reproduce the plant");
  }
  return f;
}

}  // namespace

NormalizedFactorization nrcf(const TransferMatrix& p, const NumericConfig& cfg) {
  return normalize_right(p, cfg);
}

NormalizedFactorization nlcf(const TransferMatrix& p, const NumericConfig& cfg) {
  const NormalizedFactorization dual = normalize_right(p.transpose(), cfg);
  NormalizedFactorization f;
  f.side = FractionSide::Left;
  f.n = dual.n.transpose();  // Nt = N'^T
  f.d = dual.d.transpose();  // Dt = D'^T
  f.residual_norm = dual.residual_norm;
  f.mfd = dual.mfd;
  f.spectral = dual.spectral;
  return f;
}

GraphSymbols graph_symbols(const TransferMatrix& p, const NumericConfig& cfg) {
  const NormalizedFactorization right = nrcf(p, cfg);
  const NormalizedFactorization left = nlcf(p, cfg);

  GraphSymbols s;
  s.p = p.rows();
  s.m = p.cols();
  s.g = RationalMatrix{PolyMatrix::vstack(right.n.num, right.d.num), right.n.den};
  s.gt = RationalMatrix{
      PolyMatrix::hstack(left.d.num * Complex(-1.0), left.n.num), left.n.den};
  s.residual_right = right.residual_norm;
  s.residual_left = left.residual_norm;

  const double annihilation = grid_sup(
      [&](double theta) {
        return Eigen::MatrixXcd(s.eval_gt(theta) * s.eval_g(theta));
      },
      cfg.validation_grid);
  if (annihilation > cfg.tol_graph)
    throw InternalInconsistencyError(
        "graph_symbols: annihilation residual above tolerance");
  return s;
}

ControllerSymbols controller_symbols(const TransferMatrix& c,
                                     const NumericConfig& cfg) {
  const NormalizedFactorization right = nrcf(c, cfg);
  const NormalizedFactorization left = nlcf(c, cfg);

  ControllerSymbols s;
  s.m = c.rows();  // C is m x p
  s.p = c.cols();
  s.k = RationalMatrix{PolyMatrix::vstack(right.d.num, right.n.num), right.n.den};
  s.kt = RationalMatrix{
      PolyMatrix::hstack(left.n.num * Complex(-1.0), left.d.num), left.n.den};
  return s;
}

BezoutCertificate bezout_certificate(const NormalizedFactorization& f,
                                     const NumericConfig& cfg) {
  if (f.side != FractionSide::Right)
    throw std::invalid_argument(
        "bezout_certificate: right factorization required");
  const int m = f.d.cols();
  const int p = f.n.rows();

  if (m == 1 && p == 1) {
    // Scalar route: x n + y d = 1, then scale by the spectral factor r.
    auto [x, y] = poly_bezout(f.mfd.num.entry(0, 0), f.mfd.den.entry(0, 0), cfg);
    const Polynomial r = f.spectral.entry(0, 0);
    BezoutCertificate cert;
    cert.x = RationalMatrix{PolyMatrix::from_scalar(x * r), Polynomial::one()};
    cert.y = RationalMatrix{PolyMatrix::from_scalar(y * r), Polynomial::one()};
    cert.residual = grid_sup(
        [&](double theta) {
          const Complex z = std::polar(1.0, theta);
          return Eigen::MatrixXcd(
              cert.x.eval(z) * f.n.eval(z) + cert.y.eval(z) * f.d.eval(z) -
              Eigen::MatrixXcd::Identity(1, 1));
        },
        cfg.validation_grid);
    return cert;
  }

  // MIMO: polynomial X' Np + Y' Dp = R in coefficient space, least squares
  // with a degree bound.
  const int deg_bound =
      std::max({f.mfd.num.degree(), f.mfd.den.degree(), f.spectral.degree()}) +
      2;
  const int rows_out = m, cols_x = p, cols_y = m;
  const int nx = (deg_bound + 1) * rows_out * cols_x;
  const int ny = (deg_bound + 1) * rows_out * cols_y;
  const int out_deg = deg_bound + std::max(f.mfd.num.degree(), f.mfd.den.degree());
  const int neq = (out_deg + 1) * rows_out * m;

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(neq, nx + ny);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(neq);

  auto eq_index = [&](int k, int i, int j) {
    return (k * rows_out + i) * m + j;
  };
  auto x_index = [&](int k, int i, int j) {
    return (k * rows_out + i) * cols_x + j;
  };
  auto y_index = [&](int k, int i, int j) {
    return nx + (k * rows_out + i) * cols_y + j;
  };

  // X'(z) Np(z): coefficient k of the product picks X'_a Np_{k-a}.
  for (int k = 0; k <= out_deg; ++k)
    for (int i = 0; i < rows_out; ++i)
      for (int j = 0; j < m; ++j) {
        for (int ax = 0; ax <= std::min(k, deg_bound); ++ax) {
          const Eigen::MatrixXcd np = f.mfd.num.coeff(k - ax);
          for (int l = 0; l < cols_x; ++l)
            a(eq_index(k, i, j), x_index(ax, i, l)) += np(l, j);
          const Eigen::MatrixXcd dp = f.mfd.den.coeff(k - ax);
          for (int l = 0; l < cols_y; ++l)
            a(eq_index(k, i, j), y_index(ax, i, l)) += dp(l, j);
        }
        b(eq_index(k, i, j)) = f.spectral.coeff(k)(i, j);
      }

  const Eigen::VectorXcd sol =
      a.colPivHouseholderQr().solve(b);

  std::vector<Eigen::MatrixXcd> xc(static_cast<size_t>(deg_bound) + 1,
                                   Eigen::MatrixXcd::Zero(rows_out, cols_x));
  std::vector<Eigen::MatrixXcd> yc(static_cast<size_t>(deg_bound) + 1,
                                   Eigen::MatrixXcd::Zero(rows_out, cols_y));
  for (int k = 0; k <= deg_bound; ++k)
    for (int i = 0; i < rows_out; ++i) {
      for (int j = 0; j < cols_x; ++j)
        xc[static_cast<size_t>(k)](i, j) = sol(x_index(k, i, j));
      for (int j = 0; j < cols_y; ++j)
        yc[static_cast<size_t>(k)](i, j) = sol(y_index(k, i, j));
    }

  BezoutCertificate cert;
  cert.x = RationalMatrix{PolyMatrix(std::move(xc)), Polynomial::one()};
  cert.y = RationalMatrix{PolyMatrix(std::move(yc)), Polynomial::one()};
  cert.residual = grid_sup(
      [&](double theta) {
        const Complex z = std::polar(1.0, theta);
        return Eigen::MatrixXcd(cert.x.eval(z) * f.n.eval(z) +
                                cert.y.eval(z) * f.d.eval(z) -
                                Eigen::MatrixXcd::Identity(m, m));
      },
      cfg.validation_grid);
  if (cert.residual > cfg.tol_bezout_mat)
    throw CertificateNotFoundError(
        "bezout_certificate: MIMO residual above tolerance", cert.residual);
  return cert;
}

}  // namespace nugap
