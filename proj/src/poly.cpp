#include "nugap/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

constexpr double kTrimRel = 1e-13;

// Parlett-Reinsch balancing (radix 2); similarity transform, eigenvalues
// unchanged.
void balance_in_place(Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  const double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0, s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double ginv = 1.0 / f;
        a.row(i) *= ginv;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

Polynomial::Polynomial(std::initializer_list<Complex> coeffs)
    : coeffs_(coeffs) {
  trim();
}

Polynomial::Polynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial::Polynomial(Complex constant) : coeffs_{constant} { trim(); }

Polynomial::Polynomial(double constant) : Polynomial(Complex(constant)) {}

Polynomial Polynomial::monomial(int k, Complex c) {
  std::vector<Complex> coeffs(static_cast<size_t>(k) + 1, Complex(0.0));
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots,
                                  Complex leading) {
  Polynomial p(leading);
  for (const Complex& r : roots) p = p * Polynomial{-r, Complex(1.0)};
  return p;
}

void Polynomial::trim() {
  double maxc = 0.0;
  for (const Complex& c : coeffs_) maxc = std::max(maxc, std::abs(c));
  const double floor = maxc * kTrimRel;
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= floor)
    coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
  return coeffs_[static_cast<size_t>(k)];
}

Complex Polynomial::leading() const {
  return coeffs_.empty() ? Complex(0.0) : coeffs_.back();
}

double Polynomial::coeff_norm() const {
  double maxc = 0.0;
  for (const Complex& c : coeffs_) maxc = std::max(maxc, std::abs(c));
  return maxc;
}

Complex Polynomial::eval(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw std::domain_error("monic of the zero polynomial");
  return *this * (Complex(1.0) / leading());
}

Polynomial Polynomial::conj_coeffs() const {
  std::vector<Complex> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = std::conj(coeffs_[k]);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const { return *this * Complex(-1.0); }

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()),
                         Complex(0.0));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) c[k] += rhs.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  return *this + (-rhs);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return Polynomial();
  std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1,
                         Complex(0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x *= scalar;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a,
                                                     const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Complex> rem = a.coeffs_;
  const int dq = a.degree() - b.degree();
  std::vector<Complex> quot(static_cast<size_t>(dq) + 1, Complex(0.0));
  const Complex lead = b.leading();
  for (int k = dq; k >= 0; --k) {
    const Complex q = rem[static_cast<size_t>(k + b.degree())] / lead;
    quot[static_cast<size_t>(k)] = q;
    for (int j = 0; j <= b.degree(); ++j)
      rem[static_cast<size_t>(k + j)] -= q * b.coeffs_[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(std::max(b.degree(), 0)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<Complex> poly_roots(const Polynomial& p, const NumericConfig&) {
  if (p.is_zero())
    throw std::domain_error("poly_roots: zero polynomial has no root set");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = p.leading();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1.0);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  balance_in_place(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NoConvergenceError("poly_roots: eigenvalue iteration failed", 0.0);

  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b,
                    const NumericConfig& cfg) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("poly_gcd: gcd(0, 0) undefined");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Polynomial::one();

  std::vector<Complex> ra = poly_roots(a, cfg);
  std::vector<Complex> rb = poly_roots(b, cfg);
  std::vector<bool> used(rb.size(), false);
  std::vector<Complex> common;
  for (const Complex& r : ra) {
    int best = -1;
    double best_dist = cfg.tol_root;
    for (size_t j = 0; j < rb.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(r - rb[j]);
      if (d <= best_dist) {
        best_dist = d;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0) {
      used[static_cast<size_t>(best)] = true;
      common.push_back((r + rb[static_cast<size_t>(best)]) * 0.5);
    }
  }
  if (common.empty()) return Polynomial::one();
  return Polynomial::from_roots(common);
}

std::pair<Polynomial, Polynomial> poly_bezout(const Polynomial& a,
                                              const Polynomial& b,
                                              const NumericConfig& cfg) {
  if (a.is_zero() || b.is_zero())
    throw std::domain_error("poly_bezout: inputs must be nonzero");
  if (a.degree() == 0)
    return {Polynomial(Complex(1.0) / a.coeff(0)), Polynomial()};
  if (b.degree() == 0)
    return {Polynomial(), Polynomial(Complex(1.0) / b.coeff(0))};

  const int da = a.degree(), db = b.degree();
  // Unknowns: x of degree < db, y of degree < da. Columns are the shifted
  // coefficient vectors of a (for x) and b (for y).
  const int n = da + db;
  Eigen::MatrixXcd sylvester = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < db; ++s)
    for (int k = 0; k <= da; ++k) sylvester(s + k, s) = a.coeff(k);
  for (int s = 0; s < da; ++s)
    for (int k = 0; k <= db; ++k) sylvester(s + k, db + s) = b.coeff(k);

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = Complex(1.0);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(sylvester);

  auto common_root_of = [&]() {
    std::vector<Complex> ra = poly_roots(a, cfg);
    std::vector<Complex> rb = poly_roots(b, cfg);
    Complex best(0.0);
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Complex& x : ra)
      for (const Complex& y : rb)
        if (std::abs(x - y) < best_dist) {
          best_dist = std::abs(x - y);
          best = (x + y) * 0.5;
        }
    return best;
  };

  if (!lu.isInvertible())
    throw NotCoprimeError("poly_bezout: Sylvester matrix singular",
                          common_root_of());
  const Eigen::VectorXcd sol = lu.solve(rhs);

  std::vector<Complex> xc(sol.data(), sol.data() + db);
  std::vector<Complex> yc(sol.data() + db, sol.data() + n);
  Polynomial x{std::vector<Complex>(xc)}, y{std::vector<Complex>(yc)};

  const Polynomial residual = x * a + y * b - Polynomial::one();
  const double scale = std::max({1.0, a.coeff_norm(), b.coeff_norm()});
  if (residual.coeff_norm() > cfg.tol_bezout * scale)
    throw NotCoprimeError("poly_bezout: residual above tolerance",
                          common_root_of());
  return {x, y};
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b,
                    const NumericConfig& cfg) {
  const Polynomial g = poly_gcd(a, b, cfg);
  auto [q, rem] = Polynomial::divmod(b, g);
  (void)rem;
  return (a * q).monic();
}

RationalFn::RationalFn() : num_(), den_(Polynomial::one()) {}

RationalFn::RationalFn(Polynomial num, Polynomial den) {
  if (den.is_zero())
    throw std::domain_error("RationalFn: zero denominator");
  const Complex lead = den.leading();
  num_ = num * (Complex(1.0) / lead);
  den_ = den * (Complex(1.0) / lead);
}

RationalFn::RationalFn(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::one()) {}

RationalFn RationalFn::constant(Complex c) {
  return RationalFn(Polynomial(c));
}

RationalFn RationalFn::operator+(const RationalFn& rhs) const {
  return RationalFn(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFn RationalFn::operator-(const RationalFn& rhs) const {
  return RationalFn(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RationalFn RationalFn::operator*(const RationalFn& rhs) const {
  return RationalFn(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFn rational_simplify(const RationalFn& r, const NumericConfig& cfg) {
  if (r.num().is_zero()) return RationalFn();
  const Polynomial g = poly_gcd(r.num(), r.den(), cfg);
  if (g.degree() <= 0) return RationalFn(r.num(), r.den());
  auto [num, rn] = Polynomial::divmod(r.num(), g);
  auto [den, rd] = Polynomial::divmod(r.den(), g);
  const double scale = std::max(r.num().coeff_norm(), r.den().coeff_norm());
  if (rn.coeff_norm() > cfg.tol_div * scale ||
      rd.coeff_norm() > cfg.tol_div * scale) {
    // The cluster match was too loose to cancel; keep the input reduced form.
    return RationalFn(r.num(), r.den());
  }
  return RationalFn(std::move(num), std::move(den));
}

}  // namespace nugap
