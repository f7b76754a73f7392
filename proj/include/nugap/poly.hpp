#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "nugap/config.hpp"

namespace nugap {

using Complex = std::complex<double>;

// Complex polynomial in z, coefficients stored ascending: coeffs[k]
// multiplies z^k. The zero polynomial has an empty coefficient vector;
// otherwise the leading coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Complex> coeffs);
  explicit Polynomial(std::vector<Complex> coeffs);
  explicit Polynomial(Complex constant);
  explicit Polynomial(double constant);

  static Polynomial one() { return Polynomial(Complex(1.0)); }
  // c * z^k
  static Polynomial monomial(int k, Complex c = Complex(1.0));
  static Polynomial from_roots(std::span<const Complex> roots,
                               Complex leading = Complex(1.0));

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex coeff(int k) const;
  Complex leading() const;
  double coeff_norm() const;  // max_k |coeffs[k]|, 0 for the zero polynomial

  Complex eval(Complex z) const;  // Horner
  Polynomial monic() const;
  // Coefficients conjugated entry-wise; on the circle this realizes
  // conj(p(conj(z))).
  Polynomial conj_coeffs() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(Complex scalar) const;
  bool operator==(const Polynomial& rhs) const = default;

  // Euclidean division: a = q*b + r with deg r < deg b. Throws on zero b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b);

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

// Roots with multiplicity via the balanced companion matrix.
std::vector<Complex> poly_roots(const Polynomial& p,
                                const NumericConfig& cfg = {});

// Monic approximate gcd by root clustering: roots of a and b closer than
// cfg.tol_root are identified and their cluster contributes to the gcd.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b,
                    const NumericConfig& cfg = {});

// Minimal-degree solution of x*a + y*b = 1 (deg x < deg b, deg y < deg a)
// through the Sylvester system. Throws NotCoprimeError when a, b share a
// root cluster.
std::pair<Polynomial, Polynomial> poly_bezout(const Polynomial& a,
                                              const Polynomial& b,
                                              const NumericConfig& cfg = {});

// lcm(a,b) = a * (b / gcd(a,b)), monic.
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b,
                    const NumericConfig& cfg = {});

// Reduced scalar rational function num/den with monic denominator.
class RationalFn {
 public:
  RationalFn();  // 0 / 1
  RationalFn(Polynomial num, Polynomial den);
  explicit RationalFn(Polynomial num);

  static RationalFn constant(Complex c);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  Complex eval(Complex z) const { return num_.eval(z) / den_.eval(z); }

  RationalFn operator+(const RationalFn& rhs) const;
  RationalFn operator-(const RationalFn& rhs) const;
  RationalFn operator*(const RationalFn& rhs) const;

 private:
  Polynomial num_;  // arbitrary
  Polynomial den_;  // nonzero, monic
};

// Cancels common root clusters of num and den and re-normalizes the
// denominator to monic. Idempotent at working precision.
RationalFn rational_simplify(const RationalFn& r, const NumericConfig& cfg = {});

}  // namespace nugap
