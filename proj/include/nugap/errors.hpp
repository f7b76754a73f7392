#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nugap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two polynomials share a root cluster where coprimeness was required.
struct NotCoprimeError : Error {
  NotCoprimeError(const std::string& what, std::complex<double> root)
      : Error(what), common_root(root) {}
  std::complex<double> common_root;
};

// Evaluation requested at or too close to a pole of an entry.
struct PoleProximityError : Error {
  PoleProximityError(const std::string& what, int row, int col,
                     std::complex<double> z)
      : Error(what), row(row), col(col), point(z) {}
  int row, col;
  std::complex<double> point;
};

// A sigma_min landed inside the undecidable band around the rank threshold.
struct AmbiguousRankError : Error {
  AmbiguousRankError(const std::string& what, double sigma, double threshold)
      : Error(what), sigma(sigma), threshold(threshold) {}
  double sigma, threshold;
};

// A symbol required to be positive on the circle dips to or below zero.
struct NotPositiveError : Error {
  NotPositiveError(const std::string& what, double min_value, double theta)
      : Error(what), min_value(min_value), theta(theta) {}
  double min_value, theta;
};

struct NoConvergenceError : Error {
  NoConvergenceError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Sampled modulus fell below the invertibility floor.
struct NotInvertibleError : Error {
  NotInvertibleError(const std::string& what, double min_modulus, double theta)
      : Error(what), min_modulus(min_modulus), theta(theta) {}
  double min_modulus, theta;
};

struct BudgetExhaustedError : Error {
  BudgetExhaustedError(const std::string& what, long samples)
      : Error(what), samples(samples) {}
  long samples;
};

struct SingularAtPointError : Error {
  SingularAtPointError(const std::string& what, double theta)
      : Error(what), theta(theta) {}
  double theta;
};

struct CertificateNotFoundError : Error {
  CertificateNotFoundError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// A result contradicts a structural guarantee (e.g. norm > 1 under a
// satisfied winding condition); signals a defect upstream, never clamped.
struct InternalInconsistencyError : Error {
  using Error::Error;
};

// Input document rejected; `pointer` is a JSON pointer to the bad node.
struct ParseError : Error {
  ParseError(const std::string& what, std::string pointer)
      : Error(what), pointer(std::move(pointer)) {}
  std::string pointer;
};

}  // namespace nugap
