#pragma once

#include <cstdint>
#include <optional>

#include "nugap/config.hpp"
#include "nugap/poly.hpp"
#include "nugap/transfer_matrix.hpp"

namespace nugap {

struct GenConfig {
  std::uint64_t seed = 0;
  int p = 1, m = 1;
  int max_degree = 3;
  double pole_zero_circle_gap = 0.05;  // root-free band around |z| = 1
  double stable_fraction = 0.5;        // probability a draw is pole-stable
  double min_modulus = 0.2;            // root annulus bounds
  double max_modulus = 5.0;
};

// Counter-based splittable stream: every value is a pure function of
// (seed, position), children derive independent streams, and doubles are
// built from the 53-bit mantissa directly so results are identical across
// platforms.
class SplitStream {
 public:
  explicit SplitStream(std::uint64_t seed);
  SplitStream child(std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  bool bernoulli(double p_true);
  Complex unit_disk();  // uniform on the closed unit disk

  // Root with log-uniform modulus over [lo, hi] excluding the band
  // (1-gap, 1+gap), uniform angle. `force_outside` restricts to moduli
  // above 1+gap.
  Complex annulus_root(double lo, double hi, double gap, bool force_outside);

 private:
  std::uint64_t state_;
};

// Deterministic random plant: entries built from random numerator and
// denominator roots kept clear of the unit circle. Resamples internally
// (bounded) until the plant admits a normalized factorization.
TransferMatrix random_plant(const GenConfig& gen, const NumericConfig& cfg = {});

// Relative coefficient-space perturbation of magnitude eps; zero
// coefficients stay zero so the degree structure survives. Resamples until
// the boundary-gap invariant holds.
TransferMatrix perturb_plant(const TransferMatrix& p, double eps,
                             std::uint64_t seed, const NumericConfig& cfg = {});

// Random invertible circle symbol num/den with roots and poles clear of
// the circle; used by the winding and index property campaigns.
struct RationalSymbol {
  RationalFn fn;
  int zeros_inside = 0;
  int poles_inside = 0;
  int expected_winding() const { return zeros_inside - poles_inside; }
};

RationalSymbol random_symbol(SplitStream stream, int max_zeros, int max_poles,
                             double gap, const NumericConfig& cfg = {});

// Candidate stabilizing controller C = -Y^{-1} X from the Bezout
// certificate of the normalized right factorization; with X N + Y D = I the
// loop determinant det(Kt G) is outer up to normalization, so C stabilizes
// P whenever the construction goes through. Returns nullopt when the
// certificate route is unavailable (Y singular, boundary trouble); callers
// must still verify with stabilizes().
std::optional<TransferMatrix> bezout_controller(const TransferMatrix& p,
                                                const NumericConfig& cfg = {});

}  // namespace nugap
