#include "nugap/generate.hpp"

#include <cmath>
#include <numbers>

#include "nugap/errors.hpp"
#include "nugap/factorization.hpp"

namespace nugap {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitStream::SplitStream(std::uint64_t seed) : state_(mix64(seed + kGamma)) {}

SplitStream SplitStream::child(std::uint64_t index) const {
  return SplitStream(state_ ^ mix64(index * kGamma + 0x5851F42D4C957F2DULL));
}

std::uint64_t SplitStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

bool SplitStream::bernoulli(double p_true) { return uniform() < p_true; }

Complex SplitStream::unit_disk() {
  const double r = std::sqrt(uniform());
  const double theta = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, theta);
}

Complex SplitStream::annulus_root(double lo, double hi, double gap,
                                  bool force_outside) {
  const double lo_eff = force_outside ? 1.0 + gap : lo;
  double modulus = 0.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    modulus = std::exp(uniform(std::log(lo_eff), std::log(hi)));
    if (modulus <= 1.0 - gap || modulus >= 1.0 + gap) break;
  }
  if (modulus > 1.0 - gap && modulus < 1.0 + gap)
    modulus = 1.0 + gap;  // exhausted retries: clamp out of the band
  return std::polar(modulus, uniform(0.0, 2.0 * std::numbers::pi));
}

namespace {

RationalFn random_entry(SplitStream& stream, const GenConfig& gen,
                        bool force_stable, const NumericConfig& cfg) {
  const int num_deg = static_cast<int>(stream.uniform() * (gen.max_degree + 1));
  const int den_deg = static_cast<int>(stream.uniform() * (gen.max_degree + 1));

  std::vector<Complex> zeros, poles;
  for (int k = 0; k < num_deg; ++k)
    zeros.push_back(stream.annulus_root(gen.min_modulus, gen.max_modulus,
                                        gen.pole_zero_circle_gap, false));
  for (int k = 0; k < den_deg; ++k)
    poles.push_back(stream.annulus_root(gen.min_modulus, gen.max_modulus,
                                        gen.pole_zero_circle_gap,
                                        force_stable));

  const Complex lead = std::polar(stream.uniform(0.25, 2.0),
                                  stream.uniform(0.0, 2.0 * std::numbers::pi));
  return rational_simplify(
      RationalFn(Polynomial::from_roots(zeros, lead),
                 Polynomial::from_roots(poles)),
      cfg);
}

}  // namespace

TransferMatrix random_plant(const GenConfig& gen, const NumericConfig& cfg) {
  if (gen.pole_zero_circle_gap < 10.0 * cfg.dist_circle_min)
    throw std::invalid_argument(
        "random_plant: pole_zero_circle_gap must be at least 10x "
        "dist_circle_min");
  SplitStream base(gen.seed);
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    SplitStream stream = base.child(attempt);
    const bool force_stable = stream.bernoulli(gen.stable_fraction);
    std::vector<std::vector<RationalFn>> entries(
        static_cast<size_t>(gen.p),
        std::vector<RationalFn>(static_cast<size_t>(gen.m)));
    for (int i = 0; i < gen.p; ++i)
      for (int j = 0; j < gen.m; ++j)
        entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            random_entry(stream, gen, force_stable, cfg);
    try {
      TransferMatrix plant = TransferMatrix::from_entries(entries, cfg);
      nrcf(plant, cfg);  // factorization-complete or retry
      if (gen.p != gen.m) nlcf(plant, cfg);
      return plant;
    } catch (const Error&) {
      continue;
    }
  }
  throw NoConvergenceError(
      "random_plant: no factorizable draw within the retry budget", 0.0);
}

TransferMatrix perturb_plant(const TransferMatrix& p, double eps,
                             std::uint64_t seed, const NumericConfig& cfg) {
  if (eps < 0.0)
    throw std::invalid_argument("perturb_plant: eps must be nonnegative");
  if (eps == 0.0) return p;

  SplitStream base(seed);
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    SplitStream stream = base.child(attempt);
    std::vector<std::vector<RationalFn>> entries(
        static_cast<size_t>(p.rows()),
        std::vector<RationalFn>(static_cast<size_t>(p.cols())));
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j) {
        auto jitter = [&](const Polynomial& poly) {
          std::vector<Complex> c = poly.coeffs();
          for (Complex& x : c)
            if (x != Complex(0.0)) x += eps * std::abs(x) * stream.unit_disk();
          return Polynomial(std::move(c));
        };
        const RationalFn& e = p.entry(i, j);
        entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            RationalFn(jitter(e.num()), jitter(e.den()));
      }
    try {
      return TransferMatrix::from_entries(entries, cfg);
    } catch (const Error&) {
      continue;  // perturbation pushed a pole into the boundary band
    }
  }
  throw NoConvergenceError(
      "perturb_plant: could not keep the boundary gap within the retry budget",
      eps);
}

RationalSymbol random_symbol(SplitStream stream, int max_zeros, int max_poles,
                             double gap, const NumericConfig& cfg) {
  const int nz = static_cast<int>(stream.uniform() * (max_zeros + 1));
  const int np = static_cast<int>(stream.uniform() * (max_poles + 1));
  RationalSymbol symbol;
  std::vector<Complex> zeros, poles;
  for (int k = 0; k < nz; ++k) {
    const Complex z = stream.annulus_root(0.2, 5.0, gap, false);
    if (std::abs(z) < 1.0) ++symbol.zeros_inside;
    zeros.push_back(z);
  }
  for (int k = 0; k < np; ++k) {
    const Complex z = stream.annulus_root(0.2, 5.0, gap, false);
    if (std::abs(z) < 1.0) ++symbol.poles_inside;
    poles.push_back(z);
  }
  const Complex lead = std::polar(stream.uniform(0.5, 2.0),
                                  stream.uniform(0.0, 2.0 * std::numbers::pi));
  symbol.fn = rational_simplify(RationalFn(Polynomial::from_roots(zeros, lead),
                                           Polynomial::from_roots(poles)),
                                cfg);
  return symbol;
}

std::optional<TransferMatrix> bezout_controller(const TransferMatrix& p,
                                                const NumericConfig& cfg) {
  try {
    const NormalizedFactorization right = nrcf(p, cfg);
    const BezoutCertificate cert = bezout_certificate(right, cfg);
    // C = -Y^{-1} X = -adj(Y) X / det(Y); entries reduced individually.
    const Polynomial det_y = cert.y.num.det();
    if (det_y.is_zero()) return std::nullopt;
    const PolyMatrix numerator =
        (cert.y.num.adjugate() * cert.x.num) * Complex(-1.0);
    std::vector<std::vector<RationalFn>> entries(
        static_cast<size_t>(numerator.rows()),
        std::vector<RationalFn>(static_cast<size_t>(numerator.cols())));
    for (int i = 0; i < numerator.rows(); ++i)
      for (int j = 0; j < numerator.cols(); ++j)
        entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            rational_simplify(RationalFn(numerator.entry(i, j), det_y), cfg);
    return TransferMatrix::from_entries(std::move(entries), cfg);
  } catch (const Error&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace nugap
