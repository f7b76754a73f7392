#include "nugap/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nugap/errors.hpp"
#include "nugap/fft.hpp"

namespace nugap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseStepCap = std::numbers::pi / 2.0;

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi, double f_best, double rel_tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max({f_best, f1, f2});
  for (int it = 0; it < 200; ++it) {
    const double prev = best;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
    if (best - prev <= rel_tol * std::max(1.0, best) && it > 4) break;
    if (b - a < 1e-13) break;
  }
  return best;
}

}  // namespace

CircleGrid::CircleGrid(int n) {
  if (n < 64 || (n & (n - 1)) != 0)
    throw std::invalid_argument(
        "CircleGrid: size must be a power of two >= 64");
  thetas_.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    thetas_[static_cast<size_t>(k)] = kTwoPi * k / static_cast<double>(n);
}

Complex CircleGrid::point(int k) const {
  return std::polar(1.0, theta(k));
}

WindingReport winding_number(const ScalarSampler& f, const NumericConfig& cfg) {
  const int n0 = std::max(cfg.winding_grid, 16);
  std::vector<double> thetas(static_cast<size_t>(n0));
  std::vector<Complex> values(static_cast<size_t>(n0));
  double min_mod = std::numeric_limits<double>::infinity();
  long samples = 0;

  auto probe = [&](double theta) {
    const Complex v = f(theta);
    ++samples;
    const double mod = std::abs(v);
    if (mod < min_mod) min_mod = mod;
    if (mod < cfg.tol_invertible)
      throw NotInvertibleError("winding_number: symbol modulus below floor",
                               mod, theta);
    return v;
  };

  for (int k = 0; k < n0; ++k) {
    thetas[static_cast<size_t>(k)] = kTwoPi * k / static_cast<double>(n0);
    values[static_cast<size_t>(k)] = probe(thetas[static_cast<size_t>(k)]);
  }

  // Bisect every interval whose phase step exceeds pi/2 until the whole
  // cycle is certified or the budget runs out.
  while (true) {
    std::vector<double> next_thetas;
    std::vector<Complex> next_values;
    next_thetas.reserve(thetas.size() * 2);
    next_values.reserve(values.size() * 2);
    bool refined = false;
    const size_t count = thetas.size();
    for (size_t i = 0; i < count; ++i) {
      const size_t j = (i + 1) % count;
      const double th0 = thetas[i];
      const double th1 = (j == 0) ? thetas[j] + kTwoPi : thetas[j];
      next_thetas.push_back(th0);
      next_values.push_back(values[i]);
      const double step = std::arg(values[j] / values[i]);
      if (std::abs(step) > kPhaseStepCap) {
        const double mid = 0.5 * (th0 + th1);
        next_thetas.push_back(mid);
        next_values.push_back(probe(std::fmod(mid, kTwoPi)));
        refined = true;
      }
    }
    thetas = std::move(next_thetas);
    values = std::move(next_values);
    if (!refined) break;
    if (samples > cfg.winding_budget)
      throw BudgetExhaustedError(
          "winding_number: refinement exceeded the sample budget", samples);
  }

  double total = 0.0, max_step = 0.0;
  for (size_t i = 0; i < thetas.size(); ++i) {
    const size_t j = (i + 1) % thetas.size();
    const double step = std::arg(values[j] / values[i]);
    total += step;
    max_step = std::max(max_step, std::abs(step));
  }
  const double w = total / kTwoPi;
  const long rounded = std::lround(w);
  if (std::abs(w - static_cast<double>(rounded)) > 0.05)
    throw InternalInconsistencyError(
        "winding_number: accumulated phase is not an integer multiple of 2pi");

  WindingReport report;
  report.winding = static_cast<int>(rounded);
  report.min_modulus = min_mod;
  report.samples_used = samples;
  report.max_phase_step = max_step;
  return report;
}

NormEstimate linf_norm(const MatrixSampler& m, const NumericConfig& cfg) {
  const int n = std::max(cfg.grid_size, 64);
  auto sigma_max = [&](double theta) {
    const Eigen::MatrixXcd v = m(theta);
    if (v.size() == 1) return std::abs(v(0, 0));
    return v.jacobiSvd().singularValues()(0);
  };

  std::vector<double> sig(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    sig[static_cast<size_t>(k)] = sigma_max(kTwoPi * k / static_cast<double>(n));

  // Local maxima with wraparound adjacency.
  std::vector<int> maxima;
  for (int k = 0; k < n; ++k) {
    const double prev = sig[static_cast<size_t>((k + n - 1) % n)];
    const double next = sig[static_cast<size_t>((k + 1) % n)];
    if (sig[static_cast<size_t>(k)] >= prev && sig[static_cast<size_t>(k)] >= next)
      maxima.push_back(k);
  }
  std::sort(maxima.begin(), maxima.end(), [&](int a, int b) {
    return sig[static_cast<size_t>(a)] > sig[static_cast<size_t>(b)];
  });
  if (maxima.size() > static_cast<size_t>(cfg.refine_maxima))
    maxima.resize(static_cast<size_t>(cfg.refine_maxima));

  NormEstimate est;
  est.grid_size = n;
  const double h = kTwoPi / static_cast<double>(n);
  for (int k : maxima) {
    const double theta = h * k;
    const double refined =
        golden_max(sigma_max, theta - h, theta + h,
                   sig[static_cast<size_t>(k)], cfg.tol_norm_rel);
    if (refined > est.value) {
      est.value = refined;
      est.theta_star = theta;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (sig[static_cast<size_t>(k)] > est.value) {
      est.value = sig[static_cast<size_t>(k)];
      est.theta_star = h * k;
    }
  }
  return est;
}

NormEstimate linf_norm_scalar(const ScalarSampler& f, const NumericConfig& cfg) {
  return linf_norm(
      [&](double theta) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = f(theta);
        return m;
      },
      cfg);
}

Complex FourierCoeffs::eval(double r, double theta) const {
  Complex acc(0.0);
  for (int k = -n; k <= n; ++k)
    acc += at(k) * std::pow(r, std::abs(k)) *
           std::polar(1.0, static_cast<double>(k) * theta);
  return acc;
}

FourierCoeffs fourier_coeffs(const ScalarSampler& f, int n,
                             const NumericConfig& cfg) {
  if (n < 0) throw std::invalid_argument("fourier_coeffs: n must be >= 0");
  const int grid = next_pow2(std::max({4 * (n + 1), cfg.grid_size / 4, 64}));
  std::vector<Complex> samples(static_cast<size_t>(grid));
  for (int k = 0; k < grid; ++k)
    samples[static_cast<size_t>(k)] = f(kTwoPi * k / static_cast<double>(grid));
  // c_k = (1/n) sum_j f(theta_j) e^{-ik theta_j}: the analysis transform.
  fft_inplace(samples, false);

  FourierCoeffs out;
  out.n = n;
  out.c.resize(static_cast<size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    const int idx = (k % grid + grid) % grid;
    out.c[static_cast<size_t>(k + n)] =
        samples[static_cast<size_t>(idx)] / static_cast<double>(grid);
  }
  return out;
}

WindingReport poisson_winding(const FourierCoeffs& coeffs, double r,
                              const NumericConfig& cfg) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("poisson_winding: radius must lie in (0, 1)");

  // Modulus floor on dyadic circles filling the annulus [r, 1).
  double min_mod = std::numeric_limits<double>::infinity();
  double rho = r;
  for (int level = 0; level < 10; ++level) {
    for (int k = 0; k < cfg.winding_grid; ++k) {
      const double theta = kTwoPi * k / static_cast<double>(cfg.winding_grid);
      const double mod = std::abs(coeffs.eval(rho, theta));
      if (mod < min_mod) min_mod = mod;
      if (mod < cfg.tol_invertible)
        throw NotInvertibleError(
            "poisson_winding: harmonic extension dips below floor on annulus",
            mod, theta);
    }
    rho = 0.5 * (1.0 + rho);
  }

  WindingReport report = winding_number(
      [&](double theta) { return coeffs.eval(r, theta); }, cfg);
  report.min_modulus = std::min(report.min_modulus, min_mod);
  return report;
}

}  // namespace nugap
