#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "bochner/error.hpp"
#include "bochner/spectral.hpp"

namespace bochner {

namespace {

// Trapezoid mean of samples[0..intervals] over [0, intervals * step].
double window_mean(std::span<const double> samples, std::size_t intervals) {
  double sum = 0.5 * (samples[0] + samples[intervals]);
  for (std::size_t j = 1; j < intervals; ++j) sum += samples[j];
  return sum / static_cast<double>(intervals);
}

// Adds coef * (sin(t e_{i+1}) - sin(t e_i)) to acc[i] for uniform edges e_i = i * width.
// The rotation recurrence is re-seeded exactly every kReseed bins.
void accumulate_bin_sines(std::vector<double>& acc, double t, double width, double coef) {
  constexpr std::size_t kReseed = 64;
  const double half = std::sin(0.5 * t * width);
  const double one_minus_cos = 2.0 * half * half;
  const double sin_step = std::sin(t * width);
  double s = 0.0;
  double c = 1.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const double ds = c * sin_step - s * one_minus_cos;
    const double dc = -(c * one_minus_cos + s * sin_step);
    acc[i] += coef * ds;
    if ((i + 1) % kReseed == 0) {
      const double x = t * width * static_cast<double>(i + 1);
      s = std::sin(x);
      c = std::cos(x);
    } else {
      s += ds;
      c += dc;
    }
  }
}

}  // namespace

void InversionConfig::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
  if (n_samples < 5 || (n_samples - 1) % 4 != 0) {
    throw ConfigError("n_samples must be at least 5 with n_samples - 1 divisible by 4");
  }
  if (bins == 0) throw ConfigError("bins must be positive");
  if (!(freq_max > 0.0) || !std::isfinite(freq_max)) throw ConfigError("freq_max must be positive");
  if (!(clamp_tol >= 0.0)) throw ConfigError("clamp_tol must be >= 0");
}

double extrapolated_atom_at_zero(std::span<const double> samples) {
  const std::size_t intervals = samples.size() - 1;
  if (samples.size() < 5 || intervals % 4 != 0) {
    throw ValidationError("atom extrapolation needs 4k + 1 samples");
  }
  // M(T) = a0 + c1 / T + c2 / T^2 + ...; eliminate c1 and c2 using T, T/2, T/4.
  const double m1 = window_mean(samples, intervals);
  const double m2 = window_mean(samples, intervals / 2);
  const double m4 = window_mean(samples, intervals / 4);
  return (8.0 * m1 - 6.0 * m2 + m4) / 3.0;
}

InversionResult bochner_inversion(const KernelProfile& k, const InversionConfig& config) {
  config.validate();
  const std::size_t n = config.n_samples;
  const double h = config.t_max / static_cast<double>(n - 1);
  const double k0 = k.at_zero();
  if (!std::isfinite(k0)) throw EvaluationError("kernel is not finite at t = 0", 0.0);
  const double threshold = config.clamp_tol * std::abs(k0);

  std::vector<double> samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = h * static_cast<double>(j);
    samples[j] = k(t);
    if (!std::isfinite(samples[j])) {
      std::ostringstream msg;
      msg << "kernel is not finite at t = " << t;
      throw EvaluationError(msg.str(), t);
    }
  }

  double atom = extrapolated_atom_at_zero(samples);
  if (atom < -threshold) {
    std::ostringstream msg;
    msg << "negative atom at frequency 0 (" << atom << "): kernel is not positive definite";
    throw NotPositiveDefinite(msg.str(), {atom, 0.0, 0.0, threshold});
  }
  InversionResult result;
  if (atom < 0.0) {
    result.max_clamped = -atom;
    atom = 0.0;
  }
  result.atom_zero = atom;

  // (1 / pi) int_0^t_max (k(t) - atom) cos(t tau) dt, averaged over each bin.
  const double width = config.freq_max / static_cast<double>(config.bins);
  std::vector<double> acc(config.bins, 0.0);
  double origin = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = (j == 0 || j == n - 1) ? 0.5 * h : h;
    const double q = weight * (samples[j] - atom) / std::numbers::pi;
    if (q == 0.0) continue;
    origin += q;
    if (j == 0) {
      for (double& a : acc) a += q;
    } else {
      const double t = h * static_cast<double>(j);
      accumulate_bin_sines(acc, t, width, q / (t * width));
    }
  }
  result.density_at_origin = origin;

  const auto lowest = std::min_element(acc.begin(), acc.end());
  if (*lowest < -threshold) {
    const auto i = static_cast<std::size_t>(lowest - acc.begin());
    const double tau = width * (static_cast<double>(i) + 0.5);
    std::ostringstream msg;
    msg << "negative spectral density " << *lowest << " near frequency " << tau
        << ": kernel is not positive definite";
    throw NotPositiveDefinite(msg.str(), {atom, *lowest, tau, threshold});
  }
  for (double& a : acc) {
    if (a < 0.0) {
      result.max_clamped = std::max(result.max_clamped, -a);
      result.clamped_mass += -2.0 * a * width;
      a = 0.0;
    }
  }

  auto& mu = result.measure;
  if (atom > 0.0) mu.atoms.push_back({0.0, atom});
  mu.density.edges.resize(config.bins + 1);
  for (std::size_t i = 0; i <= config.bins; ++i) {
    mu.density.edges[i] = width * static_cast<double>(i);
  }
  mu.density.edges.back() = config.freq_max;
  mu.density.values = std::move(acc);

  for (double t : probe_grid()) {
    if (std::abs(t) > config.t_max) continue;
    result.residual = std::max(result.residual, std::abs(bochner_synthesis(mu, t) - k(t)));
  }
  return result;
}

}  // namespace bochner
