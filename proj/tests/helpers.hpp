#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bochner/spectral.hpp"
#include "oracles.hpp"

namespace testing {

// Gaussian kernel's spectral measure as exact bin averages (via the normal CDF)
// on uniform bins over [0, freq_max].
inline bochner::SpectralMeasure binned_gaussian_measure(std::size_t bins = 2048,
                                                        double freq_max = 8.0) {
  bochner::SpectralMeasure mu;
  const double w = freq_max / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) mu.density.edges.push_back(w * static_cast<double>(i));
  for (std::size_t i = 0; i < bins; ++i) {
    const double a = mu.density.edges[i], b = mu.density.edges[i + 1];
    mu.density.values.push_back((oracle::normal_cdf(b) - oracle::normal_cdf(a)) / (b - a));
  }
  return mu;
}

// Random valid measure: 0-3 atoms (sometimes one at the origin) and, half the
// time, a density on random increasing edges.
inline bochner::SpectralMeasure random_measure(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 3);
  bochner::SpectralMeasure mu;
  if (unit(gen) < 0.5) mu.atoms.push_back({0.0, unit(gen)});
  for (int i = 0, n = count(gen); i < n; ++i) mu.atoms.push_back({0.1 + 5.0 * unit(gen), unit(gen)});
  if (unit(gen) < 0.5 || mu.atoms.empty()) {
    double edge = unit(gen) < 0.5 ? 0.0 : unit(gen);
    mu.density.edges.push_back(edge);
    for (int i = 0, n = 1 + count(gen) * 3; i < n; ++i) {
      edge += 0.05 + unit(gen);
      mu.density.edges.push_back(edge);
      mu.density.values.push_back(unit(gen));
    }
  }
  return mu;
}

inline std::vector<double> random_points(std::mt19937_64& gen, std::size_t n, double lo = -5.0,
                                         double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(n);
  for (double& x : p) x = u(gen);
  return p;
}

}  // namespace testing

namespace testing {

// int_0^{freq_max} |rho_hat(tau) - rho(tau)| dtau with Simpson on each bin of rho_hat.
inline double l1_density_error(const bochner::SpectralMeasure& mu,
                               const std::function<double(double)>& rho, double freq_max) {
  double total = 0.0;
  const auto& e = mu.density.edges;
  for (std::size_t i = 0; i + 1 < e.size() && e[i] < freq_max; ++i) {
    const double v = mu.density.values[i];
    total += oracle::simpson([&](double tau) { return std::abs(v - rho(tau)); }, e[i],
                             std::min(e[i + 1], freq_max), 16);
  }
  return total;
}

}  // namespace testing
