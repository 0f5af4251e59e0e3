#pragma once

// Random Fourier features drawn from a spectral measure.
//
// Frequencies are drawn i.i.d. from the symmetrized, normalized measure and
// phases uniformly from [0, 2 pi). With total mass M and m features,
//
//   phi_j(x) = sqrt(2 M / m) cos(w_j x + b_j),
//
// and <phi(x), phi(y)> is an unbiased estimate of k(x - y).
//
// The generator is std::mt19937_64 seeded with `seed`. A uniform is
// (draw >> 11) * 2^-53. Each frequency consumes three uniforms (component,
// position within a bin, sign) and each feature one more for its phase.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bochner/product.hpp"
#include "bochner/spectral.hpp"

namespace bochner {

struct FrequencySample {
  std::vector<double> frequencies;
  std::vector<double> phases;
  double total_mass = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return frequencies.size(); }
  bool operator==(const FrequencySample&) const = default;
};

/// Throws ConfigError for zero total mass or m == 0.
FrequencySample sample_frequencies(const SpectralMeasure& mu, std::size_t m, std::uint64_t seed);

Eigen::VectorXd feature_map(const FrequencySample& sample, double x);

double approximate_kernel(const FrequencySample& sample, double x, double y);

/// Feature j uses the j-th row of `frequencies` (one draw per factor).
struct ProductFrequencySample {
  Eigen::MatrixXd frequencies;  // m x d
  std::vector<double> phases;
  double total_mass = 0.0;
  std::uint64_t seed = 0;
};

ProductFrequencySample sample_product_frequencies(const ProductSpectralMeasure& mu, std::size_t m,
                                                  std::uint64_t seed);

double approximate_product_kernel(const ProductFrequencySample& sample, std::span<const double> x,
                                  std::span<const double> y);

}  // namespace bochner
