#pragma once

// Separable kernels on R^d, K(x, y) = prod_i k_i(x_i - y_i), and their product
// spectral measures. Products are kept factored and evaluated factor by factor.

#include <span>
#include <vector>

#include "bochner/profiles.hpp"
#include "bochner/spectral.hpp"

namespace bochner {

struct SeparableKernel {
  std::vector<KernelProfile> factors;

  std::size_t dimension() const { return factors.size(); }
};

struct ProductSpectralMeasure {
  std::vector<SpectralMeasure> factors;

  std::size_t dimension() const { return factors.size(); }
  double total_mass() const;
  void validate() const;
};

double separable_eval(const SeparableKernel& kernel, std::span<const double> x,
                      std::span<const double> y);

double product_synthesis(const ProductSpectralMeasure& measure, std::span<const double> t);

/// Per-factor bochner_inversion.
ProductSpectralMeasure invert_separable(const SeparableKernel& kernel,
                                        const InversionConfig& config = {});

}  // namespace bochner
