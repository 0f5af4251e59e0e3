#pragma once

// Spectral measures of translation-invariant kernels and the screw-function
// representation of their metrics.
//
// A SpectralMeasure is stored one-sided: it stands for the symmetric measure on
// the real line whose Fourier-Stieltjes integral is
//
//   k(t) = m0 + sum_{tau > 0} 2 m cos(t tau) + int_(0, inf) 2 cos(t tau) rho(tau) dtau
//
// where m0 is the atom at the origin, each atom at tau > 0 carries the mass
// placed at both +tau and -tau, and rho is the (two-sided) density value on each
// bin. The GammaMeasure carries the non-decreasing function of the screw
// representation
//
//   d2(t) = int_(0, inf) sin^2(t s) / s^2 dgamma(s),
//
// and the two are related by dgamma(s) = 8 s^2 dmu+(2 s), with mu+ the part of
// mu away from the origin.

#include <functional>
#include <span>
#include <vector>

#include "bochner/profiles.hpp"

namespace bochner {

struct Atom {
  double loc = 0.0;
  double mass = 0.0;

  bool operator==(const Atom&) const = default;
};

/// Piecewise-constant density: values[i] applies on (edges[i], edges[i + 1]].
struct BinnedDensity {
  std::vector<double> edges;
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  bool operator==(const BinnedDensity&) const = default;
};

struct SpectralMeasure {
  std::vector<Atom> atoms;
  BinnedDensity density;

  /// Throws ValidationError unless locations and edges are >= 0, edges increase,
  /// and masses and values are >= 0.
  void validate() const;

  /// Mass of the atoms at the origin (the constant part of the kernel).
  double atom_at_origin() const;
  /// Two-sided total mass; equals k(0).
  double total_mass() const;
  /// Two-sided mass away from the origin.
  double continuous_and_offset_mass() const;
  /// Piecewise-constant density value at tau >= 0; zero outside the bins.
  double density_at(double tau) const;
};

enum class GammaBasis {
  flat,      // dgamma/ds = value
  quadratic  // dgamma/ds = value * s^2
};

struct GammaMeasure {
  std::vector<Atom> atoms;
  BinnedDensity density;
  GammaBasis basis = GammaBasis::flat;

  /// Throws ValidationError on atoms at s <= 0, negative masses or values, or
  /// malformed bins.
  void validate() const;
};

/// Two-sided view of a SpectralMeasure: atoms at +-tau and mirrored bins.
struct SymmetricMeasure {
  std::vector<Atom> atoms;  // signed locations
  BinnedDensity density;    // edges span [-F, F]
};

SymmetricMeasure symmetrize(const SpectralMeasure& mu);

/// alpha(x) = two-sided mass of mu on 0 < |tau| <= x, so that
/// k(t) = m0 + int_0^inf cos(t tau) dalpha(tau).
double accumulate(const SpectralMeasure& mu, double x);

double bochner_synthesis(const SpectralMeasure& mu, double t);
double screw_synthesis(const GammaMeasure& gamma, double t);

struct GammaConversion {
  GammaMeasure gamma;
  double atom_zero = 0.0;
};

/// Always emits a quadratic-basis density; the atom at the origin is returned
/// separately.
GammaConversion gamma_from_spectral(const SpectralMeasure& mu);

/// Inverse of gamma_from_spectral with the origin atom set so that the total
/// mass is k0. Throws UnboundedMetric when int_bound_integral(gamma) > 4 k0.
SpectralMeasure spectral_from_gamma(const GammaMeasure& gamma, double k0);

/// int_0^inf s^-2 dgamma(s); +inf for flat bins touching the origin.
double int_bound_integral(const GammaMeasure& gamma);

/// Bin averages of `density` over uniform bins on [0, freq_max].
SpectralMeasure discretize_density(const std::function<double(double)>& density, double freq_max,
                                   std::size_t bins);

/// (1 / 2T) int_{-T}^{T} k(t) dt by the trapezoid rule.
double atom_at_zero(const KernelProfile& k, double window = 200.0, double step = 0.01);

struct InversionConfig {
  double t_max = 2000.0;
  std::size_t n_samples = 200001;  // n_samples - 1 must be divisible by 4
  std::size_t bins = 2048;
  double freq_max = 8.0;
  /// Negative density above -clamp_tol * k(0) is clamped to 0; below it the
  /// kernel is rejected.
  double clamp_tol = 1e-4;

  void validate() const;
};

struct InversionResult {
  SpectralMeasure measure;
  double atom_zero = 0.0;
  /// Pointwise cosine-transform estimate of the density at tau = 0.
  double density_at_origin = 0.0;
  /// Largest magnitude clamped to zero, and the two-sided mass it removed.
  double max_clamped = 0.0;
  double clamped_mass = 0.0;
  /// sup |bochner_synthesis(measure, t) - k(t)| over the default probe grid
  /// (points with |t| <= t_max).
  double residual = 0.0;
};

/// Trapezoid cosine-transform inversion of a kernel profile on [0, t_max].
/// Throws NotPositiveDefinite when the atom at the origin or any bin value is
/// below -clamp_tol * k(0).
InversionResult bochner_inversion(const KernelProfile& k, const InversionConfig& config = {});

/// Atom estimate used by bochner_inversion from uniform samples k(j h),
/// j = 0..4m: window means over T, T / 2 and T / 4 extrapolated to cancel the
/// 1/T and 1/T^2 bias terms of the plain window mean.
double extrapolated_atom_at_zero(std::span<const double> samples);

}  // namespace bochner
