#pragma once

// Translation-invariant kernel and squared-metric profiles on the real line.
//
// A kernel K(x, y) = k(x - y) is carried by its one-variable profile k, and a
// translation-invariant squared metric D^2(x, y) = d2(x - y) by d2. The two are
// bridged by d2(t) = 2k(0) - 2k(t) in one direction and by the base-point
// polarization K(x, y) = (d2(x) + d2(y) - d2(x - y)) / 2 in the other; the
// second direction does not, in general, produce a translation-invariant kernel.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bochner {

struct Descriptor {
  std::string name;
  std::map<std::string, double> params;

  bool operator==(const Descriptor&) const = default;
};

namespace detail {
struct KernelTag {};
struct MetricTag {};
}  // namespace detail

/// Immutable evaluation closure plus a descriptor for serialization.
template <class Tag>
class Profile {
 public:
  using Fn = std::function<double(double)>;

  Profile(Fn eval, Descriptor descriptor)
      : eval_(std::move(eval)), descriptor_(std::move(descriptor)), at_zero_(eval_(0.0)) {}

  double operator()(double t) const { return eval_(t); }
  double at_zero() const { return at_zero_; }
  const Descriptor& descriptor() const { return descriptor_; }
  const Fn& function() const { return eval_; }

 private:
  Fn eval_;
  Descriptor descriptor_;
  double at_zero_;
};

using KernelProfile = Profile<detail::KernelTag>;
using MetricProfile = Profile<detail::MetricTag>;

/// A kernel of two variables, not necessarily translation invariant.
class BivariateKernel {
 public:
  using Fn = std::function<double(double, double)>;

  explicit BivariateKernel(Fn eval) : eval_(std::move(eval)) {}
  double operator()(double x, double y) const { return eval_(x, y); }

 private:
  Fn eval_;
};

struct Probe {
  double x = 0.0;
  double y = 0.0;
  double shift = 0.0;
};

struct InvarianceReport {
  bool invariant = true;
  double worst_violation = 0.0;
  Probe worst_probe;
};

/// Uniform grid of `n` points on [lo, hi]. Defaults to 201 points on [-10, 10].
std::vector<double> probe_grid(double lo = -10.0, double hi = 10.0, std::size_t n = 201);

/// Deterministic (x, y, shift) triples drawn from `grid`: one per grid point,
/// partners chosen by fixed index strides.
std::vector<Probe> default_probes(std::span<const double> grid);
std::vector<Probe> default_probes();

MetricProfile metric_from_kernel(const KernelProfile& k);

/// K(x, y) = (d2(x - base) + d2(y - base) - d2(x - y)) / 2.
BivariateKernel kernel_from_metric(const MetricProfile& d2, double base = 0.0);

/// Lifts a profile to the bivariate form (x, y) -> f(x - y).
BivariateKernel lift(const KernelProfile& k);
BivariateKernel lift(const MetricProfile& d2);

InvarianceReport check_translation_invariance(const BivariateKernel& kernel,
                                              std::span<const Probe> probes, double tol);

/// Largest |f(t) - f(-t)| over the grid.
double evenness_violation(const KernelProfile& k, std::span<const double> grid);
double evenness_violation(const MetricProfile& d2, std::span<const double> grid);

/// Largest max(|k(t)| - k(0), 0) over the grid; zero for a positive definite profile.
double bound_violation(const KernelProfile& k, std::span<const double> grid);

/// Names accepted by `zoo`.
const std::vector<std::string>& zoo_names();

/// Parameter keys and defaults accepted by `zoo(name, ...)`.
std::map<std::string, double> zoo_defaults(const std::string& name);

/// gaussian   exp(-t^2 / (2 scale^2))
/// laplacian  exp(-|t| / scale)
/// cauchy     2 / (1 + (t / scale)^2)
/// cosine     cos(omega t)
/// constant   c, c >= 0
KernelProfile zoo(const std::string& name, const std::map<std::string, double>& params = {});
KernelProfile zoo(const Descriptor& descriptor);

/// Even, piecewise-linear kernel through (t, value) samples. When every t is
/// non-negative the samples are mirrored; evaluation outside the sampled range
/// throws EvaluationError.
KernelProfile sampled_kernel(std::vector<double> t, std::vector<double> values);

/// Samples f on `grid`, throwing EvaluationError on non-finite values.
std::vector<double> sample(const KernelProfile& k, std::span<const double> grid);
std::vector<double> sample(const MetricProfile& d2, std::span<const double> grid);

}  // namespace bochner
