#include "bochner/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bochner/error.hpp"

namespace bochner {

namespace {

double uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Components of the normalized symmetrized measure, in storage order: atoms,
// then bins. Each entry is a cumulative two-sided mass.
class FrequencySampler {
 public:
  explicit FrequencySampler(const SpectralMeasure& mu) : mu_(mu) {
    mu.validate();
    double total = 0.0;
    for (const Atom& a : mu.atoms) {
      total += a.loc == 0.0 ? a.mass : 2.0 * a.mass;
      cumulative_.push_back(total);
    }
    const auto& e = mu.density.edges;
    for (std::size_t i = 0; i < mu.density.values.size(); ++i) {
      total += 2.0 * mu.density.values[i] * (e[i + 1] - e[i]);
      cumulative_.push_back(total);
    }
    if (!(total > 0.0)) throw ConfigError("cannot sample frequencies from a zero-mass measure");
    total_ = total;
  }

  double total_mass() const { return total_; }

  double draw(std::mt19937_64& gen) const {
    const double u_component = uniform(gen);
    const double u_position = uniform(gen);
    const double u_sign = uniform(gen);

    const double target = u_component * total_;
    // First component whose cumulative mass exceeds the target; never a zero-mass one.
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    const auto index = static_cast<std::size_t>(it - cumulative_.begin());

    double tau = 0.0;
    if (index < mu_.atoms.size()) {
      tau = mu_.atoms[index].loc;
    } else {
      const std::size_t bin = index - mu_.atoms.size();
      const auto& e = mu_.density.edges;
      tau = e[bin] + u_position * (e[bin + 1] - e[bin]);
    }
    return u_sign < 0.5 ? -tau : tau;
  }

 private:
  const SpectralMeasure& mu_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

double phase(std::mt19937_64& gen) { return 2.0 * std::numbers::pi * uniform(gen); }

}  // namespace

FrequencySample sample_frequencies(const SpectralMeasure& mu, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw ConfigError("need at least one feature");
  const FrequencySampler sampler(mu);
  std::mt19937_64 gen(seed);
  FrequencySample out;
  out.seed = seed;
  out.total_mass = sampler.total_mass();
  out.frequencies.reserve(m);
  out.phases.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.frequencies.push_back(sampler.draw(gen));
    out.phases.push_back(phase(gen));
  }
  return out;
}

Eigen::VectorXd feature_map(const FrequencySample& sample, double x) {
  const auto m = static_cast<Eigen::Index>(sample.size());
  const double scale = std::sqrt(2.0 * sample.total_mass / static_cast<double>(m));
  Eigen::VectorXd phi(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    phi(j) = scale * std::cos(sample.frequencies[j] * x + sample.phases[j]);
  }
  return phi;
}

double approximate_kernel(const FrequencySample& sample, double x, double y) {
  if (sample.size() == 0 || sample.phases.size() != sample.size()) {
    throw ValidationError("frequency sample needs equally many frequencies and phases");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    sum += std::cos(sample.frequencies[j] * x + sample.phases[j]) *
           std::cos(sample.frequencies[j] * y + sample.phases[j]);
  }
  return 2.0 * sample.total_mass / static_cast<double>(sample.size()) * sum;
}

ProductFrequencySample sample_product_frequencies(const ProductSpectralMeasure& mu, std::size_t m,
                                                  std::uint64_t seed) {
  if (m == 0) throw ConfigError("need at least one feature");
  mu.validate();
  std::vector<FrequencySampler> samplers;
  samplers.reserve(mu.dimension());
  for (const auto& f : mu.factors) samplers.emplace_back(f);

  std::mt19937_64 gen(seed);
  ProductFrequencySample out;
  out.seed = seed;
  out.total_mass = 1.0;
  for (const auto& s : samplers) out.total_mass *= s.total_mass();
  const auto d = static_cast<Eigen::Index>(mu.dimension());
  out.frequencies.resize(static_cast<Eigen::Index>(m), d);
  out.phases.reserve(m);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
    for (Eigen::Index i = 0; i < d; ++i) out.frequencies(j, i) = samplers[i].draw(gen);
    out.phases.push_back(phase(gen));
  }
  return out;
}

double approximate_product_kernel(const ProductFrequencySample& sample, std::span<const double> x,
                                  std::span<const double> y) {
  const auto d = static_cast<std::size_t>(sample.frequencies.cols());
  if (x.size() != d || y.size() != d) {
    throw ValidationError("approximate_product_kernel: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(d));
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(d));
  const Eigen::VectorXd wx = sample.frequencies * xv;
  const Eigen::VectorXd wy = sample.frequencies * yv;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < wx.size(); ++j) {
    sum += std::cos(wx(j) + sample.phases[j]) * std::cos(wy(j) + sample.phases[j]);
  }
  return 2.0 * sample.total_mass / static_cast<double>(wx.size()) * sum;
}

}  // namespace bochner
