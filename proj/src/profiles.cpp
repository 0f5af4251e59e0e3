#include "bochner/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bochner/error.hpp"

namespace bochner {

namespace {

double checked(double value, double t, const std::string& name) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "profile '" << name << "' is not finite at t = " << t;
    throw EvaluationError(msg.str(), t);
  }
  return value;
}

template <class P>
std::vector<double> sample_profile(const P& f, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(checked(f(t), t, f.descriptor().name));
  return out;
}

template <class P>
double evenness(const P& f, std::span<const double> grid) {
  double worst = 0.0;
  for (double t : grid) worst = std::max(worst, std::abs(f(t) - f(-t)));
  return worst;
}

double param(const std::map<std::string, double>& params, const std::string& key) {
  return params.at(key);
}

}  // namespace

std::vector<double> probe_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw ValidationError("probe grid needs n >= 2 and hi > lo");
  std::vector<double> grid(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

std::vector<Probe> default_probes(std::span<const double> grid) {
  const std::size_t n = grid.size();
  std::vector<Probe> probes;
  probes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    probes.push_back({grid[i], grid[(i * 37 + 5) % n], grid[(i * 91 + 13) % n]});
  }
  return probes;
}

std::vector<Probe> default_probes() {
  const auto grid = probe_grid();
  return default_probes(grid);
}

MetricProfile metric_from_kernel(const KernelProfile& k) {
  const double k0 = k.at_zero();
  auto fn = k.function();
  return MetricProfile([fn, k0](double t) { return 2.0 * k0 - 2.0 * fn(t); }, k.descriptor());
}

BivariateKernel kernel_from_metric(const MetricProfile& d2, double base) {
  auto fn = d2.function();
  return BivariateKernel([fn, base](double x, double y) {
    return 0.5 * (fn(x - base) + fn(y - base) - fn(x - y));
  });
}

BivariateKernel lift(const KernelProfile& k) {
  auto fn = k.function();
  return BivariateKernel([fn](double x, double y) { return fn(x - y); });
}

BivariateKernel lift(const MetricProfile& d2) {
  auto fn = d2.function();
  return BivariateKernel([fn](double x, double y) { return fn(x - y); });
}

InvarianceReport check_translation_invariance(const BivariateKernel& kernel,
                                              std::span<const Probe> probes, double tol) {
  if (probes.empty()) throw ValidationError("translation invariance check needs probes");
  InvarianceReport report;
  report.worst_probe = probes.front();
  for (const Probe& p : probes) {
    const double violation = std::abs(kernel(p.x + p.shift, p.y + p.shift) - kernel(p.x, p.y));
    if (violation > report.worst_violation || std::isnan(violation)) {
      report.worst_violation = violation;
      report.worst_probe = p;
    }
  }
  report.invariant = report.worst_violation <= tol;
  return report;
}

double evenness_violation(const KernelProfile& k, std::span<const double> grid) {
  return evenness(k, grid);
}

double evenness_violation(const MetricProfile& d2, std::span<const double> grid) {
  return evenness(d2, grid);
}

double bound_violation(const KernelProfile& k, std::span<const double> grid) {
  double worst = 0.0;
  for (double t : grid) worst = std::max(worst, std::abs(k(t)) - k.at_zero());
  return worst;
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names{"gaussian", "laplacian", "cauchy", "cosine",
                                              "constant"};
  return names;
}

std::map<std::string, double> zoo_defaults(const std::string& name) {
  if (name == "gaussian" || name == "laplacian" || name == "cauchy") return {{"scale", 1.0}};
  if (name == "cosine") return {{"omega", 1.0}};
  if (name == "constant") return {{"c", 1.0}};
  throw ConfigError("unknown kernel '" + name + "'");
}

KernelProfile zoo(const std::string& name, const std::map<std::string, double>& params) {
  auto merged = zoo_defaults(name);
  for (const auto& [key, value] : params) {
    if (!merged.contains(key)) throw ConfigError("kernel '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
    merged[key] = value;
  }
  Descriptor descriptor{name, merged};

  if (name == "gaussian") {
    const double s = param(merged, "scale");
    if (!(s > 0.0)) throw ConfigError("gaussian scale must be positive");
    return KernelProfile([s](double t) { return std::exp(-0.5 * (t / s) * (t / s)); }, descriptor);
  }
  if (name == "laplacian") {
    const double s = param(merged, "scale");
    if (!(s > 0.0)) throw ConfigError("laplacian scale must be positive");
    return KernelProfile([s](double t) { return std::exp(-std::abs(t) / s); }, descriptor);
  }
  if (name == "cauchy") {
    const double s = param(merged, "scale");
    if (!(s > 0.0)) throw ConfigError("cauchy scale must be positive");
    return KernelProfile([s](double t) { return 2.0 / (1.0 + (t / s) * (t / s)); }, descriptor);
  }
  if (name == "cosine") {
    const double w = param(merged, "omega");
    if (!(w > 0.0)) throw ConfigError("cosine omega must be positive");
    return KernelProfile([w](double t) { return std::cos(w * t); }, descriptor);
  }
  const double c = param(merged, "c");
  if (!(c >= 0.0)) throw ConfigError("constant kernel needs c >= 0");
  return KernelProfile([c](double) { return c; }, descriptor);
}

KernelProfile zoo(const Descriptor& descriptor) { return zoo(descriptor.name, descriptor.params); }

KernelProfile sampled_kernel(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.empty()) {
    throw ValidationError("sampled profile needs equally many t and value entries");
  }
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t[a] < t[b]; });
  std::vector<double> ts, vs;
  ts.reserve(t.size());
  vs.reserve(t.size());
  for (auto i : order) {
    if (!std::isfinite(t[i]) || !std::isfinite(values[i])) {
      throw ValidationError("sampled profile contains non-finite entries");
    }
    if (!ts.empty() && t[i] == ts.back()) throw ValidationError("duplicate sample location");
    ts.push_back(t[i]);
    vs.push_back(values[i]);
  }
  const bool mirror = ts.front() >= 0.0;

  auto fn = [ts = std::move(ts), vs = std::move(vs), mirror](double x) {
    const double u = mirror ? std::abs(x) : x;
    if (u < ts.front() || u > ts.back()) {
      std::ostringstream msg;
      msg << "t = " << x << " is outside the sampled range";
      throw EvaluationError(msg.str(), x);
    }
    auto hi = std::lower_bound(ts.begin(), ts.end(), u);
    const auto j = static_cast<std::size_t>(hi - ts.begin());
    if (ts[j] == u) return vs[j];
    const double w = (u - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return (1.0 - w) * vs[j - 1] + w * vs[j];
  };
  return KernelProfile(std::move(fn), Descriptor{"sampled", {}});
}

std::vector<double> sample(const KernelProfile& k, std::span<const double> grid) {
  return sample_profile(k, grid);
}

std::vector<double> sample(const MetricProfile& d2, std::span<const double> grid) {
  return sample_profile(d2, grid);
}

}  // namespace bochner
