#include "bochner/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <gsl/gsl_sf_expint.h>

#include "bochner/error.hpp"

namespace bochner {

namespace {

// sin(x) / x
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void validate_density(const BinnedDensity& d, const char* what) {
  if (d.edges.empty() && d.values.empty()) return;
  if (d.edges.size() != d.values.size() + 1) {
    throw ValidationError(std::string(what) + ": density needs one more edge than values");
  }
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    if (!std::isfinite(d.edges[i]) || d.edges[i] < 0.0) {
      throw ValidationError(std::string(what) + ": bin edges must be finite and >= 0");
    }
    if (i > 0 && !(d.edges[i] > d.edges[i - 1])) {
      throw ValidationError(std::string(what) + ": bin edges must increase");
    }
  }
  for (double v : d.values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(std::string(what) + ": density values must be finite and >= 0");
    }
  }
}

void validate_mass(const Atom& a, const char* what) {
  if (!std::isfinite(a.mass) || a.mass < 0.0) {
    throw ValidationError(std::string(what) + ": atom masses must be finite and >= 0");
  }
}

// int_a^b sin^2(t s) / s^2 ds for t >= 0, 0 <= a < b.
double flat_screw_integral(double t, double a, double b) {
  if (t == 0.0) return 0.0;
  auto antiderivative = [t](double s) {
    if (s == 0.0) return 0.0;
    const double sn = std::sin(t * s);
    return -sn * sn / s + t * gsl_sf_Si(2.0 * t * s);
  };
  return antiderivative(b) - antiderivative(a);
}

}  // namespace

void SpectralMeasure::validate() const {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.loc) || a.loc < 0.0) {
      throw ValidationError("spectral measure: atom locations must be finite and >= 0");
    }
    validate_mass(a, "spectral measure");
  }
  validate_density(density, "spectral measure");
}

double SpectralMeasure::atom_at_origin() const {
  double m = 0.0;
  for (const Atom& a : atoms) {
    if (a.loc == 0.0) m += a.mass;
  }
  return m;
}

double SpectralMeasure::continuous_and_offset_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms) {
    if (a.loc > 0.0) m += 2.0 * a.mass;
  }
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    m += 2.0 * density.values[i] * (density.edges[i + 1] - density.edges[i]);
  }
  return m;
}

double SpectralMeasure::total_mass() const {
  return atom_at_origin() + continuous_and_offset_mass();
}

double SpectralMeasure::density_at(double tau) const {
  if (density.empty()) return 0.0;
  const auto& e = density.edges;
  if (tau == e.front()) return density.values.front();
  if (tau < e.front() || tau > e.back()) return 0.0;
  const auto it = std::lower_bound(e.begin(), e.end(), tau);
  return density.values[static_cast<std::size_t>(it - e.begin()) - 1];
}

void GammaMeasure::validate() const {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.loc) || a.loc <= 0.0) {
      throw ValidationError("gamma measure: atoms must sit at finite s > 0");
    }
    validate_mass(a, "gamma measure");
  }
  validate_density(density, "gamma measure");
}

SymmetricMeasure symmetrize(const SpectralMeasure& mu) {
  mu.validate();
  SymmetricMeasure out;
  for (const Atom& a : mu.atoms) {
    if (a.loc == 0.0) {
      out.atoms.push_back(a);
    } else {
      out.atoms.push_back({-a.loc, a.mass});
      out.atoms.push_back(a);
    }
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom& x, const Atom& y) { return x.loc < y.loc; });

  const auto& e = mu.density.edges;
  const auto& v = mu.density.values;
  if (v.empty()) return out;
  // Mirrored bins; a gap (-a, a) is filled with a zero-valued bin.
  for (std::size_t i = e.size(); i-- > 0;) out.density.edges.push_back(-e[i]);
  for (std::size_t i = v.size(); i-- > 0;) out.density.values.push_back(v[i]);
  if (e.front() > 0.0) {
    out.density.values.push_back(0.0);
  } else {
    out.density.edges.pop_back();
  }
  for (double x : e) out.density.edges.push_back(x);
  for (double x : v) out.density.values.push_back(x);
  return out;
}

double accumulate(const SpectralMeasure& mu, double x) {
  double alpha = 0.0;
  for (const Atom& a : mu.atoms) {
    if (a.loc > 0.0 && a.loc <= x) alpha += 2.0 * a.mass;
  }
  const auto& e = mu.density.edges;
  for (std::size_t i = 0; i < mu.density.values.size(); ++i) {
    const double overlap = std::min(e[i + 1], x) - e[i];
    if (overlap > 0.0) alpha += 2.0 * mu.density.values[i] * overlap;
  }
  return alpha;
}

double bochner_synthesis(const SpectralMeasure& mu, double t) {
  double k = 0.0;
  for (const Atom& a : mu.atoms) {
    k += a.loc == 0.0 ? a.mass : 2.0 * a.mass * std::cos(t * a.loc);
  }
  const auto& e = mu.density.edges;
  for (std::size_t i = 0; i < mu.density.values.size(); ++i) {
    // int_a^b cos(t tau) dtau = w cos(t mid) sinc(t w / 2)
    const double w = e[i + 1] - e[i];
    const double mid = 0.5 * (e[i] + e[i + 1]);
    k += 2.0 * mu.density.values[i] * w * std::cos(t * mid) * sinc(0.5 * t * w);
  }
  return k;
}

double screw_synthesis(const GammaMeasure& gamma, double t) {
  t = std::abs(t);
  double d2 = 0.0;
  for (const Atom& a : gamma.atoms) {
    const double s = std::sin(t * a.loc) / a.loc;
    d2 += a.mass * s * s;
  }
  const auto& e = gamma.density.edges;
  for (std::size_t i = 0; i < gamma.density.values.size(); ++i) {
    const double v = gamma.density.values[i];
    if (gamma.basis == GammaBasis::quadratic) {
      // int_a^b sin^2(t s) ds = (w / 2) (1 - cos(2 t mid) sinc(t w))
      const double w = e[i + 1] - e[i];
      const double mid = 0.5 * (e[i] + e[i + 1]);
      d2 += v * 0.5 * w * (1.0 - std::cos(2.0 * t * mid) * sinc(t * w));
    } else {
      d2 += v * flat_screw_integral(t, e[i], e[i + 1]);
    }
  }
  return d2;
}

GammaConversion gamma_from_spectral(const SpectralMeasure& mu) {
  mu.validate();
  GammaConversion out;
  out.gamma.basis = GammaBasis::quadratic;
  for (const Atom& a : mu.atoms) {
    if (a.loc == 0.0) {
      out.atom_zero += a.mass;
    } else {
      const double s = 0.5 * a.loc;
      out.gamma.atoms.push_back({s, 8.0 * s * s * a.mass});
    }
  }
  for (double e : mu.density.edges) out.gamma.density.edges.push_back(0.5 * e);
  for (double v : mu.density.values) out.gamma.density.values.push_back(16.0 * v);
  return out;
}

double int_bound_integral(const GammaMeasure& gamma) {
  double total = 0.0;
  for (const Atom& a : gamma.atoms) total += a.mass / (a.loc * a.loc);
  const auto& e = gamma.density.edges;
  for (std::size_t i = 0; i < gamma.density.values.size(); ++i) {
    const double v = gamma.density.values[i];
    if (gamma.basis == GammaBasis::quadratic) {
      total += v * (e[i + 1] - e[i]);
    } else if (v > 0.0) {
      if (e[i] == 0.0) return std::numeric_limits<double>::infinity();
      total += v * (e[i + 1] - e[i]) / (e[i] * e[i + 1]);
    }
  }
  return total;
}

SpectralMeasure spectral_from_gamma(const GammaMeasure& gamma, double k0) {
  gamma.validate();
  if (!std::isfinite(k0) || k0 < 0.0) throw ValidationError("k0 must be finite and >= 0");
  const double integral = int_bound_integral(gamma);
  const double bound = 4.0 * k0;
  if (!(integral <= bound * (1.0 + 1e-12))) throw UnboundedMetric(integral, bound);

  SpectralMeasure mu;
  const double c = std::max(0.0, k0 - 0.25 * integral);
  if (c > 0.0) mu.atoms.push_back({0.0, c});
  for (const Atom& a : gamma.atoms) {
    mu.atoms.push_back({2.0 * a.loc, a.mass / (8.0 * a.loc * a.loc)});
  }
  const auto& e = gamma.density.edges;
  for (double x : e) mu.density.edges.push_back(2.0 * x);
  for (std::size_t i = 0; i < gamma.density.values.size(); ++i) {
    const double v = gamma.density.values[i];
    if (gamma.basis == GammaBasis::quadratic) {
      mu.density.values.push_back(v / 16.0);
    } else {
      // bin-average of dgamma(s) / (8 s^2) over tau = 2 s
      mu.density.values.push_back(v == 0.0 ? 0.0 : v / (16.0 * e[i] * e[i + 1]));
    }
  }
  return mu;
}

SpectralMeasure discretize_density(const std::function<double(double)>& density, double freq_max,
                                   std::size_t bins) {
  if (!(freq_max > 0.0) || bins == 0) {
    throw ValidationError("discretize_density needs freq_max > 0 and bins > 0");
  }
  SpectralMeasure mu;
  mu.density.edges.resize(bins + 1);
  mu.density.values.resize(bins);
  const double w = freq_max / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) mu.density.edges[i] = w * static_cast<double>(i);
  mu.density.edges.back() = freq_max;
  for (std::size_t i = 0; i < bins; ++i) {
    const double a = mu.density.edges[i];
    const double b = mu.density.edges[i + 1];
    const double avg = boost::math::quadrature::gauss<double, 10>::integrate(density, a, b) / (b - a);
    if (!std::isfinite(avg)) throw EvaluationError("density is not finite on a bin", a);
    mu.density.values[i] = std::max(avg, 0.0);
  }
  return mu;
}

double atom_at_zero(const KernelProfile& k, double window, double step) {
  if (!(window > 0.0) || !(step > 0.0)) {
    throw ValidationError("atom_at_zero needs a positive window and step");
  }
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * window / step));
  const double h = 2.0 * window / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? window : -window + h * static_cast<double>(i);
    const double v = k(t);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "kernel is not finite at t = " << t;
      throw EvaluationError(msg.str(), t);
    }
    sum += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return sum * h / (2.0 * window);
}

}  // namespace bochner
