#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bochner/error.hpp"
#include "bochner/gram.hpp"
#include "bochner/spectral.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace bochner;
using std::numbers::pi;

namespace {

SpectralMeasure atom(double loc, double mass) { return SpectralMeasure{{{loc, mass}}, {}}; }

GammaMeasure gamma_atom(double loc, double mass) { return GammaMeasure{{{loc, mass}}, {}, {}}; }

}  // namespace

TEST_CASE("bochner_synthesis examples") {
  for (double t : {-3.0, 0.0, 0.4, 17.0}) CHECK(bochner_synthesis(atom(0.0, 1.0), t) == 1.0);
  for (double t : probe_grid()) {
    CHECK(bochner_synthesis(atom(1.0, 0.5), t) == doctest::Approx(std::cos(t)).epsilon(1e-14));
  }
  const auto gauss = testing::binned_gaussian_measure();
  CHECK(std::abs(bochner_synthesis(gauss, 1.0) - std::exp(-0.5)) <= 1e-6);
  CHECK(bochner_synthesis(gauss, 0.0) == doctest::Approx(gauss.total_mass()).epsilon(1e-14));
}

TEST_CASE("binned synthesis matches the exact in-bin cosine integral") {
  // One bin of height 0.25 on [1, 3]: k(t) = 0.5 (sin 3t - sin t) / t.
  const SpectralMeasure mu{{}, {{1.0, 3.0}, {0.25}}};
  for (double t : {0.0, 1e-9, 0.3, 2.0, 11.0}) {
    const double expected = t == 0.0 ? 1.0 : 0.5 * (std::sin(3 * t) - std::sin(t)) / t;
    CHECK(bochner_synthesis(mu, t) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("measure bookkeeping") {
  const SpectralMeasure mu{{{0.0, 0.3}, {2.0, 0.1}}, {{0.0, 1.0, 3.0}, {0.2, 0.05}}};
  CHECK(mu.atom_at_origin() == doctest::Approx(0.3));
  CHECK(mu.total_mass() == doctest::Approx(0.3 + 0.2 + 0.4 + 0.2));
  CHECK(mu.density_at(0.0) == 0.2);
  CHECK(mu.density_at(2.0) == 0.05);
  CHECK(mu.density_at(4.0) == 0.0);
  CHECK(accumulate(mu, 0.5) == doctest::Approx(0.2));
  CHECK(accumulate(mu, 2.0) == doctest::Approx(0.4 + 0.2 + 0.1));
  CHECK(accumulate(mu, 1e9) == doctest::Approx(mu.total_mass() - 0.3));

  const auto sym = symmetrize(mu);
  CHECK(sym.atoms.size() == 3);
  CHECK(sym.atoms.front().loc == -2.0);
  CHECK(sym.density.edges == std::vector<double>{-3.0, -1.0, 0.0, 1.0, 3.0});
  CHECK(sym.density.values == std::vector<double>{0.05, 0.2, 0.2, 0.05});

  const SpectralMeasure gap{{}, {{1.0, 2.0}, {0.5}}};
  const auto gsym = symmetrize(gap);
  CHECK(gsym.density.edges == std::vector<double>{-2.0, -1.0, 1.0, 2.0});
  CHECK(gsym.density.values == std::vector<double>{0.5, 0.0, 0.5});
}

TEST_CASE("measures validate their invariants") {
  CHECK_THROWS_AS((SpectralMeasure{{{-1.0, 1.0}}, {}}.validate()), ValidationError);
  CHECK_THROWS_AS((SpectralMeasure{{{1.0, -1.0}}, {}}.validate()), ValidationError);
  CHECK_THROWS_AS((SpectralMeasure{{}, {{0.0, 1.0}, {-0.1}}}.validate()), ValidationError);
  CHECK_THROWS_AS((SpectralMeasure{{}, {{1.0, 1.0}, {0.1}}}.validate()), ValidationError);
  CHECK_THROWS_AS((SpectralMeasure{{}, {{0.0, 1.0}, {0.1, 0.2}}}.validate()), ValidationError);
  CHECK_THROWS_AS(gamma_atom(0.0, 1.0).validate(), ValidationError);
  CHECK_NOTHROW(gamma_atom(0.5, 1.0).validate());
}

TEST_CASE("screw_synthesis examples") {
  for (double t : probe_grid()) {
    CHECK(std::abs(screw_synthesis(gamma_atom(0.5, 1.0), t) - (2.0 - 2.0 * std::cos(t))) <= 1e-12);
    CHECK(screw_synthesis(GammaMeasure{}, t) == 0.0);
  }

  // dgamma = (2 / pi) ds on (0, 1e4]: d2(1) -> |1| as the window grows.
  const GammaMeasure flat{{}, {{0.0, 1e4}, {2.0 / pi}}, GammaBasis::flat};
  const double d1 = screw_synthesis(flat, 1.0);
  CHECK(d1 >= 0.99);
  CHECK(d1 == doctest::Approx(0.99996816808525354).epsilon(1e-12));  // mpmath: (2/pi)(Si(2T) - sin^2 T / T)
  CHECK(screw_synthesis(flat, -1.0) == d1);
}

TEST_CASE("flat gamma bins integrate sin^2(ts)/s^2 exactly") {
  const GammaMeasure bin{{}, {{0.5, 3.0}, {1.0}}, GammaBasis::flat};
  const double t = 1.7;
  const double simpson = oracle::simpson(
      [t](double s) { return std::sin(t * s) * std::sin(t * s) / (s * s); }, 0.5, 3.0);
  CHECK(screw_synthesis(bin, t) == doctest::Approx(simpson).epsilon(1e-10));
  CHECK(screw_synthesis(bin, t) == doctest::Approx(1.1770186186132446).epsilon(1e-12));
}

TEST_CASE("gamma_from_spectral examples") {
  const auto cosine = gamma_from_spectral(atom(1.0, 0.5));
  REQUIRE(cosine.gamma.atoms.size() == 1);
  CHECK(cosine.gamma.atoms[0].loc == 0.5);
  CHECK(cosine.gamma.atoms[0].mass == doctest::Approx(1.0));
  CHECK(cosine.atom_zero == 0.0);
  for (double t : probe_grid()) {
    CHECK(std::abs(screw_synthesis(cosine.gamma, t) - (2.0 - 2.0 * std::cos(t))) <= 1e-12);
  }

  const auto constant = gamma_from_spectral(atom(0.0, 1.0));
  CHECK(constant.gamma.atoms.empty());
  CHECK(constant.gamma.density.empty());
  CHECK(constant.atom_zero == 1.0);

  const auto mu = testing::binned_gaussian_measure();
  const auto conv = gamma_from_spectral(mu);
  CHECK(conv.gamma.basis == GammaBasis::quadratic);
  CHECK(conv.gamma.density.values[10] == doctest::Approx(16.0 * mu.density.values[10]));
  const double k0 = bochner_synthesis(mu, 0.0);
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(screw_synthesis(conv.gamma, t) - (2.0 * k0 - 2.0 * bochner_synthesis(mu, t))) <= 1e-6);
    CHECK(std::abs(screw_synthesis(conv.gamma, t) - (2.0 - 2.0 * std::exp(-0.5 * t * t))) <= 3e-6);
  }
}

TEST_CASE("spectral_from_gamma examples") {
  const auto mu = spectral_from_gamma(gamma_atom(0.5, 1.0), 1.0);
  REQUIRE(mu.atoms.size() == 1);
  CHECK(mu.atoms[0].loc == 1.0);
  CHECK(mu.atoms[0].mass == doctest::Approx(0.5));
  CHECK(mu.atom_at_origin() == 0.0);

  const auto lifted = spectral_from_gamma(gamma_atom(0.5, 1.0), 1.3);
  CHECK(lifted.atom_at_origin() == doctest::Approx(0.3));
  for (double t : probe_grid()) {
    CHECK(bochner_synthesis(lifted, t) == doctest::Approx(0.3 + std::cos(t)).epsilon(1e-12));
  }

  const GammaMeasure abs_metric{{}, {{0.0, 1e4}, {2.0 / pi}}, GammaBasis::flat};
  CHECK(int_bound_integral(abs_metric) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(spectral_from_gamma(abs_metric, 1.0), UnboundedMetric);
  CHECK_THROWS_AS(spectral_from_gamma(gamma_atom(0.5, 1.0), 0.99), UnboundedMetric);
  CHECK_THROWS_AS(spectral_from_gamma(gamma_atom(0.5, 1.0), -1.0), ValidationError);
}

TEST_CASE("spectral_from_gamma maps flat bins by their mass") {
  // g = 1 on s in [1, 2]: int s^-2 dgamma = 1/2, so the tau-bin [2, 4] carries
  // one-sided mass 1/16 and k0 - 1/8 sits at the origin.
  const GammaMeasure flat{{}, {{1.0, 2.0}, {1.0}}, GammaBasis::flat};
  CHECK(int_bound_integral(flat) == doctest::Approx(0.5));
  const auto mu = spectral_from_gamma(flat, 1.0);
  CHECK(mu.density.edges == std::vector<double>{2.0, 4.0});
  CHECK(mu.density.values[0] * 2.0 == doctest::Approx(1.0 / 16.0));
  CHECK(mu.atom_at_origin() == doctest::Approx(1.0 - 0.125));
  CHECK(mu.total_mass() == doctest::Approx(1.0));
}

TEST_CASE("int_bound_integral examples") {
  CHECK(int_bound_integral(gamma_atom(0.5, 1.0)) == 4.0);
  CHECK(int_bound_integral(GammaMeasure{}) == 0.0);
  const auto conv = gamma_from_spectral(testing::binned_gaussian_measure());
  CHECK(std::abs(int_bound_integral(conv.gamma) - 4.0) <= 1e-6);
}

TEST_CASE("random measures: screw/Bochner consistency, round trip, int-bound identity") {
  std::mt19937_64 gen(31);
  const auto grid = probe_grid();
  for (int trial = 0; trial < 100; ++trial) {
    const auto mu = testing::random_measure(gen);
    const double k0 = bochner_synthesis(mu, 0.0);
    CHECK(k0 == doctest::Approx(mu.total_mass()).epsilon(1e-10));

    const auto conv = gamma_from_spectral(mu);
    CHECK_NOTHROW(conv.gamma.validate());
    for (const auto& a : conv.gamma.atoms) CHECK(a.loc > 0.0);
    for (double t : grid) {
      const double screw = screw_synthesis(conv.gamma, t);
      const double bochner = 2.0 * k0 - 2.0 * bochner_synthesis(mu, t);
      CHECK(std::abs(screw - bochner) <= 1e-10 * std::max(1.0, k0));
    }

    const double integral = int_bound_integral(conv.gamma);
    CHECK(std::abs(integral - 4.0 * (k0 - mu.atom_at_origin())) <= 1e-10 * std::max(1.0, k0));
    CHECK(integral <= 4.0 * k0 * (1.0 + 1e-12));

    const auto back = spectral_from_gamma(conv.gamma, k0);
    CHECK(back.atom_at_origin() == doctest::Approx(mu.atom_at_origin()).epsilon(1e-10));
    std::vector<Atom> off_origin;
    for (const auto& a : mu.atoms)
      if (a.loc > 0.0) off_origin.push_back(a);
    std::vector<Atom> back_off;
    for (const auto& a : back.atoms)
      if (a.loc > 0.0) back_off.push_back(a);
    const auto by_loc = [](const Atom& a, const Atom& b) { return a.loc < b.loc; };
    std::sort(off_origin.begin(), off_origin.end(), by_loc);
    std::sort(back_off.begin(), back_off.end(), by_loc);
    REQUIRE(back_off.size() == off_origin.size());
    for (std::size_t i = 0; i < back_off.size(); ++i) {
      CHECK(std::abs(back_off[i].loc - off_origin[i].loc) <= 1e-12 * off_origin[i].loc);
      CHECK(std::abs(back_off[i].mass - off_origin[i].mass) <= 1e-12);
    }
    REQUIRE(back.density.values.size() == mu.density.values.size());
    for (std::size_t i = 0; i < mu.density.values.size(); ++i) {
      CHECK(std::abs(back.density.values[i] - mu.density.values[i]) <= 1e-10);
    }
  }
}

TEST_CASE("synthesized kernels are positive definite") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto mu = testing::random_measure(gen);
    const KernelProfile k([mu](double t) { return bochner_synthesis(mu, t); }, {"synth", {}});
    const auto pts = testing::random_points(gen, 2 + trial % 7);
    CHECK(is_positive_definite(build_gram(k, pts)).holds);
  }
}

TEST_CASE("discretize_density produces bin averages") {
  const auto mu = discretize_density(oracle::normal_pdf, 8.0, 256);
  const auto exact = testing::binned_gaussian_measure(256);
  for (std::size_t i = 0; i < 256; ++i) {
    CHECK(mu.density.values[i] == doctest::Approx(exact.density.values[i]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(discretize_density(oracle::normal_pdf, 0.0, 4), ValidationError);
}

TEST_CASE("atom_at_zero examples") {
  CHECK(atom_at_zero(zoo("constant"), 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(atom_at_zero(zoo("constant"), 250.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(atom_at_zero(zoo("cosine"), 1000.0)) <= 1e-3);

  const KernelProfile mixed([](double t) { return 0.3 + 0.7 * std::exp(-0.5 * t * t); }, {"m", {}});
  const double estimate = atom_at_zero(mixed, 200.0);
  CHECK(std::abs(estimate - 0.3) <= 5e-3);
  // The window mean overshoots by the Gaussian part's integral over 2T.
  CHECK(estimate - 0.3 == doctest::Approx(0.7 * std::sqrt(2.0 * pi) / 400.0).epsilon(1e-6));

  CHECK_THROWS_AS(atom_at_zero(zoo("constant"), 0.0), ValidationError);
}
