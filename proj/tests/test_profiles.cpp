#include <cmath>
#include <numbers>
#include <random>

#include "bochner/error.hpp"
#include "bochner/gram.hpp"
#include "bochner/profiles.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bochner;
using std::numbers::pi;

TEST_CASE("metric_from_kernel examples") {
  const auto gauss = metric_from_kernel(zoo("gaussian"));
  CHECK(gauss(0.0) == 0.0);
  CHECK(gauss(1.3) == doctest::Approx(2.0 - 2.0 * std::exp(-0.5 * 1.3 * 1.3)));
  CHECK(metric_from_kernel(zoo("cosine"))(pi) == doctest::Approx(4.0));
  for (double t : probe_grid()) CHECK(metric_from_kernel(zoo("constant"))(t) == 0.0);
}

TEST_CASE("kernel_from_metric examples") {
  const MetricProfile square([](double t) { return t * t; }, {"square", {}});
  const auto inner = kernel_from_metric(square);
  for (double x : {-2.0, 0.5, 3.0})
    for (double y : {-1.0, 0.0, 4.0}) CHECK(inner(x, y) == doctest::Approx(x * y));

  const MetricProfile zero([](double) { return 0.0; }, {"zero", {}});
  CHECK(kernel_from_metric(zero)(1.0, 2.0) == 0.0);

  const MetricProfile cosine_metric([](double t) { return 2.0 - 2.0 * std::cos(t); }, {"c", {}});
  const auto k = kernel_from_metric(cosine_metric);
  CHECK(k(pi / 2, pi / 2) == doctest::Approx(2.0));
  CHECK(k(0.7, 0.7) == doctest::Approx(cosine_metric(0.7)));

  // A non-zero base point shifts the polarization.
  const auto shifted = kernel_from_metric(square, 1.0);
  CHECK(shifted(3.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("check_translation_invariance examples") {
  const auto probes = default_probes();
  const BivariateKernel inner([](double x, double y) { return x * y; });
  const auto report = check_translation_invariance(inner, probes, 1e-12);
  CHECK_FALSE(report.invariant);
  CHECK(report.worst_violation > 1.0);

  const std::vector<Probe> single{{0.0, 0.0, 1.0}};
  CHECK(check_translation_invariance(inner, single, 1e-12).worst_violation == doctest::Approx(1.0));

  const BivariateKernel cos_diff([](double x, double y) { return std::cos(x - y); });
  CHECK(check_translation_invariance(cos_diff, probes, 1e-12).invariant);

  const MetricProfile cosine_metric([](double t) { return 2.0 - 2.0 * std::cos(t); }, {"c", {}});
  CHECK(check_translation_invariance(lift(cosine_metric), probes, 1e-12).invariant);
  // Polarizing about a base point gives cos(x - y) - cos x - cos y + 1.
  CHECK_FALSE(check_translation_invariance(kernel_from_metric(cosine_metric), probes, 1e-12).invariant);

  CHECK_THROWS_AS(check_translation_invariance(cos_diff, std::vector<Probe>{}, 1e-12),
                  ValidationError);
}

TEST_CASE("zoo examples and errors") {
  CHECK(zoo("gaussian")(0.0) == 1.0);
  CHECK(zoo("cauchy")(0.0) == 2.0);
  CHECK(zoo("laplacian")(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(zoo("cosine", {{"omega", 2.0}})(pi / 2) == doctest::Approx(-1.0));
  CHECK(zoo("constant", {{"c", 0.25}})(7.0) == 0.25);
  CHECK(zoo("gaussian", {{"scale", 2.0}})(2.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(zoo("gaussian").descriptor() == Descriptor{"gaussian", {{"scale", 1.0}}});

  CHECK_THROWS_AS(zoo("matern"), ConfigError);
  CHECK_THROWS_AS(zoo("gaussian", {{"width", 1.0}}), ConfigError);
  CHECK_THROWS_AS(zoo("laplacian", {{"scale", 0.0}}), ConfigError);
  CHECK_THROWS_AS(zoo("constant", {{"c", -1.0}}), ConfigError);
}

TEST_CASE("zoo profiles are even, bounded by k(0), and PSD on random points") {
  const auto grid = probe_grid();
  std::mt19937_64 gen(17);
  for (const auto& name : zoo_names()) {
    CAPTURE(name);
    const auto k = zoo(name);
    CHECK(evenness_violation(k, grid) <= 1e-12);
    CHECK(bound_violation(k, grid) <= 0.0);
    for (int trial = 0; trial < 40; ++trial) {
      const auto pts = testing::random_points(gen, 2 + trial % 7);
      CHECK(is_positive_definite(build_gram(k, pts)).holds);
    }
  }
}

TEST_CASE("metrics of zoo kernels are translation invariant and negative definite") {
  const auto probes = default_probes();
  std::mt19937_64 gen(23);
  for (const auto& name : zoo_names()) {
    CAPTURE(name);
    const auto d2 = metric_from_kernel(zoo(name));
    CHECK(evenness_violation(d2, probe_grid()) <= 1e-12);
    CHECK(check_translation_invariance(lift(d2), probes, 1e-12).invariant);
    for (int trial = 0; trial < 40; ++trial) {
      const auto pts = testing::random_points(gen, 2 + trial % 7);
      const auto n = static_cast<Eigen::Index>(pts.size());
      Eigen::MatrixXd m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = d2(pts[i] - pts[j]);
      CHECK(is_negative_definite(SymmetricKernelMatrix(m)).holds);
    }
  }
}

TEST_CASE("metric-kernel bridge discrepancy is k(x-y) - k(x) - k(y) + k(0)") {
  const auto grid = probe_grid(-10, 10, 41);
  for (const auto& name : zoo_names()) {
    const auto k = zoo(name);
    const auto back = kernel_from_metric(metric_from_kernel(k));
    for (double x : grid) {
      for (double y : grid) {
        const double expected = k(x - y) - k(x) - k(y) + k(0.0);
        CHECK(std::abs(back(x, y) - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sampled_kernel interpolates and mirrors") {
  const auto k = sampled_kernel({0.0, 1.0, 2.0}, {1.0, 0.5, 0.0});
  CHECK(k(0.5) == doctest::Approx(0.75));
  CHECK(k(-1.5) == doctest::Approx(0.25));
  CHECK(k.at_zero() == 1.0);
  CHECK_THROWS_AS(k(2.5), EvaluationError);
  CHECK_THROWS_AS(sampled_kernel({0.0, 0.0}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(sampled_kernel({0.0}, {1.0, 2.0}), ValidationError);

  const auto two_sided = sampled_kernel({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  CHECK(two_sided(-0.5) == doctest::Approx(0.5));
}

TEST_CASE("sample reports non-finite evaluations") {
  const KernelProfile bad([](double t) { return 1.0 / t; }, {"inv", {}});
  const std::vector<double> grid{1.0, 0.0};
  CHECK_THROWS_AS(sample(bad, grid), EvaluationError);
}
