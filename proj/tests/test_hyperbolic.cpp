#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bouquet/hyperbolic.hpp"
#include "bouquet/quadrature.hpp"

using namespace bouquet;

TEST_CASE("half-plane distance: coincident and real-axis points") {
  CHECK(hyp_dist_halfplane({1, 0}, {1, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  // geodesic along the positive reals: d(1, e) = integral of dx/x = 1
  CHECK(hyp_dist_halfplane({1, 0}, {std::exp(1.0), 0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("half-plane distance: arccosh(1.5) oracle") {
  // cosh d = 1 + 1/2 for (1, 1+i)
  const double want = std::acosh(1.5);
  CHECK(std::abs(hyp_dist_halfplane({1, 0}, {1, 1}) - want) < 1e-6);
  CHECK(std::abs(hyp_dist_halfplane({1, 0}, {1, 1}) - 0.9624236501) < 1e-6);
}

TEST_CASE("half-plane distance: symmetry, triangle inequality, vertical bound") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> re(0.1, 50.0), im(-40.0, 40.0);
  for (int i = 0; i < 2000; ++i) {
    Complex a{re(rng), im(rng)}, b{re(rng), im(rng)}, c{re(rng), im(rng)};
    const double ab = hyp_dist_halfplane(a, b);
    CHECK(ab == doctest::Approx(hyp_dist_halfplane(b, a)).epsilon(1e-13));
    CHECK(ab <= hyp_dist_halfplane(a, c) + hyp_dist_halfplane(c, b) + 1e-12);
  }
  // same vertical line: dist <= |Im z - Im w| / x
  for (int i = 0; i < 2000; ++i) {
    const double x = re(rng);
    Complex z{x, im(rng)}, w{x, im(rng)};
    CHECK(hyp_dist_halfplane(z, w) <= std::abs(z.imag() - w.imag()) / x + 1e-12);
  }
}

TEST_CASE("half-plane distance: domain errors") {
  CHECK_THROWS_AS(hyp_dist_halfplane({-1, 0}, {1, 0}), DomainError);
  CHECK_THROWS_AS(hyp_dist_halfplane({1, 0}, {0, 1}), DomainError);
}

TEST_CASE("density bounds") {
  auto b1 = density_bounds(1.0);
  CHECK(b1.lower == doctest::Approx(0.5));
  CHECK(b1.upper == doctest::Approx(2.0));
  auto b2 = density_bounds(2.0);
  CHECK(b2.lower == doctest::Approx(0.25));
  CHECK(b2.upper == doctest::Approx(1.0));
  auto b3 = density_bounds(0.1);
  CHECK(b3.lower == doctest::Approx(5.0));
  CHECK(b3.upper == doctest::Approx(20.0));
  // ratio exactly 4
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(1e-6, 1e6);
  for (int i = 0; i < 100; ++i) {
    auto b = density_bounds(d(rng));
    CHECK(b.upper == doctest::Approx(4.0 * b.lower).epsilon(1e-15));
  }
  CHECK_THROWS_AS(density_bounds(0.0), DomainError);
  CHECK_THROWS_AS(density_bounds(-1.0), DomainError);
}

TEST_CASE("strip density") {
  CHECK(strip_density({0, 0}) == doctest::Approx(0.5));
  CHECK(strip_density({100, 0}) == doctest::Approx(0.5));  // Re-invariance
  CHECK(strip_density({0, kPi / 2}) == doctest::Approx(1.0 / (2.0 * std::cos(kPi / 4))).epsilon(1e-12));
  CHECK(std::abs(strip_density({0, kPi / 2}) - 0.70710678118) < 1e-9);
  CHECK_THROWS_AS(strip_density({0, kPi}), DomainError);
}

TEST_CASE("ahlfors lower bound: constant theta closed form") {
  auto theta_pi = [](double) { return kPi; };
  const double got = ahlfors_lower_bound(theta_pi, 0.0, kPi);
  CHECK(got == doctest::Approx(1.0 - 2.0 * std::log(32.0)).epsilon(1e-12));
  CHECK(std::abs(got - (-5.9315)) < 1e-4);
}

TEST_CASE("ahlfors lower bound: linear theta vs analytic integral") {
  // theta(s) = 1+s on [0,1]: integral = ln 2
  double err = 0.0;
  const double got = ahlfors_lower_bound([](double s) { return 1.0 + s; }, 0.0, 1.0, &err);
  CHECK(std::abs(got - (std::log(2.0) - 2.0 * std::log(32.0))) < 1e-9);
  CHECK(err <= 1e-9 * std::max(1.0, std::log(2.0)));
}

TEST_CASE("ahlfors lower bound: hypothesis violation reported") {
  // tiny interval: integral < 1/2
  CHECK_THROWS_AS(ahlfors_lower_bound([](double) { return kPi; }, 0.0, 0.1), PreconditionError);
}

TEST_CASE("adaptive quadrature sanity") {
  auto q = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-11));
}
