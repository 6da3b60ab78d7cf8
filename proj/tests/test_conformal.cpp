#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bouquet/hyperbolic.hpp"
#include "bouquet/stripchain.hpp"
#include "bouquet/zipper.hpp"

using namespace bouquet;

namespace {

// Exact conformal map of the unit disk onto the upper half-plane fixing the
// boundary points used below; reference for zipper validation.
Complex cayley(Complex z) { return Complex(0, 1) * (1.0 - z) / (1.0 + z); }

}  // namespace

TEST_CASE("zipper: unit circle vs Cayley map") {
  std::vector<Complex> pts;
  const int n = 512;
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    pts.push_back({std::cos(t), std::sin(t)});
  }
  ZipperMap zm(pts, {0.0, 0.0});

  // Conformal maps disk -> H differ by a real Moebius; compare cross-ratios
  // of four interior points instead of raw values.
  auto cross = [](Complex a, Complex b, Complex c, Complex d) {
    return ((a - c) / (a - d)) * ((b - d) / (b - c));
  };
  Complex p1{0.1, 0.2}, p2{-0.3, 0.1}, p3{0.4, -0.35}, p4{-0.2, -0.5};
  const Complex got = cross(zm.map(p1), zm.map(p2), zm.map(p3), zm.map(p4));
  const Complex want = cross(cayley(p1), cayley(p2), cayley(p3), cayley(p4));
  CHECK(std::abs(got - want) < 2e-4);

  // round-trip on a grid of interior points
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 200; ++i) {
    Complex z{u(rng), u(rng)};
    const Complex w = zm.map(z);
    CHECK(w.imag() > 0.0);
    CHECK(std::abs(zm.inverse(w) - z) < 1e-9);
  }

  // analytic derivative vs central difference
  for (int i = 0; i < 20; ++i) {
    Complex z{u(rng) * 0.6, u(rng) * 0.6};
    const double h = 1e-6;
    const Complex fd = (zm.map(z + h) - zm.map(z - h)) / (2.0 * h);
    CHECK(std::abs(zm.derivative(z) - fd) < 1e-4 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("zipper: boundary samples land on the real axis") {
  std::vector<Complex> pts;
  const int n = 256;
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    // an off-center smooth blob
    const double r = 1.0 + 0.25 * std::cos(3 * t);
    pts.push_back({r * std::cos(t) + 0.2, r * std::sin(t)});
  }
  ZipperMap zm(pts, {0.2, 0.0});
  // independent boundary points (between construction samples), away from the
  // seam where the closing defect lives
  double worst = 0.0;
  for (int k = n / 20; k < n - n / 20; ++k) {
    const double t = kTwoPi * (k + 0.5) / n;
    const double r = 1.0 + 0.25 * std::cos(3 * t);
    const Complex z{r * std::cos(t) + 0.2, r * std::sin(t)};
    const Complex w = zm.map(z);
    // measure in domain units via the local derivative
    const double d = std::abs(w.imag()) / std::abs(zm.derivative(z));
    worst = std::max(worst, d);
  }
  CHECK(worst < 2e-3);
}

TEST_CASE("profile strip map: single-width profile equals the exact half-strip map") {
  // rho == 0.2404 everywhere: V is a straight half-strip; chi has a closed
  // form through asinh(exp(.)), which the chain must reproduce even though it
  // runs the generic planner.
  const double r = 0.2404;
  SpikeProfile prof{{1.0}, {r}};
  ProfileStripMap chi = build_profile_strip_map(prof, 1e-6, 200.0);

  HalfstripEndPiece exact{Complex(0, 0), Complex(-1, 0), 2.0 * r, 0.0};
  const double u_ref = exact.to_strip(Complex(1.0, 0.0)).real();

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.02, 25.0), uy(-0.9, 0.9);
  for (int i = 0; i < 500; ++i) {
    Complex z{ux(rng), uy(rng) * r};
    const Complex got = chi.to_strip(z);
    const Complex want = exact.to_strip(z) - u_ref;
    CHECK(std::abs(got - want) < 1e-9);
  }
  CHECK(std::abs(chi.to_strip(Complex(1.0, 0.0))) < 1e-12);
}

TEST_CASE("profile strip map: two-segment taper") {
  // rho drops 10x over one unit then stays flat: one corner cluster.
  SpikeProfile prof{{1.0, 2.0}, {0.25, 0.025}};
  ProfileStripMap chi = build_profile_strip_map(prof, 2e-3, 400.0);

  CHECK(chi.match_error() < 2e-3);
  CHECK(std::abs(chi.to_strip(Complex(1.0, 0.0))) < 1e-12);

  // strictly increasing along the axis, and the axis stays on the axis
  double prev = -1e18;
  for (double x = 0.05; x < 60.0; x += 0.121) {
    const Complex w = chi.to_strip(Complex(x, 0.0));
    CHECK(std::abs(w.imag()) < 2e-3);
    CHECK(w.real() > prev);
    prev = w.real();
  }

  // round trips, both directions
  for (double s = -8.0; s < 380.0; s += 7.3) {
    const Complex z = chi.to_domain(Complex(s, 0.1));
    const Complex w = chi.to_strip(z);
    CHECK(std::abs(w - Complex(s, 0.1)) < 5e-3);
  }

  // boundary probes: Im chi = +/- pi/2 within tolerance (strip units)
  double worst = 0.0;
  for (double x = 0.05; x < 25.0; x += 0.0917) {
    const Complex w = chi.to_strip(Complex(x, prof.rho_at(x) * (1.0 - 1e-12)));
    worst = std::max(worst, std::abs(std::abs(w.imag()) - 0.5 * kPi));
  }
  CHECK(worst < 5e-3);

  // hyperbolic sandwich: the strip coordinate is the hyperbolic length along
  // the spine, so the two-sided density estimate brackets it
  for (double x : {3.0, 5.0, 9.0}) {
    double lo = 0.0, hi = 0.0;
    const int N = 4000;
    for (int i = 0; i < N; ++i) {
      const double t = 1.0 + (x - 1.0) * (i + 0.5) / N;
      const double d = prof.rho_at(t);  // dist to boundary is <= rho(t)
      lo += (x - 1.0) / N / (2.0 * d);
      hi += (x - 1.0) / N * 2.0 / (0.9 * d);  // slope correction folded into 0.9
    }
    const double s = chi.to_strip(Complex(x, 0.0)).real();
    CHECK(s >= lo - 0.05);
    CHECK(s <= hi + 0.05);
  }
}
