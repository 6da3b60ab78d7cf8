#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bouquet/contraction.hpp"

using namespace bouquet;

namespace {
constexpr double kEightPi = 8.0 * kPi;

// Brute-force series oracle for M_n, independent of M_sum's stopping rule.
double m_sum_oracle(int n, int terms) {
  double total = 0.0;
  for (int k = 1; k <= terms; ++k) {
    double u = std::pow(1.5, n + k);
    for (int j = 0; j < k; ++j) u = L_eval(u);
    total += u;
  }
  return total;
}
}  // namespace

TEST_CASE("L: branch values") {
  CHECK(L_eval(1.0) == doctest::Approx(0.5));
  CHECK(L_eval(4.0) == doctest::Approx(2.0));
  // log branch active at t=1000: 8*pi*ln(1000) < 500
  const double want = kEightPi * std::log(1000.0);
  CHECK(want < 500.0);
  CHECK(L_eval(1000.0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(std::abs(L_eval(1000.0) - want) < 1e-3);
  CHECK(L_eval(0.0) == 0.0);
}

TEST_CASE("L: strictly increasing and halving on a log grid") {
  double prev = -1.0;
  for (int i = 0; i <= 5000; ++i) {
    const double t = std::pow(10.0, -3.0 + 12.0 * i / 5000.0);
    const double v = L_eval(t);
    CHECK(v > prev);
    CHECK(v <= 0.5 * t + 1e-15);
    if (t >= 4.0) CHECK(v >= 2.0 - 1e-12);
    prev = v;
  }
}

TEST_CASE("E: inverse of L") {
  CHECK(E_eval(0.5) == doctest::Approx(1.0));
  CHECK(E_eval(2.0) == doctest::Approx(4.0));
  const double e200 = std::exp(200.0 / kEightPi);  // oracle
  CHECK(E_eval(200.0) == doctest::Approx(e200).epsilon(1e-12));
  CHECK(std::abs(L_eval(E_eval(200.0)) - 200.0) < 1e-9 * 200.0);
  // round trip on a wide grid, both compositions
  for (int i = 0; i <= 2000; ++i) {
    const double t = std::pow(10.0, -3.0 + 12.0 * i / 2000.0);
    CHECK(std::abs(E_eval(L_eval(t)) - t) <= 1e-9 * std::max(1.0, t));
    const double s = L_eval(t);
    CHECK(std::abs(L_eval(E_eval(s)) - s) <= 1e-9 * std::max(1.0, s));
  }
}

TEST_CASE("ell") {
  CHECK(ell(0) == 1.0);
  CHECK(ell(1) == 1.5);
  CHECK(ell(10) == doctest::Approx(std::pow(1.5, 10)).epsilon(1e-15));
  CHECK(std::abs(ell(10) - 57.6650390625) < 1e-9);
}

TEST_CASE("M_sum: oracle values and lemma bound") {
  auto m0 = M_sum(0);
  CHECK(m0.tail_bound <= 1e-9);
  CHECK(std::abs(m0.value - m_sum_oracle(0, 400)) < 1e-8);
  CHECK(std::abs(m0.value - 2.99) < 0.05);

  auto m1 = M_sum(1);
  CHECK(std::abs(m1.value - m_sum_oracle(1, 400)) < 1e-8);
  CHECK(std::abs(m1.value - 4.5) < 0.1);

  const double C = sum_constant_C();
  for (int n = 0; n <= 64; ++n) {
    auto m = M_sum(n);
    CHECK(m.tail_bound <= 1e-9);
    CHECK(m.value + m.tail_bound < C * (n + 1));
  }
}

TEST_CASE("sum_constant_C: dominated by 8c") {
  const double c = small_c();
  CHECK(std::abs(c - 10.1905) < 1e-3);
  CHECK(std::abs(8.0 * c - 81.524) < 1e-2);
  const double C = sum_constant_C();
  CHECK(C == doctest::Approx(8.0 * c + 1.0).epsilon(1e-12));  // M0, M1 < 8c
  CHECK(std::abs(C - 82.5) < 0.1);
}

TEST_CASE("hook constants: canonical pair passes, paper pair fails at n=0") {
  auto good = hook_constants_check(1350.0, 450.0, 1000);
  CHECK(good.ok);
  CHECK(good.certificate);

  auto bad = hook_constants_check(450.0, 450.0, 10);
  CHECK(!bad.ok);
  CHECK(bad.failing_n == 0);
  CHECK(bad.failing_family == "(C2-1)*ell_n > 2*C3*(n+1)");
  // the arithmetic behind the failure: 449 < 900
  CHECK((450.0 - 1.0) * 1.0 < 2.0 * 450.0);

  auto tiny = hook_constants_check(2.0, 1.0, 0);
  CHECK(!tiny.ok);
  CHECK(tiny.failing_family == "C3 > 3C");
}

TEST_CASE("hook constants: minimum of the ratio bound is 3/8") {
  // min over n of 3^n/(2^{n+1}(n+1)) is 3/8, attained at n = 1, 2
  double lo = 1e300;
  int arg = -1;
  for (int n = 0; n <= 60; ++n) {
    const double v = std::pow(1.5, n) / (2.0 * (n + 1));
    if (v < lo) {
      lo = v;
      arg = n;
    }
  }
  CHECK(lo == doctest::Approx(0.375));
  CHECK((arg == 1 || arg == 2));
  CHECK(0.375 * (1350.0 - 1.0) > 450.0);
}

TEST_CASE("diam_bounds") {
  auto d2 = diam_bounds(2.0);
  CHECK(d2.pullback_max == doctest::Approx(1.0));
  CHECK(d2.image_min == doctest::Approx(4.0));
  auto d4 = diam_bounds(4.0);
  CHECK(d4.pullback_max == doctest::Approx(2.0));
  CHECK(d4.image_min == doctest::Approx(8.0));
  auto big = diam_bounds(1000.0);
  CHECK(std::abs(big.pullback_max - kEightPi * std::log(1000.0)) < 0.1);
  // image_min is E(1000); checked against the inverse relation
  CHECK(std::abs(L_eval(big.image_min) - 1000.0) <= 1e-9 * 1000.0);
  // monotone in the diameter
  double prev_p = 0.0, prev_i = 0.0;
  for (int i = 1; i <= 300; ++i) {
    auto b = diam_bounds(0.5 * i);
    CHECK(b.pullback_max >= prev_p);
    CHECK(b.image_min >= prev_i);
    prev_p = b.pullback_max;
    prev_i = b.image_min;
  }
}
