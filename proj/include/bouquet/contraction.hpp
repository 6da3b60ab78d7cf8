#pragma once

#include <cstdint>
#include <string>

#include "bouquet/core.hpp"

namespace bouquet {

// L(t) = min(t/2, max(2, 8*pi*log t)), the contraction profile of inverse
// branches acting on diameters; strictly increasing, L(t) <= t/2.
double L_eval(double t);

// E = L^{-1}: E(s) is the unique t with L(t) = s.
double E_eval(double s);

// ell(n) = (3/2)^n.
double ell(int n);

// c = 8 pi ln(3/2).
double small_c();

struct MSumResult {
  double value = 0.0;       // truncated sum_{k=1..terms} L^k(ell(n+k))
  double tail_bound = 0.0;  // rigorous bound on the dropped tail
  int terms = 0;
};

// M_n = sum_{k>=1} L^k(ell(n+k)), truncated so that tail_bound <= tol.
// The tail bound combines L(t) <= t/2 (geometric halving) with
// L(ell(m)) <= c*m for m >= 1.
MSumResult M_sum(int n, double tol = 1e-9);

// The constant of the summation lemma: max(M0+tail, M1+tail, 8c) + 1,
// which satisfies M_n < C (n+1) for all n.
double sum_constant_C();

struct HookCheckResult {
  bool ok = false;
  // When !ok, the first failing inequality family and index.
  std::string failing_family;
  long long failing_n = -1;
  // Eventual-monotonicity certificate covering n > n_max.
  bool certificate = false;
  std::string certificate_note;
};

// Verifies the three inequality families behind the (C2, C3) hook constants
// for 0 <= n <= n_max:
//   A:  L(C2 * ell(n+1)) < C3 * (n+1)
//   B:  (C2 - 1) * ell(n) > 2 * C3 * (n+1)
//   C:  8 pi log(C2 * 3/2) < C3 < 3^n (C2-1) / (2^{n+1} (n+1))
// plus the structural requirements C2 > 1 and C3 > 3 * sum_constant_C(),
// plus a certificate that the families keep holding for all n > n_max.
HookCheckResult hook_constants_check(double C2, double C3, long long n_max);

// The repository's canonical verified pair.
constexpr double kCanonicalC2 = 1350.0;
constexpr double kCanonicalC3 = 450.0;

struct DiamBoundsResult {
  double pullback_max = 0.0;  // min(d/2, L(d))
  double image_min = 0.0;     // max(2d, E(d))
};

// Diameter transport under one inverse branch / one forward image.
DiamBoundsResult diam_bounds(double diam);

}  // namespace bouquet
