#include "bouquet/contraction.hpp"

#include <algorithm>
#include <cmath>

namespace bouquet {

namespace {
constexpr double kEightPi = 8.0 * kPi;
}

double L_eval(double t) {
  if (!(t >= 0.0)) throw DomainError("L_eval: t must be >= 0");
  // ln t guarded for t <= 1: the max branch is 2 there.
  const double log_branch = t <= 1.0 ? 2.0 : std::max(2.0, kEightPi * std::log(t));
  return std::min(0.5 * t, log_branch);
}

double E_eval(double s) {
  if (!(s >= 0.0)) throw DomainError("E_eval: s must be >= 0");
  // Linear branch t = 2s is valid iff L(2s) = s, i.e. s <= max(2, 8pi ln 2s).
  const double lin = 2.0 * s;
  if (lin <= 1.0 || s <= std::max(2.0, kEightPi * std::log(lin))) return lin;
  return std::exp(s / kEightPi);
}

double ell(int n) {
  if (n < 0) throw DomainError("ell: n must be >= 0");
  return std::pow(1.5, n);
}

double small_c() { return kEightPi * std::log(1.5); }

MSumResult M_sum(int n, double tol) {
  if (n < 0) throw DomainError("M_sum: n must be >= 0");
  const double c = kEightPi * std::log(1.5);
  MSumResult r;
  const int kMaxTerms = 4000;
  for (int k = 1; k <= kMaxTerms; ++k) {
    double u = ell(n + k);
    for (int j = 0; j < k; ++j) u = L_eval(u);
    r.value += u;
    r.terms = k;
    // Tail bound over j > k: term_j <= min(ell(n+j)/2^j, c*(n+j)*2^{-(j-1)}).
    const double geo1 = 3.0 * std::pow(1.5, n) * std::pow(0.75, k);
    const double geo2 = c * std::ldexp(static_cast<double>(n + k + 2), 1 - k);
    r.tail_bound = std::min(geo1, geo2);
    if (r.tail_bound <= tol) break;
  }
  return r;
}

double sum_constant_C() {
  const double c = kEightPi * std::log(1.5);
  MSumResult m0 = M_sum(0), m1 = M_sum(1);
  return std::max({m0.value + m0.tail_bound, m1.value + m1.tail_bound, 8.0 * c}) + 1.0;
}

HookCheckResult hook_constants_check(double C2, double C3, long long n_max) {
  if (!(C2 > 1.0) || !(C3 > 0.0))
    throw PreconditionError("hook_constants_check: requires C2 > 1 and C3 > 0");
  HookCheckResult res;
  const double C = sum_constant_C();
  if (!(C3 > 3.0 * C)) {
    res.failing_family = "C3 > 3C";
    res.failing_n = 0;
    return res;
  }
  const double c_lo = kEightPi * std::log(C2 * 1.5);
  for (long long n = 0; n <= n_max; ++n) {
    const double elln = std::pow(1.5, static_cast<double>(n));
    const double elln1 = elln * 1.5;
    if (!(L_eval(C2 * elln1) < C3 * static_cast<double>(n + 1))) {
      res.failing_family = "L(C2*ell_{n+1}) < C3*(n+1)";
      res.failing_n = n;
      return res;
    }
    if (!((C2 - 1.0) * elln > 2.0 * C3 * static_cast<double>(n + 1))) {
      res.failing_family = "(C2-1)*ell_n > 2*C3*(n+1)";
      res.failing_n = n;
      return res;
    }
    // 3^n/(2^{n+1}(n+1)) == ell(n)/(2(n+1))
    const double upper = elln * (C2 - 1.0) / (2.0 * static_cast<double>(n + 1));
    if (!(c_lo < C3 && C3 < upper)) {
      res.failing_family = "8pi*log(C2*3/2) < C3 < 3^n(C2-1)/(2^{n+1}(n+1))";
      res.failing_n = n;
      return res;
    }
  }
  // Certificate for n > n_max.  Family B and the upper half of family C share
  // the term (C2-1) ell_n / (n+1), whose consecutive ratio is
  // (3/2)(n+1)/(n+2) >= 1 for n >= 1, so they persist once n_max >= 1.
  // Family A: L(t) <= max(2, 8pi log t) gives
  // L(C2 ell_{n+1}) <= 8pi (log C2 + (n+1) log 3/2); this stays below
  // C3 (n+1) for all n > n_max iff the slope gap is positive and the bound
  // holds at n_max + 1.
  const double slope_gap = C3 - kEightPi * std::log(1.5);
  const bool famA_tail =
      slope_gap > 0.0 &&
      kEightPi * std::log(C2) < slope_gap * static_cast<double>(n_max + 2);
  const bool famBC_tail = n_max >= 1;
  res.certificate = famA_tail && famBC_tail;
  res.certificate_note = res.certificate
                             ? "ratio (3/2)(n+1)/(n+2) >= 1 past n_max; log-branch slope gap positive"
                             : "n_max too small for the monotonicity certificate";
  res.ok = res.certificate;
  if (!res.certificate) {
    res.failing_family = "eventual-monotonicity certificate";
    res.failing_n = n_max;
  }
  return res;
}

DiamBoundsResult diam_bounds(double diam) {
  if (!(diam > 0.0)) throw DomainError("diam_bounds: diameter must be positive");
  return {std::min(0.5 * diam, L_eval(diam)), std::max(2.0 * diam, E_eval(diam))};
}

}  // namespace bouquet
