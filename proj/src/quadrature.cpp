#include "bouquet/quadrature.hpp"

namespace bouquet {
namespace {

struct Worker {
  const std::function<double(double)>& f;
  int max_depth;

  double simpson(double a, double b, double fa, double fm, double fb) const {
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
  }

  QuadResult recurse(double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
      return {left + right + delta / 15.0, std::abs(delta) / 15.0};
    }
    QuadResult l = recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    QuadResult r = recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    return {l.value + r.value, l.error + r.error};
  }
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth) {
  if (!(a <= b)) throw PreconditionError("integrate_adaptive: requires a <= b");
  if (a == b) return {0.0, 0.0};
  Worker w{f, max_depth};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = w.simpson(a, b, fa, fm, fb);
  return w.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
}

}  // namespace bouquet
