#include "bouquet/hyperbolic.hpp"

#include "bouquet/quadrature.hpp"

namespace bouquet {

double hyp_dist_halfplane(Complex z, Complex w) {
  require_finite(z, "hyp_dist_halfplane");
  require_finite(w, "hyp_dist_halfplane");
  if (z.real() <= 0.0 || w.real() <= 0.0)
    throw DomainError("hyp_dist_halfplane: points must have Re > 0");
  const double q = std::norm(z - w) / (2.0 * z.real() * w.real());
  return acosh1p(q);
}

DensityBounds density_bounds(double dist_to_boundary) {
  if (!(dist_to_boundary > 0.0))
    throw DomainError("density_bounds: distance to boundary must be positive");
  return {1.0 / (2.0 * dist_to_boundary), 2.0 / dist_to_boundary};
}

double strip_density(Complex z) {
  require_finite(z, "strip_density");
  if (!(std::abs(z.imag()) < kPi)) throw DomainError("strip_density: |Im z| must be < pi");
  return 1.0 / (2.0 * std::cos(0.5 * z.imag()));
}

double ahlfors_lower_bound(const std::function<double(double)>& theta, double t0, double t1,
                           double* quad_err) {
  if (!(t0 < t1)) throw PreconditionError("ahlfors_lower_bound: requires t0 < t1");
  auto integrand = [&](double s) {
    const double th = theta(s);
    if (!(th > 0.0)) throw DomainError("ahlfors_lower_bound: theta must be positive");
    return 1.0 / th;
  };
  // Two passes: a crude value first, then refine to a relative 1e-9 target.
  QuadResult crude = integrate_adaptive(integrand, t0, t1, 1e-6);
  const double tol = 1e-9 * std::max(1.0, std::abs(crude.value));
  QuadResult q = integrate_adaptive(integrand, t0, t1, tol);
  if (quad_err) *quad_err = q.error;
  if (q.value < 0.5)
    throw PreconditionError("ahlfors_lower_bound: integral of ds/theta is below 1/2");
  return q.value - 2.0 * std::log(32.0);
}

}  // namespace bouquet
