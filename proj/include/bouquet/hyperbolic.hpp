#pragma once

#include <functional>

#include "bouquet/core.hpp"

namespace bouquet {

// Two-sided estimate for the hyperbolic density of a simply connected domain
// in terms of the Euclidean distance to its boundary: lower = 1/(2d),
// upper = 2/d, so upper/lower == 4 by construction.
struct DensityBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Hyperbolic distance in the right half-plane {Re > 0} with density 1/Re z
// (curvature -1; the unique normalization whose distance to the boundary
// equals Re z, consistent with the two-sided density estimate).
// cosh d = 1 + |z-w|^2 / (2 Re z Re w).
double hyp_dist_halfplane(Complex z, Complex w);

// Density bounds at a point whose distance to the domain boundary is d > 0.
DensityBounds density_bounds(double dist_to_boundary);

// Hyperbolic density of the strip {|Im| < pi} at z: 1/(2 cos(Im z / 2)).
double strip_density(Complex z);

// Ahlfors-distortion lower bound for a strip map: integral of 1/theta over
// [t0,t1] minus 2 ln 32, with the integral computed by adaptive Simpson to a
// relative tolerance of 1e-9.  theta must be positive on [t0,t1] and the
// integral must be >= 1/2 (the theorem's hypothesis), otherwise
// PreconditionError is thrown.  If quad_err is given, receives the estimated
// quadrature error of the integral.
double ahlfors_lower_bound(const std::function<double(double)>& theta, double t0, double t1,
                           double* quad_err = nullptr);

}  // namespace bouquet
