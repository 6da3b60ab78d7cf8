#pragma once

#include <vector>

#include "bouquet/core.hpp"

namespace bouquet {

// Conformal map of the interior of a Jordan polygon onto the upper half-plane
// by the geodesic algorithm: the map is built as a composition of elementary
// slit maps, one per boundary sample.  It is the exact conformal map of the
// region bounded by the geodesic interpolant of the samples, so its accuracy
// against the true polygon is controlled by the sample spacing and is
// certified afterwards by probing an independent, finer boundary sampling.
//
// Conventions: the polygon samples are ordered along the boundary; the first
// sample maps to infinity, the second to 0.  The closing seam (between the
// last and the first sample) carries an O(spacing) defect, so callers should
// start the sample list in the middle of an edge whose neighborhood they do
// not use (a truncation cap).
class ZipperMap {
 public:
  // interior_probe: any point strictly inside the polygon, used to fix
  // orientation.
  ZipperMap(std::vector<Complex> boundary_samples, Complex interior_probe);

  Complex map(Complex z) const;         // polygon interior -> upper half-plane
  Complex inverse(Complex w) const;     // upper half-plane -> polygon interior
  Complex derivative(Complex z) const;  // d map / dz (analytic chain rule)

  // Image of the k-th input sample on the real axis.
  double sample_image(size_t k) const { return sample_images_[k]; }
  // Image of the retained sample nearest to z (samples may be deduplicated or
  // reversed internally, so look marked points up by value).
  double image_of_sample(Complex z) const;
  size_t size() const { return samples_.size(); }

 private:
  struct Step {
    double s = 0.0;  // Moebius parameter; 0 means "skip Moebius" (Re d == 0)
    double h = 0.0;  // vertical slit height
    bool has_moebius = false;
  };

  Complex apply_initial(Complex z) const;
  Complex apply_initial_derivative(Complex z) const;

  std::vector<Complex> samples_;
  std::vector<Step> steps_;
  std::vector<double> sample_images_;
  Complex z0_, z1_;
};

}  // namespace bouquet
