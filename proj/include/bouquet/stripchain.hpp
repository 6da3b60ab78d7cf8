#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bouquet/core.hpp"
#include "bouquet/zipper.hpp"

namespace bouquet {

// asinh(exp(u)) and log(sinh(z)) in overflow-safe form; the workhorses of all
// half-strip end maps.
Complex asinh_exp(Complex u);
Complex log_sinh(Complex z);

// Piecewise-linear symmetric spike profile: the domain
//   V = { x + iy : x > 0, |y| < rho(x) }
// with rho constant (= rho[0]) on (0, x[0]], linear between breakpoints and
// constant past the last breakpoint.
struct SpikeProfile {
  std::vector<double> x;    // breakpoints, strictly increasing
  std::vector<double> rho;  // halfwidths at the breakpoints, non-increasing

  double rho_at(double t) const;
  double slope(size_t seg) const;  // (rho[j]-rho[j+1])/(x[j+1]-x[j]) >= 0
};

// Conformal map chi of the spike domain V onto the standard strip
// S = {|Im w| < pi/2}, normalized chi(normalize_at) = 0, with the closed left
// end of V corresponding to Re w -> -inf.  Assembled from exact pieces
// (half-strip end, wedges) and zipper-computed junction chunks around the
// profile corners; every piece carries the strip window on which it is
// trusted, and adjacent pieces are matched on overlaps.
class ProfileStripMap {
 public:
  struct Piece {
    double s_lo, s_hi;  // trusted strip window (Re w)
    double x_lo, x_hi;  // corresponding axis window in the domain
    std::string kind;
    std::function<Complex(Complex)> to_strip;    // domain -> S
    std::function<Complex(Complex)> to_domain;   // S -> domain
    std::function<Complex(Complex)> d_to_domain; // dz/dw
  };

  Complex to_strip(Complex z) const;     // dispatch by Re z
  Complex to_domain(Complex w) const;    // dispatch by Re w
  Complex strip_derivative(Complex z) const;   // d chi / dz = 1 / (dz/dw)
  Complex domain_derivative(Complex w) const;  // dz/dw

  double s_max() const { return s_max_; }
  double x_max() const { return pieces_.back().x_hi; }
  // Maximum cross-piece mismatch observed while matching (strip units).
  double match_error() const { return match_error_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  friend ProfileStripMap build_profile_strip_map(const SpikeProfile&, double, double);

 private:
  const Piece& piece_for_strip(double s) const;
  const Piece& piece_for_axis(double x) const;

  std::vector<Piece> pieces_;
  double s_max_ = 0.0;
  double match_error_ = 0.0;
};

// Builds the chain covering strip parameters up to s_max (hyperbolic length
// along the spine from the normalization point).  accuracy is the requested
// boundary tolerance in strip units; AccuracyError is thrown (with the
// achieved value) when validation cannot certify it.
ProfileStripMap build_profile_strip_map(const SpikeProfile& profile, double accuracy,
                                        double s_max);

// --- shared piece primitives (used by the hooked-tract assembly too) ---

// Exact map of a half-strip closed at `tip`, opening in direction -dir
// ... to_domain(w) = tip - dir*(width/pi)*asinh(exp(w - u0)), which sends
// Re w -> -inf to the tip-edge midpoint.
struct HalfstripEndPiece {
  Complex tip;
  Complex dir;  // unit complex: direction of the strip axis away from the tip
  double width;
  double u0 = 0.0;

  Complex to_domain(Complex w) const;
  Complex to_strip(Complex z) const;
  Complex d_to_domain(Complex w) const;
};

// Domain point near one end of a strip chunk together with (the log of) its
// approximate strip coordinate toward that end; three of these per end let
// the junction recover the end's prime-end image by a Moebius-limit fit.
struct EndProbe {
  Complex z;
  double s;  // strip coordinate estimate; the end lies toward -inf (left) / +inf (right)
};

// Zipper-backed junction chunk: a bounded polygon with two end prime-ends,
// mapped to the strip by ZipperMap followed by the two-point normalization
// Log((w - qL)/(w - qR)); each end's numerical resolution then depends only
// on its own strip depth.  The end images qL, qR are fitted from interior
// probes (boundary-sample images are branch-unstable on thin chunks).  The
// seam sample (first, mapped to infinity) must sit on a cap edge, off-center,
// so its interpolation defect stays out of the trusted window.
class JunctionPiece {
 public:
  JunctionPiece(std::vector<Complex> samples, const std::array<EndProbe, 3>& left_probes,
                const std::array<EndProbe, 3>& right_probes, Complex interior_probe,
                Complex frame_center, double frame_scale);

  Complex to_strip(Complex z) const;
  Complex to_domain(Complex w) const;
  Complex d_to_domain(Complex w) const;
  void add_shift(Complex delta) { shift_ += delta; }
  Complex shift() const { return shift_; }
  const ZipperMap& zipper() const { return *zip_; }

 private:
  double fit_end_image(const std::array<EndProbe, 3>& probes, bool left) const;

  std::shared_ptr<ZipperMap> zip_;
  double q_left_ = 0.0, q_right_ = 0.0;
  double sigma_ = 1.0;  // sign making the Moebius image land in the lower half-plane
  Complex center_;
  double scale_ = 1.0;
  Complex shift_ = 0.0;  // additive strip-side normalization
};

}  // namespace bouquet
