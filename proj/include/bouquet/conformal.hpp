#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bouquet/core.hpp"
#include "bouquet/stripchain.hpp"

namespace bouquet {

// A numerically realized conformal map with its certification data.  The
// boundary accuracy is the sup, over an independent sampling of the domain
// boundary, of the displacement (in domain units) needed to bring the mapped
// sample onto the target boundary.
struct NumericMap {
  std::function<Complex(Complex)> forward;
  std::function<Complex(Complex)> inverse;
  std::function<Complex(Complex)> derivative;
  double boundary_accuracy = 0.0;
  double roundtrip_error = 0.0;
  std::string notes;
};

// Conformal isomorphism of the half-strip {Re > x0, |Im| < half_width} onto
// the right half-plane: affine change to the standard half-strip, sinh, then
// the automorphism sending the image of `anchor` to `anchor_image` with
// positive derivative.  For T0 = {Re > 4, |Im| < pi/2} with anchor 5 -> 5
// this is F0(z) = 5 sinh(z-4)/sinh(1).
NumericMap halfstrip_map(double x0, double half_width, Complex anchor, Complex anchor_image);

// The unique automorphism of the right half-plane with M(p) = q and M'(p) a
// positive real.  positive_derivative documents the normalization; only the
// positive normalization is provided.
NumericMap halfplane_automorphism(Complex p, Complex q, bool positive_derivative = true);

struct Interval {
  double lo = 0.0, hi = 0.0;
};
struct LogInterval {
  double llo = 0.0, lhi = 0.0;  // natural logs of the endpoints
};

// Interval normalization: produces consecutive intervals [a~_j, b~_j] with
// a~_0 = 1, b~_0 = 2, a~_{j+1} = b~_j, b~_{j+1} >= max(b~_j^10, every input
// endpoint already reachable), so that each input interval is covered by at
// most two consecutive output intervals.  Inputs must have lo >= 1.
std::vector<Interval> normalize_intervals(std::vector<Interval> in);
std::vector<LogInterval> normalize_intervals_log(std::vector<LogInterval> in);

// The spike-domain profile built from normalized intervals: breakpoints
// x_j = 1 + delta_hat j, halfwidths delta_hat/(2 ell_j) with the hyperbolic
// lengths ell_j = log b~_j - log a~_j.
struct VProfile {
  double delta = 0.0;
  double delta_hat = 0.0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> ell;
  std::vector<double> log_beta;  // log b~_j

  double rho_at(double t) const;
  SpikeProfile spike() const { return SpikeProfile{x, rho}; }
};

VProfile v_profile(double delta, const std::vector<LogInterval>& normalized);

// Two-sided bracket for the hyperbolic distance along the spine of V from
// x=1 to x=t, from the density estimate integrated over the axis.
struct DistBracket {
  double lower = 0.0, upper = 0.0;
};
DistBracket v_axis_distance_bracket(const VProfile& profile, double t);

// psi: V -> right half-plane, normalized psi(1) = 1, psi(inf) = inf, built on
// the strip chain (log coordinates).  The returned NumericMap evaluates psi
// itself; `chain` (when non-null) receives the underlying strip map for
// consumers that need log-scale evaluation.  s_max bounds the potential
// log|psi| up to which the chain is certified.
NumericMap map_v_to_halfplane(const VProfile& profile, double accuracy, double s_max = 710.0,
                              std::shared_ptr<ProfileStripMap>* chain = nullptr);

// ---- hooked tracts ----

struct HookHeights {
  double h1, h2, h3, h4;  // pi(1 + 1/(3n)), ..., pi(1 + 1/(3n+3))
  double w_hook, w_out;   // band widths h3-h4 and h1-h2
  double m_hook, m_out;   // band midlines
};
HookHeights hook_heights(int n);

// a_{k+1} = F0(a_k), b_k = F0^k(a0+2), carried as logs (the values overflow
// past k = 2).
struct HookScales {
  std::vector<double> ln_a, ln_b;
  double a(int k) const { return std::exp(ln_a[k]); }
  double b(int k) const { return std::exp(ln_b[k]); }
  bool representable(int k) const { return ln_b[k] < 700.0; }
};
HookScales hook_scales(int n_max, double a0 = 6.0);

// Conformal map phi_n of the strip {|Im| < pi} onto the hooked region T^_n,
// normalized phi_n(-inf) = tip of the hook, phi_n(inf) = inf, phi_n(1) on the
// spine at Re = b_n - 1.  Assembled from the exact half-strip tip map and two
// zipper chunks around the U-turn; for n >= 3 the absolute coordinates exceed
// double range and only the local accessors are usable.
class HookTractMap {
 public:
  HookTractMap(int n, const HookScales& scales, double accuracy);

  int n() const { return n_; }
  const HookHeights& heights() const { return hh_; }
  bool coords_representable() const { return representable_; }
  double ln_a() const { return ln_a_; }
  double ln_b() const { return ln_b_; }

  // phi_n and friends on absolute coordinates (requires representable()).
  Complex phi(Complex z) const;
  Complex phi_inverse(Complex zt) const;
  Complex dphi(Complex z) const;

  // Tip zone, exact: phi(z) = b_n + i m_hook + tip_offset(z) whenever
  // z/2 + shift is left of the junction.  Valid for every n.
  Complex tip_offset(Complex z) const;
  Complex d_tip_offset(Complex z) const;
  bool in_tip_zone(Complex z) const;
  // Strip parameter of the spine point at euclidean distance d from the tip.
  double u_of_tip_distance(double d) const;
  double u_shift() const { return u_shift_; }

  // Bend window around the U-turn: spine point at junction coordinate t
  // (t = 0 at the connector entry), as an offset from a_n.  Valid for every
  // n; |t| <= 3 is certified.
  Complex bend_offset(double t) const;
  // log of the V-position (order key along the hair) of the bend spine point.
  double bend_order_log_x(double t) const;
  // junction strip position of the bend window relative to the tip (s_J),
  // representable only for n <= 2.
  double junction_u() const { return junction_u_; }

  // validation data
  double boundary_accuracy() const { return boundary_accuracy_; }
  double junction_match_error() const { return junction_match_err_; }
  double tip_match_error() const { return tip_match_err_; }
  // sampled sup of |phi'| over the substrip |Im z| <= pi/2 (trusted windows)
  double dphi_sup_mid() const { return dphi_sup_mid_; }

 private:
  Complex junction_to_domain_offset(Complex u_loc) const;  // offset from a_n
  Complex junction_d_to_domain(Complex u_loc) const;
  Complex junction_to_strip(Complex offset) const;
  void build_junction(double accuracy);
  void validate(double accuracy);

  int n_ = 1;
  HookHeights hh_;
  double ln_a_ = 0.0, ln_b_ = 0.0;
  bool representable_ = true;
  double u_shift_ = 0.0;    // phi(z) = chain(z/2 + u_shift) in tip coordinates
  double junction_u_ = 0.0; // tip-coordinate of the junction reference point
  double u_dispatch_ = 0.0; // tip zone for u <= u_dispatch (vs junction zone)

  std::shared_ptr<JunctionPiece> chunk_hook_, chunk_out_;
  double chunk_split_ = 0.0;  // junction-local split between the two chunks
  double outer_rate_ = 0.0, outer_off_re_ = 0.0;  // outer-arm affine data
  double hook_cap_xi_ = 0.0, out_cap_xi_ = 0.0;

  double boundary_accuracy_ = 0.0;
  double junction_match_err_ = 0.0;
  double tip_match_err_ = 0.0;
  double dphi_sup_mid_ = 0.0;
};

// Public wrapper per the module surface: phi_n as a NumericMap (full
// evaluation needs n <= 2; validation metrics cover every n).
NumericMap hooked_tract_map(int n, double accuracy, const HookScales& scales,
                            std::shared_ptr<HookTractMap>* impl = nullptr);

}  // namespace bouquet
