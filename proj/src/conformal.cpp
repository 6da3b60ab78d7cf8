#include "bouquet/conformal.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#include "bouquet/hyperbolic.hpp"
#include "bouquet/quadrature.hpp"

namespace bouquet {

namespace {

Complex halfplane_autom_eval(Complex p, Complex q, Complex z) {
  // disk coordinates centered at p resp. q
  const Complex u = (z - p) / (z + std::conj(p));
  return (q + std::conj(q) * u) / (1.0 - u);
}

}  // namespace

NumericMap halfplane_automorphism(Complex p, Complex q, bool positive_derivative) {
  if (!(p.real() > 0.0) || !(q.real() > 0.0))
    throw DomainError("halfplane_automorphism: p and q must have Re > 0");
  if (!positive_derivative)
    throw PreconditionError("halfplane_automorphism: only the positive normalization exists");
  NumericMap m;
  m.forward = [p, q](Complex z) { return halfplane_autom_eval(p, q, z); };
  m.inverse = [p, q](Complex w) { return halfplane_autom_eval(q, p, w); };
  m.derivative = [p, q](Complex z) {
    const Complex den = z + std::conj(p);
    const Complex u = (z - p) / den;
    const Complex du = 2.0 * p.real() / (den * den);
    return (std::conj(q) * (1.0 - u) + (q + std::conj(q) * u)) / ((1.0 - u) * (1.0 - u)) * du;
  };
  m.notes = "closed form";
  return m;
}

NumericMap halfstrip_map(double x0, double half_width, Complex anchor, Complex anchor_image) {
  if (!(half_width > 0.0)) throw DomainError("halfstrip_map: half_width must be positive");
  if (!(anchor.real() > x0) || !(std::abs(anchor.imag()) < half_width))
    throw PreconditionError("halfstrip_map: anchor must be interior to the half-strip");
  if (!(anchor_image.real() > 0.0))
    throw PreconditionError("halfstrip_map: anchor image not in the half-plane");
  const double lambda = 0.5 * kPi / half_width;
  auto base = [x0, lambda](Complex z) { return std::sinh(lambda * (z - x0)); };
  const Complex p = base(anchor);
  NumericMap autom = halfplane_automorphism(p, anchor_image);

  NumericMap m;
  m.forward = [base, autom](Complex z) { return autom.forward(base(z)); };
  m.inverse = [x0, lambda, autom](Complex w) {
    return x0 + std::asinh(autom.inverse(w)) / lambda;
  };
  m.derivative = [x0, lambda, autom, base](Complex z) {
    return autom.derivative(base(z)) * lambda * std::cosh(lambda * (z - x0));
  };
  m.notes = "sinh half-strip map";
  return m;
}

std::vector<LogInterval> normalize_intervals_log(std::vector<LogInterval> in) {
  for (const auto& iv : in) {
    if (!(iv.llo >= -1e-12) || !(iv.lhi >= iv.llo))
      throw DomainError("normalize_intervals: endpoints must satisfy 1 <= lo <= hi");
  }
  std::sort(in.begin(), in.end(),
            [](const LogInterval& a, const LogInterval& b) { return a.llo < b.llo; });
  std::vector<LogInterval> out;
  out.push_back({0.0, std::log(2.0)});
  const double lmax = in.empty() ? 0.0
                                 : std::max_element(in.begin(), in.end(),
                                                    [](const LogInterval& a, const LogInterval& b) {
                                                      return a.lhi < b.lhi;
                                                    })
                                       ->lhi;
  while (out.back().lhi < lmax && out.size() < 4000) {
    const double prev = out.back().lhi;
    double next = 10.0 * prev;
    for (const auto& iv : in)
      if (iv.llo < prev) next = std::max(next, iv.lhi);
    out.push_back({prev, next});
  }
  // one overhang segment so every input has a full successor
  out.push_back({out.back().lhi, 10.0 * out.back().lhi});
  return out;
}

std::vector<Interval> normalize_intervals(std::vector<Interval> in) {
  std::vector<LogInterval> lin;
  lin.reserve(in.size());
  for (const auto& iv : in) {
    if (!(iv.lo >= 1.0)) throw DomainError("normalize_intervals: endpoints must be >= 1");
    lin.push_back({std::log(iv.lo), std::log(iv.hi)});
  }
  std::vector<Interval> out;
  for (const auto& liv : normalize_intervals_log(lin))
    out.push_back({std::exp(liv.llo), std::exp(liv.lhi)});
  return out;
}

double VProfile::rho_at(double t) const { return SpikeProfile{x, rho}.rho_at(t); }

VProfile v_profile(double delta, const std::vector<LogInterval>& normalized) {
  if (!(delta > 0.0) || !(delta < kPi)) throw DomainError("v_profile: need 0 < delta < pi");
  if (normalized.empty()) throw PreconditionError("v_profile: no intervals");
  VProfile p;
  p.delta = delta;
  p.delta_hat = delta / 3.0;
  for (size_t j = 0; j < normalized.size(); ++j) {
    const double ell = normalized[j].lhi - normalized[j].llo;
    if (!(ell > 0.0)) throw PreconditionError("v_profile: degenerate interval");
    if (!p.ell.empty() && ell < p.ell.back() * (1.0 - 1e-12))
      throw PreconditionError("v_profile: hyperbolic lengths must be non-decreasing");
    p.x.push_back(1.0 + p.delta_hat * static_cast<double>(j));
    p.ell.push_back(ell);
    p.rho.push_back(p.delta_hat / (2.0 * ell));
    p.log_beta.push_back(normalized[j].lhi);
    if (p.rho.back() < 1e-280) break;  // profile already far below double range
  }
  if (!(p.rho.front() <= delta))
    throw PreconditionError("v_profile: rho(0) > delta (ell_0 too small)");
  return p;
}

DistBracket v_axis_distance_bracket(const VProfile& profile, double t) {
  if (!(t > 1.0)) throw PreconditionError("v_axis_distance_bracket: need t > 1");
  const SpikeProfile sp = profile.spike();

  // distance from an axis point to the boundary polyline (walls + end edge)
  auto dist_boundary = [&](double xx) {
    double best = xx;  // the closed end edge at x = 0
    // wall segments: (x_j, rho_j) -> (x_{j+1}, rho_{j+1}) and the flat tails
    auto seg = [&](double xa, double ra, double xb, double rb) {
      const Complex a(xa, ra), b(xb, rb), z(xx, 0.0);
      const Complex ab = b - a;
      double s = ((z - a) * std::conj(ab)).real() / std::norm(ab);
      s = std::clamp(s, 0.0, 1.0);
      best = std::min(best, std::abs(z - (a + s * ab)));
    };
    seg(0.0, sp.rho.front(), sp.x.front(), sp.rho.front());
    for (size_t j = 0; j + 1 < sp.x.size(); ++j) seg(sp.x[j], sp.rho[j], sp.x[j + 1], sp.rho[j + 1]);
    seg(sp.x.back(), sp.rho.back(), std::max(t, sp.x.back()) + 10.0, sp.rho.back());
    return best;
  };

  DistBracket b;
  // integrate per profile segment (the integrands are smooth inside segments)
  std::vector<double> knots{1.0};
  for (double xj : sp.x)
    if (xj > 1.0 && xj < t) knots.push_back(xj);
  knots.push_back(t);
  for (size_t k = 0; k + 1 < knots.size(); ++k) {
    b.lower += integrate_adaptive([&](double s) { return 1.0 / (2.0 * sp.rho_at(s)); }, knots[k],
                                  knots[k + 1], 1e-10)
                   .value;
    b.upper += integrate_adaptive([&](double s) { return 2.0 / dist_boundary(s); }, knots[k],
                                  knots[k + 1], 1e-10)
                   .value;
  }
  return b;
}

NumericMap map_v_to_halfplane(const VProfile& profile, double accuracy, double s_max,
                              std::shared_ptr<ProfileStripMap>* chain_out) {
  if (!(accuracy >= 1e-4))
    throw PreconditionError("map_v_to_halfplane: accuracy floor is 1e-4");
  auto chain = std::make_shared<ProfileStripMap>(
      build_profile_strip_map(profile.spike(), accuracy, s_max));

  NumericMap m;
  m.forward = [chain](Complex v) { return std::exp(chain->to_strip(v)); };
  m.inverse = [chain](Complex zeta) { return chain->to_domain(std::log(zeta)); };
  m.derivative = [chain](Complex v) {
    const Complex w = chain->to_strip(v);
    return std::exp(w) * chain->strip_derivative(v);
  };

  // certification: independent boundary probes, displacement in domain units
  const SpikeProfile sp = profile.spike();
  double worst = chain->match_error();
  const double x_hi = std::min(chain->x_max(), sp.x.back() + 5.0);
  for (int i = 1; i < 400; ++i) {
    const double xx = 0.02 + (x_hi - 0.02) * i / 400.0;
    const Complex zb(xx, sp.rho_at(xx));
    const Complex w = chain->to_strip(zb);
    const double strip_err = std::abs(std::abs(w.imag()) - 0.5 * kPi);
    worst = std::max(worst, strip_err * std::abs(chain->domain_derivative(w)));
  }
  m.boundary_accuracy = worst;

  double rt = 0.0;
  for (int i = 1; i < 120; ++i) {
    const double xx = 0.05 + (x_hi - 0.05) * i / 120.0;
    const Complex z(xx, 0.5 * sp.rho_at(xx));
    rt = std::max(rt, std::abs(m.inverse(m.forward(z)) - z));
  }
  m.roundtrip_error = rt;
  m.notes = "psi via strip chain (log coordinates)";
  if (worst > accuracy)
    throw AccuracyError("map_v_to_halfplane: boundary accuracy not reached", worst);
  if (chain_out) *chain_out = chain;
  return m;
}

// ---- hooked tracts ----

HookHeights hook_heights(int n) {
  if (n < 1) throw DomainError("hook_heights: n >= 1 required");
  HookHeights h;
  h.h1 = kPi * (1.0 + 1.0 / (3.0 * n));
  h.h2 = kPi * (1.0 + 1.0 / (3.0 * n + 1.0));
  h.h3 = kPi * (1.0 + 1.0 / (3.0 * n + 2.0));
  h.h4 = kPi * (1.0 + 1.0 / (3.0 * n + 3.0));
  h.w_hook = h.h3 - h.h4;
  h.w_out = h.h1 - h.h2;
  h.m_hook = 0.5 * (h.h3 + h.h4);
  h.m_out = 0.5 * (h.h1 + h.h2);
  return h;
}

namespace {

// cosine-graded samples of the segment (a, b], endpoints clustered
void sampled_edge(std::vector<Complex>& out, Complex a, Complex b, int nseg) {
  nseg = std::max(nseg, 6);
  for (int i = 1; i <= nseg; ++i) {
    const double t = 0.5 * (1.0 - std::cos(kPi * i / nseg));
    out.push_back(a + t * (b - a));
  }
}

int edge_count(double strip_length) {
  return static_cast<int>(std::clamp(std::ceil(strip_length / 0.18), 8.0, 420.0));
}

struct UTurnPolygon {
  std::vector<Complex> samples;  // local coordinates: x relative to a_n
  std::array<EndProbe, 3> left_probes, right_probes;
  Complex probe;
  Complex center;
  double scale;
};

// Truncated U-turn domain of the hooked tract: hook band capped at xi_hc,
// outer band capped at xi_oc; the seam goes on the cap named by seam_on_outer.
UTurnPolygon uturn_polygon(const HookHeights& hh, double xi_hc, double xi_oc,
                           bool seam_on_outer) {
  UTurnPolygon out;
  auto& S = out.samples;
  const double rate_h = kPi / hh.w_hook, rate_o = kPi / hh.w_out;
  const Complex A(0.0, hh.h1), B(0.0, hh.h4);
  const Complex HCb(xi_hc, hh.h4), HCt(xi_hc, hh.h3);
  const Complex E(1.0, hh.h3), F(1.0, hh.h2);
  const Complex OCb(xi_oc, hh.h2), OCt(xi_oc, hh.h1);
  const int n_h = edge_count((xi_hc - 1.0) * rate_h + 6.0);
  const int n_o = edge_count((xi_oc - 1.0) * rate_o + 6.0);
  const int n_wall = edge_count((hh.h1 - hh.h4) * std::max(rate_h, rate_o));
  const int n_conn = edge_count((hh.h2 - hh.h3) * kPi + 4.0);
  const int n_cap = 12;

  if (seam_on_outer) {
    const Complex seam(xi_oc, hh.m_out - 0.25 * hh.w_out);
    S.push_back(seam);
    sampled_edge(S, seam, OCt, n_cap / 2);
    sampled_edge(S, OCt, A, n_o);
    sampled_edge(S, A, B, n_wall);
    sampled_edge(S, B, HCb, n_h);
    sampled_edge(S, HCb, HCt, n_cap);
    sampled_edge(S, HCt, E, n_h);
    sampled_edge(S, E, F, n_conn);
    sampled_edge(S, F, OCb, n_o);
    sampled_edge(S, OCb, seam, n_cap / 2);
    S.pop_back();  // seam already present as sample 0
  } else {
    const Complex seam(xi_hc, hh.m_hook - 0.25 * hh.w_hook);
    S.push_back(seam);
    sampled_edge(S, seam, HCt, n_cap / 2);
    sampled_edge(S, HCt, E, n_h);
    sampled_edge(S, E, F, n_conn);
    sampled_edge(S, F, OCb, n_o);
    sampled_edge(S, OCb, OCt, n_cap);
    sampled_edge(S, OCt, A, n_o);
    sampled_edge(S, A, B, n_wall);
    sampled_edge(S, B, HCb, n_h);
    sampled_edge(S, HCb, seam, n_cap / 2);
    S.pop_back();
  }

  const double depths[3] = {2.2, 3.4, 4.6};
  for (int k = 0; k < 3; ++k) {
    const double xh = xi_hc - depths[k] / rate_h;
    out.left_probes[k] = {Complex(xh, hh.m_hook), -xh * rate_h};
    const double xo = xi_oc - depths[k] / rate_o;
    out.right_probes[k] = {Complex(xo, hh.m_out), xo * rate_o};
  }
  out.probe = Complex(0.5, hh.m_hook);
  out.center = Complex(0.5 * std::max(xi_hc, xi_oc), 0.5 * (hh.h1 + hh.h4));
  out.scale = std::max({0.5 * std::max(xi_hc, xi_oc), hh.h1 - hh.h4, 1.0});
  return out;
}

}  // namespace

HookTractMap::HookTractMap(int n, const HookScales& scales, double accuracy)
    : n_(n), hh_(hook_heights(n)) {
  if (n < 1 || n >= static_cast<int>(scales.ln_a.size()))
    throw PreconditionError("HookTractMap: scale data missing for this n");
  ln_a_ = scales.ln_a[n];
  ln_b_ = scales.ln_b[n];
  if (!std::isfinite(ln_a_) || !std::isfinite(ln_b_))
    throw PreconditionError("HookTractMap: tract scales not representable at all");
  representable_ = ln_b_ < 700.0;
  u_shift_ = u_of_tip_distance(1.0) - 0.5;
  build_junction(accuracy);
  validate(accuracy);
}

double HookTractMap::u_of_tip_distance(double d) const {
  return log_sinh(Complex(d * kPi / hh_.w_hook, 0.0)).real();
}

Complex HookTractMap::tip_offset(Complex z) const {
  const Complex u = 0.5 * z + u_shift_;
  return -(hh_.w_hook / kPi) * asinh_exp(u);
}

Complex HookTractMap::d_tip_offset(Complex z) const {
  const Complex u = 0.5 * z + u_shift_;
  Complex g;
  if (u.real() > 20.0)
    g = 1.0;
  else {
    const Complex eu = std::exp(-u);
    g = 1.0 / std::sqrt(1.0 + eu * eu);
  }
  return -(hh_.w_hook / kPi) * g * 0.5;
}

bool HookTractMap::in_tip_zone(Complex z) const {
  return 0.5 * z.real() + u_shift_ <= junction_u_ - 5.0;
}

void HookTractMap::build_junction(double accuracy) {
  const double rate_h = kPi / hh_.w_hook, rate_o = kPi / hh_.w_out;
  hook_cap_xi_ = 1.0 + 13.0 / rate_h;
  out_cap_xi_ = 1.0 + 13.0 / rate_o;
  const double xi_oH = 1.0 + 8.0 / rate_o;  // outer truncation of the hook-side chunk
  const double xi_hO = 1.0 + 8.0 / rate_h;  // hook truncation of the outer-side chunk

  UTurnPolygon ph = uturn_polygon(hh_, hook_cap_xi_, xi_oH, /*seam_on_outer=*/true);
  chunk_hook_ = std::make_shared<JunctionPiece>(ph.samples, ph.left_probes, ph.right_probes,
                                                ph.probe, ph.center, ph.scale);
  UTurnPolygon po = uturn_polygon(hh_, xi_hO, out_cap_xi_, /*seam_on_outer=*/false);
  chunk_out_ = std::make_shared<JunctionPiece>(po.samples, po.left_probes, po.right_probes,
                                               po.probe, po.center, po.scale);

  // normalize: u_loc = 0 at the reference point on the hook centerline
  const Complex R0(0.5, hh_.m_hook);
  chunk_hook_->add_shift(-chunk_hook_->to_strip(R0));
  const Complex probes[3] = {Complex(0.35, hh_.m_hook), Complex(0.65, hh_.m_hook),
                             Complex(0.5, hh_.m_out)};
  Complex delta = 0.0;
  for (const Complex& p : probes) delta += chunk_hook_->to_strip(p) - chunk_out_->to_strip(p);
  delta /= 3.0;
  chunk_out_->add_shift(delta);
  junction_match_err_ = 0.0;
  for (const Complex& p : probes)
    junction_match_err_ =
        std::max(junction_match_err_, std::abs(chunk_hook_->to_strip(p) - chunk_out_->to_strip(p)));
  chunk_split_ = 0.5 * chunk_hook_->to_strip(Complex(0.5, hh_.m_out)).real();

  // outer-arm affine data from the outer chunk
  {
    const double xi1 = 1.0 + 5.5 / rate_o, xi2 = 1.0 + 7.5 / rate_o;
    const double u1 = chunk_out_->to_strip(Complex(xi1, hh_.m_out)).real();
    const double u2 = chunk_out_->to_strip(Complex(xi2, hh_.m_out)).real();
    outer_rate_ = (u2 - u1) / (xi2 - xi1);
    outer_off_re_ = xi1 - u1 / outer_rate_;  // xi(u) = outer_off_re_ + u / rate
  }

  // junction position in tip coordinates: u_tip(R0) = log sinh((b-a-1/2) pi/w)
  if (representable_ && std::exp(ln_a_) < 1e290) {
    const double a = std::exp(ln_a_), b = std::exp(ln_b_);
    junction_u_ = log_sinh(Complex((b - a - 0.5) * rate_h, 0.0)).real();
    // refine against the chunk itself on the hook arm
    double dsum = 0.0, dmax = 0.0;
    const double xs[3] = {1.0 + 5.5 / rate_h, 1.0 + 6.5 / rate_h, 1.0 + 7.5 / rate_h};
    double ds[3];
    for (int k = 0; k < 3; ++k) {
      const double u_tip = log_sinh(Complex((b - a - xs[k]) * rate_h, 0.0)).real();
      const double u_loc = chunk_hook_->to_strip(Complex(xs[k], hh_.m_hook)).real();
      ds[k] = u_tip - (junction_u_ + u_loc);
      dsum += ds[k];
    }
    junction_u_ += dsum / 3.0;
    for (double d : ds) dmax = std::max(dmax, std::abs(d - dsum / 3.0));
    tip_match_err_ = dmax;
  } else {
    junction_u_ = std::numeric_limits<double>::infinity();
    tip_match_err_ = 0.0;
  }
  (void)accuracy;
}

Complex HookTractMap::junction_to_domain_offset(Complex u_loc) const {
  return u_loc.real() <= chunk_split_ ? chunk_hook_->to_domain(u_loc)
                                      : chunk_out_->to_domain(u_loc);
}

Complex HookTractMap::junction_d_to_domain(Complex u_loc) const {
  return u_loc.real() <= chunk_split_ ? chunk_hook_->d_to_domain(u_loc)
                                      : chunk_out_->d_to_domain(u_loc);
}

Complex HookTractMap::junction_to_strip(Complex offset) const {
  // decide by geometry: past the connector midline and in the outer band ->
  // outer chunk
  const bool outer = offset.imag() > hh_.h2 - 0.25 * hh_.w_out ||
                     (offset.imag() > hh_.h3 && offset.real() > 1.5);
  return outer ? chunk_out_->to_strip(offset) : chunk_hook_->to_strip(offset);
}

Complex HookTractMap::phi(Complex z) const {
  if (!representable_)
    throw DomainError("HookTractMap::phi: tract coordinates exceed double range");
  const Complex u = 0.5 * z + u_shift_;
  const double a = std::exp(ln_a_), b = std::exp(ln_b_);
  if (u.real() <= junction_u_ - 5.0) return Complex(b, hh_.m_hook) + tip_offset(z);
  const Complex u_loc = u - junction_u_;
  const double outer_max = (out_cap_xi_ - 5.0 * hh_.w_out / kPi) * kPi / hh_.w_out;
  if (u_loc.real() <= outer_max - 2.0) return a + junction_to_domain_offset(u_loc);
  return Complex(a + outer_off_re_, hh_.m_out) + u_loc / outer_rate_;
}

Complex HookTractMap::phi_inverse(Complex zt) const {
  if (!representable_)
    throw DomainError("HookTractMap::phi_inverse: tract coordinates exceed double range");
  const double a = std::exp(ln_a_), b = std::exp(ln_b_);
  const Complex off = zt - a;
  const double turn_hi = 1.0 + 8.5 * std::max(hh_.w_hook, hh_.w_out) / kPi;
  Complex u;
  if (off.real() > turn_hi && zt.imag() < hh_.h3) {
    // hook band, tip side
    u = log_sinh((Complex(b, hh_.m_hook) - zt) * (kPi / hh_.w_hook));
  } else if (off.real() > turn_hi) {
    // outer band, affine
    u = junction_u_ + (off - Complex(outer_off_re_, hh_.m_out)) * outer_rate_;
  } else {
    u = junction_u_ + junction_to_strip(off);
  }
  return 2.0 * (u - u_shift_);
}

Complex HookTractMap::dphi(Complex z) const {
  if (!representable_)
    throw DomainError("HookTractMap::dphi: tract coordinates exceed double range");
  const Complex u = 0.5 * z + u_shift_;
  if (u.real() <= junction_u_ - 5.0) return d_tip_offset(z);
  const Complex u_loc = u - junction_u_;
  const double outer_max = (out_cap_xi_ - 5.0 * hh_.w_out / kPi) * kPi / hh_.w_out;
  if (u_loc.real() <= outer_max - 2.0) return 0.5 * junction_d_to_domain(u_loc);
  return Complex(0.5 / outer_rate_, 0.0);
}

Complex HookTractMap::bend_offset(double t) const {
  return junction_to_domain_offset(Complex(t, 0.0));
}

double HookTractMap::bend_order_log_x(double t) const {
  if (std::isfinite(junction_u_)) return std::log(2.0 * (junction_u_ + t - u_shift_));
  // asymptotic form: ln u_J = ln(pi/w) + ln(b - a - 1/2)
  const double ln_uj =
      std::log(kPi / hh_.w_hook) + ln_b_ + std::log1p(-std::exp(ln_a_ - ln_b_));
  return std::log(2.0) + ln_uj;
}

void HookTractMap::validate(double accuracy) {
  const double rate_h = kPi / hh_.w_hook, rate_o = kPi / hh_.w_out;
  double worst = junction_match_err_ * hh_.w_hook / kPi;

  auto probe_edges = [&](const std::shared_ptr<JunctionPiece>& chunk, double hook_lim,
                         double out_lim) {
    auto check = [&](Complex pt) {
      const Complex w = chunk->to_strip(pt);
      const double strip_err = std::abs(std::abs(w.imag()) - 0.5 * kPi);
      worst = std::max(worst, strip_err * std::abs(chunk->d_to_domain(w)));
    };
    const int N = 60;
    for (int i = 1; i < N; ++i) {
      const double th = i / static_cast<double>(N);
      check({th * hook_lim, hh_.h4});                              // hook bottom
      if (1.0 + th * (hook_lim - 1.0) > 1.0) check({1.0 + th * (hook_lim - 1.0), hh_.h3});
      check({th * out_lim, hh_.h1});                               // outer top
      if (1.0 + th * (out_lim - 1.0) > 1.0) check({1.0 + th * (out_lim - 1.0), hh_.h2});
      check({0.0, hh_.h4 + th * (hh_.h1 - hh_.h4)});               // left wall
      check({1.0, hh_.h3 + th * (hh_.h2 - hh_.h3)});               // connector wall
    }
  };
  probe_edges(chunk_hook_, hook_cap_xi_ - 5.0 / rate_h, 1.0 + 3.0 / rate_o);
  probe_edges(chunk_out_, 1.0 + 3.0 / rate_h, out_cap_xi_ - 5.0 / rate_o);
  boundary_accuracy_ = worst;

  // sup |phi'| over |Im z| <= pi/2  (chain coordinate |Im u| <= pi/4)
  double sup = hh_.w_hook / (2.0 * kPi);  // tip-zone bound, attained at Im u = 0
  for (double im : {0.0, 0.25 * kPi, -0.25 * kPi}) {
    for (double t = -4.5; t <= chunk_split_ + 3.0; t += 0.25) {
      sup = std::max(sup, 0.5 * std::abs(junction_d_to_domain(Complex(t, im))));
    }
    for (double t = chunk_split_ - 3.0; t <= 7.5; t += 0.25) {
      sup = std::max(sup, 0.5 * std::abs(chunk_out_->d_to_domain(Complex(t, im))));
    }
  }
  sup = std::max(sup, 0.5 / outer_rate_);
  dphi_sup_mid_ = sup;

  if (boundary_accuracy_ > accuracy)
    throw AccuracyError("HookTractMap: boundary accuracy not reached", boundary_accuracy_);
}

NumericMap hooked_tract_map(int n, double accuracy, const HookScales& scales,
                            std::shared_ptr<HookTractMap>* impl) {
  auto ht = std::make_shared<HookTractMap>(n, scales, accuracy);
  NumericMap m;
  m.forward = [ht](Complex z) { return ht->phi(z); };
  m.inverse = [ht](Complex zt) { return ht->phi_inverse(zt); };
  m.derivative = [ht](Complex z) { return ht->dphi(z); };
  m.boundary_accuracy = ht->boundary_accuracy();
  m.notes = "phi_n: tip half-strip map + zipper U-turn chunks";
  if (ht->coords_representable()) {
    double rt = 0.0;
    for (double x = 0.2; x < 4.0; x += 0.37) {
      for (double y : {-1.2, 0.0, 1.4}) {
        const Complex z(x, y);
        rt = std::max(rt, std::abs(ht->phi_inverse(ht->phi(z)) - z));
      }
    }
    m.roundtrip_error = rt;
  }
  if (impl) *impl = ht;
  return m;
}

HookScales hook_scales(int n_max, double a0) {
  if (a0 < 6.0) throw PreconditionError("hook_scales: the construction requires a >= 6");
  HookScales s;
  const double c = std::log(5.0 / (2.0 * std::sinh(1.0)));
  double la = std::log(a0), lb = std::log(a0 + 2.0);
  for (int k = 0; k <= n_max; ++k) {
    s.ln_a.push_back(la);
    s.ln_b.push_back(lb);
    auto step = [&](double lx) {
      // the next log-scale needs the value itself; beyond double range the
      // sequence is no longer representable even in single-log form
      if (lx > 700.0) return std::numeric_limits<double>::infinity();
      const double x = std::exp(lx);
      if (x > 44.0) return c + (x - 4.0) + std::log1p(-std::exp(-2.0 * (x - 4.0)));
      return std::log(5.0 * std::sinh(x - 4.0) / std::sinh(1.0));
    };
    la = step(la);
    lb = step(lb);
  }
  return s;
}

}  // namespace bouquet
