#include "bouquet/stripchain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bouquet {

namespace {

// Margins in strip units.  A zipper chunk loses roughly a digit of accuracy
// per 2.5 strip-units of polygon length (floating-point feature loss through
// the slit steps), so clusters are tiled with short overlapping chunks
// instead of one long one.
constexpr double kTrust = 8.0;   // clearance a corner needs from exact pieces
constexpr double kLead = 5.0;    // polygon lead beyond a chunk's trusted window
constexpr double kZStep = 5.0;   // trusted span per zipper chunk in a tiling
constexpr double kGapMerge = 2.0 * kTrust + 6.0;

}  // namespace

Complex asinh_exp(Complex u) {
  if (u.real() > 20.0) {
    const Complex e2 = std::exp(-2.0 * u);
    return u + std::log(2.0) + 0.25 * e2;  // next term is O(e^{-4u})
  }
  const Complex q = std::exp(u);
  return std::log(q + std::sqrt(q * q + 1.0));
}

Complex log_sinh(Complex z) {
  if (z.real() > 20.0) return z - std::log(2.0) + std::log1p(-std::exp(-2.0 * z.real()));
  return std::log(std::sinh(z));
}

double SpikeProfile::rho_at(double t) const {
  if (t <= x.front()) return rho.front();
  for (size_t j = 0; j + 1 < x.size(); ++j) {
    if (t <= x[j + 1]) {
      const double f = (t - x[j]) / (x[j + 1] - x[j]);
      return rho[j] + f * (rho[j + 1] - rho[j]);
    }
  }
  return rho.back();
}

double SpikeProfile::slope(size_t seg) const {
  return (rho[seg] - rho[seg + 1]) / (x[seg + 1] - x[seg]);
}

// ---- half-strip end piece ----

Complex HalfstripEndPiece::to_domain(Complex w) const {
  return tip - dir * (width / kPi) * asinh_exp(w - u0);
}

Complex HalfstripEndPiece::to_strip(Complex z) const {
  const Complex zeta = ((tip - z) / dir) * (kPi / width);
  return u0 + log_sinh(zeta);
}

Complex HalfstripEndPiece::d_to_domain(Complex w) const {
  const Complex u = w - u0;
  // d/du asinh(e^u) = 1/sqrt(1 + e^{-2u})
  Complex g;
  if (u.real() > 20.0)
    g = 1.0;
  else {
    const Complex eu = std::exp(-u);
    g = 1.0 / std::sqrt(1.0 + eu * eu);
  }
  return -dir * (width / kPi) * g;
}

// ---- zipper junction piece ----

JunctionPiece::JunctionPiece(std::vector<Complex> samples,
                             const std::array<EndProbe, 3>& left_probes,
                             const std::array<EndProbe, 3>& right_probes,
                             Complex interior_probe, Complex frame_center, double frame_scale)
    : center_(frame_center), scale_(frame_scale) {
  for (Complex& s : samples) s = (s - center_) / scale_;
  const Complex probe = (interior_probe - center_) / scale_;
  zip_ = std::make_shared<ZipperMap>(std::move(samples), probe);
  q_left_ = fit_end_image(left_probes, true);
  q_right_ = fit_end_image(right_probes, false);
  if (!std::isfinite(q_left_) || !std::isfinite(q_right_))
    throw AccuracyError("JunctionPiece: end image not finite", 0.0);
  if (std::abs(q_left_ - q_right_) < 1e-8 * (1.0 + std::abs(q_left_) + std::abs(q_right_)))
    throw AccuracyError("JunctionPiece: end images collapsed", std::abs(q_left_ - q_right_));
  // sigma makes M(w) = sigma (w-qL)/(w-qR) map the upper half-plane onto the
  // lower one, so Log M + i pi/2 lands in {|Im| < pi/2} with the left end at
  // Re -> -inf.
  sigma_ = q_left_ < q_right_ ? 1.0 : -1.0;
}

// Near an end the chunk map behaves like a Moebius function of t = e^{+/-s};
// fitting w(t) = (q + alpha t)/(1 + beta t) through three interior probes and
// evaluating at t = 0 recovers the end's prime-end image.
double JunctionPiece::fit_end_image(const std::array<EndProbe, 3>& probes, bool left) const {
  Complex w[3];
  double t[3];
  double s_ref = probes[0].s;
  for (int k = 0; k < 3; ++k) {
    w[k] = zip_->map((probes[k].z - center_) / scale_);
    t[k] = left ? std::exp(probes[k].s - s_ref) : std::exp(s_ref - probes[k].s);
  }
  // Solve [1, t_k, -t_k w_k] [q, alpha, beta]^T = w_k by Cramer's rule.
  Complex A[3][3], rhs[3];
  for (int k = 0; k < 3; ++k) {
    A[k][0] = 1.0;
    A[k][1] = t[k];
    A[k][2] = -t[k] * w[k];
    rhs[k] = w[k];
  }
  auto det3 = [](Complex m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const Complex den = det3(A);
  Complex Aq[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) Aq[r][c] = (c == 0) ? rhs[r] : A[r][c];
  const Complex q = det3(Aq) / den;
  return q.real();
}

Complex JunctionPiece::to_strip(Complex z) const {
  const Complex w = zip_->map((z - center_) / scale_);
  const Complex m = sigma_ * (w - q_left_) / (w - q_right_);
  return std::log(m) + Complex(0.0, 0.5 * kPi) + shift_;
}

Complex JunctionPiece::to_domain(Complex w) const {
  const Complex m = std::exp(w - shift_ - Complex(0.0, 0.5 * kPi));
  const Complex W = (m * q_right_ - sigma_ * q_left_) / (m - sigma_);
  return center_ + scale_ * zip_->inverse(W);
}

Complex JunctionPiece::d_to_domain(Complex w) const {
  const Complex m = std::exp(w - shift_ - Complex(0.0, 0.5 * kPi));
  const Complex W = (m * q_right_ - sigma_ * q_left_) / (m - sigma_);
  const Complex dWdm = sigma_ * (q_left_ - q_right_) / ((m - sigma_) * (m - sigma_));
  const Complex zloc = zip_->inverse(W);
  return scale_ * dWdm * m / zip_->derivative(zloc);
}

// ---- planner ----

namespace {

// Strip-length estimate along the axis with local rate pi/(2 rho); planning
// only, margins absorb its error.
struct AxisGauge {
  const SpikeProfile* p;
  std::vector<double> s_at_breaks;

  explicit AxisGauge(const SpikeProfile& prof) : p(&prof) {
    s_at_breaks.assign(prof.x.size(), 0.0);
    for (size_t j = 0; j + 1 < prof.x.size(); ++j)
      s_at_breaks[j + 1] = s_at_breaks[j] + seg_length(j, prof.x[j + 1]);
  }

  double seg_length(size_t j, double xe) const {
    const double m = p->slope(j);
    const double r0 = p->rho[j];
    if (m < 1e-12 * r0) return kPi / (2.0 * r0) * (xe - p->x[j]);
    const double re = r0 - m * (xe - p->x[j]);
    return kPi / (2.0 * m) * std::log(r0 / re);
  }

  double s_of(double t) const {
    if (t <= p->x.front()) return kPi / (2.0 * p->rho.front()) * (t - p->x.front());
    for (size_t j = 0; j + 1 < p->x.size(); ++j)
      if (t <= p->x[j + 1]) return s_at_breaks[j] + seg_length(j, t);
    return s_at_breaks.back() + kPi / (2.0 * p->rho.back()) * (t - p->x.back());
  }

  double x_of(double s) const {
    if (s <= 0.0) return p->x.front() + s * 2.0 * p->rho.front() / kPi;
    for (size_t j = 0; j + 1 < p->x.size(); ++j) {
      if (s <= s_at_breaks[j + 1]) {
        const double ds = s - s_at_breaks[j];
        const double m = p->slope(j);
        const double r0 = p->rho[j];
        if (m < 1e-12 * r0) return p->x[j] + ds * 2.0 * r0 / kPi;
        return p->x[j] + (r0 - r0 * std::exp(-2.0 * m * ds / kPi)) / m;
      }
    }
    return p->x.back() + (s - s_at_breaks.back()) * 2.0 * p->rho.back() / kPi;
  }
};

// Cosine-graded points on [0,1] (endpoints included), clustered at both ends.
std::vector<double> graded(int n) {
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = 0.5 * (1.0 - std::cos(kPi * i / n));
  return t;
}

struct PolygonBuild {
  std::vector<Complex> samples;
  Complex left_end, right_end;
  Complex probe;
};

// Boundary walk for a cluster chunk of the spike domain over [xL, xR].  The
// seam (first sample, mapped to infinity) sits at the lower quarter of the
// right cap; the end prime-ends are the cap/closed-edge midpoints.  Wall
// samples are equidistributed in strip length (the interpolating geodesics
// must stay well inside the local width), with geometric refinement at the
// profile corners.
PolygonBuild cluster_polygon(const SpikeProfile& prof, const AxisGauge& gauge, double xL,
                             double xR, double ds) {
  PolygonBuild out;
  auto push = [&](Complex z) { out.samples.push_back(z); };

  const double rhoR = prof.rho_at(xR);
  const double rhoL = prof.rho_at(xL);
  out.left_end = {xL, 0.0};
  out.right_end = {xR, 0.0};

  // Wall x-positions from the strip gauge.
  const double sL = gauge.s_of(xL), sR = gauge.s_of(xR);
  std::vector<double> svals;
  const int nbase = std::max(8, static_cast<int>(std::ceil((sR - sL) / ds)));
  for (int i = 0; i <= nbase; ++i) svals.push_back(sL + (sR - sL) * i / nbase);
  for (double cx : prof.x) {
    if (cx <= xL || cx >= xR) continue;
    const double cs = gauge.s_of(cx);
    for (int j = 0; j <= 10; ++j) {
      const double d = ds * std::pow(0.5, j);
      if (cs + d < sR) svals.push_back(cs + d);
      if (cs - d > sL) svals.push_back(cs - d);
    }
    svals.push_back(cs);
  }
  std::sort(svals.begin(), svals.end());
  svals.erase(std::unique(svals.begin(), svals.end(),
                          [&](double a, double b) { return b - a < 1e-9 * (sR - sL); }),
              svals.end());
  std::vector<double> xvals;
  for (double s : svals) {
    const double xx = gauge.x_of(s);
    if (xx > xL && xx < xR) xvals.push_back(xx);
  }

  // Right cap from the seam upward: -rhoR/2 ... 0 ... +rhoR.
  push({xR, -0.5 * rhoR});
  for (double t : graded(4))
    if (t != 0.0) push({xR, -0.5 * rhoR + t * 0.5 * rhoR});
  for (double t : graded(6))
    if (t != 0.0) push({xR, t * rhoR});

  // Upper wall right-to-left.
  for (size_t i = xvals.size(); i-- > 0;) push({xvals[i], prof.rho_at(xvals[i])});

  // Left edge (cap or the genuine closed end), top to bottom through the
  // exact midpoint.
  for (double t : graded(12)) {
    double y = rhoL - t * 2.0 * rhoL;
    if (std::abs(y) < 1e-12 * rhoL) y = 0.0;
    push({xL, y});
  }

  // Lower wall left-to-right.
  for (double xx : xvals) push({xx, -prof.rho_at(xx)});

  // Right cap from -rhoR up to just below the seam.
  push({xR, -rhoR});
  for (double t : graded(4))
    if (t != 0.0 && t != 1.0) push({xR, -rhoR + t * 0.5 * rhoR});

  out.probe = Complex(0.5 * (xL + xR), 0.0);
  return out;
}

void apply_shift(ProfileStripMap::Piece& p, Complex d) {
  auto ts = p.to_strip;
  auto td = p.to_domain;
  auto dd = p.d_to_domain;
  p.to_strip = [ts, d](Complex z) { return ts(z) + d; };
  p.to_domain = [td, d](Complex w) { return td(w - d); };
  p.d_to_domain = [dd, d](Complex w) { return dd(w - d); };
}

}  // namespace

const ProfileStripMap::Piece& ProfileStripMap::piece_for_strip(double s) const {
  for (const Piece& p : pieces_)
    if (s <= p.s_hi) return p;
  return pieces_.back();
}

const ProfileStripMap::Piece& ProfileStripMap::piece_for_axis(double x) const {
  for (const Piece& p : pieces_)
    if (x <= p.x_hi) return p;
  return pieces_.back();
}

Complex ProfileStripMap::to_strip(Complex z) const { return piece_for_axis(z.real()).to_strip(z); }

Complex ProfileStripMap::to_domain(Complex w) const {
  return piece_for_strip(w.real()).to_domain(w);
}

Complex ProfileStripMap::domain_derivative(Complex w) const {
  return piece_for_strip(w.real()).d_to_domain(w);
}

Complex ProfileStripMap::strip_derivative(Complex z) const {
  const Piece& p = piece_for_axis(z.real());
  return 1.0 / p.d_to_domain(p.to_strip(z));
}

ProfileStripMap build_profile_strip_map(const SpikeProfile& profile, double accuracy,
                                        double s_max) {
  if (profile.x.empty() || profile.x.size() != profile.rho.size())
    throw PreconditionError("build_profile_strip_map: malformed profile");
  for (size_t j = 0; j + 1 < profile.rho.size(); ++j)
    if (profile.rho[j + 1] > profile.rho[j] * (1.0 + 1e-12))
      throw PreconditionError("build_profile_strip_map: profile must be non-increasing");

  AxisGauge gauge(profile);

  struct Corner {
    double x, s;
    size_t idx;
  };
  std::vector<Corner> corners;
  for (size_t j = 0; j < profile.x.size(); ++j) {
    const double m_before = (j == 0) ? 0.0 : profile.slope(j - 1);
    const double m_after = (j + 1 < profile.x.size()) ? profile.slope(j) : 0.0;
    if (std::abs(m_after - m_before) > 1e-13)
      corners.push_back({profile.x[j], gauge.s_of(profile.x[j]), j});
  }

  struct Cluster {
    double s_lo, s_hi;
    double x_first;
    size_t seg_after;
  };
  std::vector<Cluster> clusters;
  {
    size_t i = 0;
    while (i < corners.size() && corners[i].s < s_max + kTrust) {
      size_t j = i;
      while (j + 1 < corners.size() && corners[j + 1].s - corners[j].s < kGapMerge) ++j;
      clusters.push_back({corners[i].s, corners[j].s, corners[i].x, corners[j].idx});
      i = j + 1;
    }
  }

  auto make_halfstrip_piece = [&]() {
    auto hp = std::make_shared<HalfstripEndPiece>();
    hp->tip = Complex(0.0, 0.0);
    hp->dir = Complex(-1.0, 0.0);  // the strip opens toward +x
    hp->width = 2.0 * profile.rho.front();
    hp->u0 = -log_sinh(Complex(profile.x.front() * kPi / hp->width, 0.0)).real();
    ProfileStripMap::Piece p;
    p.kind = "halfstrip-end";
    p.to_strip = [hp](Complex z) { return hp->to_strip(z); };
    p.to_domain = [hp](Complex w) { return hp->to_domain(w); };
    p.d_to_domain = [hp](Complex w) { return hp->d_to_domain(w); };
    return p;
  };

  auto make_flat_piece = [&](size_t seg) {
    const double m = seg + 1 < profile.x.size() ? profile.slope(seg) : 0.0;
    const double r0 = profile.rho[seg];
    const double x0 = profile.x[seg];
    ProfileStripMap::Piece p;
    if (seg + 1 >= profile.x.size() || m < 1e-12 * r0) {
      p.kind = "straight";
      const double rate = kPi / (2.0 * r0);
      const double c = gauge.s_of(x0);
      p.to_strip = [=](Complex z) { return c + rate * (z - x0); };
      p.to_domain = [=](Complex w) { return x0 + (w - c) / rate; };
      p.d_to_domain = [=](Complex) { return Complex(1.0 / rate, 0.0); };
    } else {
      p.kind = "wedge";
      const double xv = x0 + r0 / m;  // wedge vertex
      const double theta = std::atan(m);
      const double rate = kPi / (2.0 * theta);
      const double c = gauge.s_of(x0) + rate * std::log(xv - x0);
      p.to_strip = [=](Complex z) { return c - rate * std::log(xv - z); };
      p.to_domain = [=](Complex w) { return xv - std::exp(-(w - c) / rate); };
      p.d_to_domain = [=](Complex w) { return std::exp(-(w - c) / rate) / rate; };
    }
    return p;
  };

  // --- emit pieces with split positions and matching probes ---
  std::vector<ProfileStripMap::Piece> pieces;
  std::vector<double> split_x;                       // between piece i and i+1
  std::vector<std::array<Complex, 3>> probe_sets;    // probes for each split

  pieces.push_back(make_halfstrip_piece());

  auto make_junction_chunk = [&](double sL, double sR, bool closed_left) {
    const double xL = closed_left ? 0.0 : gauge.x_of(sL);
    const double xR = gauge.x_of(sR);
    PolygonBuild pb = cluster_polygon(profile, gauge, xL, xR, 0.2);

    std::array<EndProbe, 3> left_probes, right_probes;
    const double depths[3] = {2.2, 3.4, 4.6};
    if (closed_left) {
      // exact strip coordinate near the closed end (V is straight there)
      const double width = 2.0 * profile.rho.front();
      const double u0 = -log_sinh(Complex(profile.x.front() * kPi / width, 0.0)).real();
      const double s_deep = gauge.s_of(0.15 * profile.x.front());
      for (int k = 0; k < 3; ++k) {
        const double s = s_deep - depths[k];
        const double xx = (width / kPi) * asinh_exp(Complex(s - u0, 0.0)).real();
        left_probes[k] = {Complex(xx, 0.0), s};
      }
    } else {
      for (int k = 0; k < 3; ++k) {
        const double s = sL + depths[k];
        left_probes[k] = {Complex(gauge.x_of(s), 0.0), s};
      }
    }
    for (int k = 0; k < 3; ++k) {
      const double s = sR - depths[k];
      right_probes[k] = {Complex(gauge.x_of(s), 0.0), s};
    }

    const Complex fc(0.5 * (xL + xR), 0.0);
    const double fs = std::max(0.5 * (xR - xL), profile.rho_at(xL));
    auto jp = std::make_shared<JunctionPiece>(pb.samples, left_probes, right_probes, pb.probe,
                                              fc, fs);
    ProfileStripMap::Piece p;
    p.kind = "junction";
    p.to_strip = [jp](Complex z) { return jp->to_strip(z); };
    p.to_domain = [jp](Complex w) { return jp->to_domain(w); };
    p.d_to_domain = [jp](Complex w) { return jp->d_to_domain(w); };
    return p;
  };

  auto probes_at = [&](double s) {
    return std::array<Complex, 3>{Complex(gauge.x_of(s - 0.7), 0.0),
                                  Complex(gauge.x_of(s), 0.0),
                                  Complex(gauge.x_of(s + 0.7), 0.0)};
  };

  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    const Cluster& cl = clusters[ci];
    // trusted range the cluster's chunk tiling must cover
    double Lt = cl.s_lo - kTrust - 3.0;
    const double Rt = cl.s_hi + kTrust + 3.0;
    const bool closed_left = Lt - kLead <= gauge.s_of(0.0) + 2.0;

    // split with the previous piece
    if (closed_left) {
      const double x0 = profile.x.front();
      split_x.push_back(0.15 * x0);
      probe_sets.push_back({Complex(0.12 * x0, 0.0), Complex(0.15 * x0, 0.0),
                            Complex(0.19 * x0, 0.0)});
      Lt = std::max(Lt, gauge.s_of(0.15 * x0) - 2.0);
    } else {
      split_x.push_back(gauge.x_of(Lt + 1.0));
      probe_sets.push_back(probes_at(Lt + 1.0));
    }

    const int nchunks = std::max(1, static_cast<int>(std::ceil((Rt - Lt) / kZStep)));
    for (int k = 0; k < nchunks; ++k) {
      const double a = Lt + k * (Rt - Lt) / nchunks;
      const double b = Lt + (k + 1) * (Rt - Lt) / nchunks;
      // a chunk whose lead would cross the closed end absorbs it instead
      const bool chunk_closed = a - 1.0 - kLead <= gauge.s_of(0.0) + 2.0;
      pieces.push_back(make_junction_chunk(a - 1.0 - kLead, b + 1.0 + kLead, chunk_closed));
      if (k + 1 < nchunks) {
        split_x.push_back(gauge.x_of(b));
        probe_sets.push_back(probes_at(b));
      }
    }

    // split with the next piece
    split_x.push_back(gauge.x_of(Rt - 1.0));
    probe_sets.push_back(probes_at(Rt - 1.0));
    pieces.push_back(make_flat_piece(cl.seg_after));
  }

  // --- match adjacent pieces on the probe sets ---
  double match_err = 0.0;
  for (size_t i = 1; i < pieces.size(); ++i) {
    ProfileStripMap::Piece& prev = pieces[i - 1];
    ProfileStripMap::Piece& next = pieces[i];
    Complex delta = 0.0;
    for (const Complex& zp : probe_sets[i - 1]) delta += prev.to_strip(zp) - next.to_strip(zp);
    delta /= 3.0;
    apply_shift(next, delta);
    for (const Complex& zp : probe_sets[i - 1])
      match_err = std::max(match_err, std::abs(prev.to_strip(zp) - next.to_strip(zp)));
  }

  // --- global normalization: chi(x[0]) = 0 ---
  {
    const double x0 = profile.x.front();
    size_t pi = 0;
    while (pi < split_x.size() && x0 > split_x[pi]) ++pi;
    Complex chi0 = pieces[pi].to_strip(Complex(x0, 0.0));
    for (auto& p : pieces) apply_shift(p, -chi0);
  }

  // --- windows from the actual maps ---
  for (size_t i = 0; i < pieces.size(); ++i) {
    pieces[i].x_lo = (i == 0) ? 0.0 : split_x[i - 1];
    pieces[i].x_hi = (i + 1 < pieces.size()) ? split_x[i] : 1e308;
    pieces[i].s_lo = (i == 0) ? -1e18 : pieces[i - 1].s_hi;
    pieces[i].s_hi = (i + 1 < pieces.size())
                         ? pieces[i].to_strip(Complex(pieces[i].x_hi, 0.0)).real()
                         : std::max(s_max, 1.0);
  }

  ProfileStripMap map;
  map.pieces_ = std::move(pieces);
  map.s_max_ = s_max;
  map.match_error_ = match_err;
  if (match_err > accuracy)
    throw AccuracyError("build_profile_strip_map: piece matching residual too large", match_err);
  return map;
}

}  // namespace bouquet
