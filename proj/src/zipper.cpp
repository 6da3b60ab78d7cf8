#include "bouquet/zipper.hpp"
#include <limits>

#include <algorithm>
#include <cmath>

namespace bouquet {

namespace {

// Elementary geodesic step in the upper half-plane: unzips the hyperbolic
// geodesic from the boundary point 0 to the interior point d.  Decomposes as
// a real Moebius w -> w/(1 - w/(2s)) (which sends the geodesic circle to the
// vertical segment [0, ih]) followed by w -> i sqrt(-(w^2 + h^2)).
struct StepParams {
  double s;
  double h;
  bool has_moebius;
  bool skip;
};

StepParams make_step(Complex d) {
  StepParams p{0.0, 0.0, false, false};
  const double scale = std::abs(d);
  if (!(scale > 0.0) || d.imag() <= 1e-13 * scale) {
    p.skip = true;  // degenerate: point already on the laid boundary
    return p;
  }
  if (std::abs(d.real()) > 1e-15 * scale) {
    p.s = std::norm(d) / (2.0 * d.real());
    p.has_moebius = true;
    p.h = std::norm(d) / d.imag();
  } else {
    p.h = d.imag();
  }
  return p;
}

// The branch of sqrt(u^2 + h^2) that is continuous on H minus the vertical
// slit (0, ih] and behaves like u at infinity: u * psqrt(1 + (h/u)^2).  The
// principal-branch wrap across arg(u) = pi/2 splits the two slit shores onto
// +/-h exactly as the slit map requires.
inline Complex slit_sqrt(Complex u, double h) {
  if (u == Complex(0.0, 0.0)) return Complex(h, 0.0);
  const Complex q = h / u;
  return u * std::sqrt(1.0 + q * q);
}

// Branch of sqrt(v^2 - h^2) continuous on H (cuts only on the real segment
// [-h, h]): v * psqrt(1 - (h/v)^2).
inline Complex unslit_sqrt(Complex v, double h) {
  if (v == Complex(0.0, 0.0)) return Complex(0.0, h);
  const Complex q = h / v;
  return v * std::sqrt(1.0 - q * q);
}

inline Complex step_forward(Complex w, const StepParams& p) {
  if (p.skip) return w;
  Complex u = w;
  if (p.has_moebius) u = w / (1.0 - w / (2.0 * p.s));
  return slit_sqrt(u, p.h);
}

inline Complex step_inverse(Complex v, const StepParams& p) {
  if (p.skip) return v;
  Complex u = unslit_sqrt(v, p.h);
  if (p.has_moebius) u = u / (1.0 + u / (2.0 * p.s));
  return u;
}

inline Complex step_derivative(Complex w, const StepParams& p) {
  if (p.skip) return Complex(1.0, 0.0);
  Complex u = w, du = Complex(1.0, 0.0);
  if (p.has_moebius) {
    const Complex den = 1.0 - w / (2.0 * p.s);
    u = w / den;
    du = 1.0 / (den * den);
  }
  const Complex g = slit_sqrt(u, p.h);
  return (u / g) * du;
}

}  // namespace

ZipperMap::ZipperMap(std::vector<Complex> boundary_samples, Complex interior_probe) {
  if (boundary_samples.size() < 8)
    throw PreconditionError("ZipperMap: need at least 8 boundary samples");
  // Drop consecutive duplicates.
  samples_.reserve(boundary_samples.size());
  for (Complex z : boundary_samples) {
    if (samples_.empty() || std::abs(z - samples_.back()) >
                                1e-14 * (1.0 + std::abs(z) + std::abs(samples_.back())))
      samples_.push_back(z);
  }
  if (std::abs(samples_.front() - samples_.back()) <
      1e-14 * (1.0 + std::abs(samples_.front())))
    samples_.pop_back();

  for (int attempt = 0; attempt < 2; ++attempt) {
    z0_ = samples_[0];
    z1_ = samples_[1];
    steps_.clear();
    const size_t n = samples_.size();
    std::vector<Complex> cur(n);
    for (size_t k = 2; k < n; ++k) cur[k] = apply_initial(samples_[k]);
    Complex img_probe = apply_initial(interior_probe);

    bool healthy = true;
    for (size_t k = 2; k < n; ++k) {
      StepParams p = make_step(cur[k]);
      steps_.push_back({p.skip ? 0.0 : p.s, p.skip ? 0.0 : p.h, p.has_moebius});
      if (p.skip) continue;
      for (size_t j = k + 1; j < n; ++j) cur[j] = step_forward(cur[j], p);
      img_probe = step_forward(img_probe, p);
      if (!(img_probe.imag() > 0.0)) {
        healthy = false;
        break;
      }
    }
    // The probe must stay in the upper half-plane and round-trip; a collapsed
    // or folded map fails this.
    if (healthy && img_probe.imag() > 0.0) {
      const Complex back = inverse(map(interior_probe));
      const double scale = 1.0 + std::abs(interior_probe);
      if (std::abs(back - interior_probe) < 1e-6 * scale) {
        // Images of the original samples (sample 0 is the point at infinity).
        sample_images_.resize(n);
        sample_images_[0] = std::numeric_limits<double>::infinity();
        for (size_t k = 1; k < n; ++k) sample_images_[k] = map(samples_[k]).real();
        return;
      }
    }
    // Wrong boundary orientation: walk the samples the other way.
    std::reverse(samples_.begin() + 1, samples_.end());
  }
  throw AccuracyError("ZipperMap: orientation probe left the half-plane", 0.0);
}

double ZipperMap::image_of_sample(Complex z) const {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < samples_.size(); ++k) {
    const double d = std::abs(samples_[k] - z);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return sample_images_[best];
}

Complex ZipperMap::apply_initial(Complex z) const {
  return Complex(0.0, 1.0) * std::sqrt((z - z1_) / (z - z0_));
}

Complex ZipperMap::apply_initial_derivative(Complex z) const {
  const Complex m = (z - z1_) / (z - z0_);
  const Complex dm = (z1_ - z0_) / ((z - z0_) * (z - z0_));
  return Complex(0.0, 1.0) * dm / (2.0 * std::sqrt(m));
}

Complex ZipperMap::map(Complex z) const {
  Complex w = apply_initial(z);
  for (const Step& st : steps_) {
    StepParams p{st.s, st.h, st.has_moebius, st.h == 0.0};
    w = step_forward(w, p);
  }
  return w;
}

Complex ZipperMap::inverse(Complex w) const {
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    StepParams p{it->s, it->h, it->has_moebius, it->h == 0.0};
    w = step_inverse(w, p);
  }
  // invert w = i sqrt((z - z1)/(z - z0)):  z = (z1 + z0 w^2) / (1 + w^2)
  const Complex w2 = w * w;
  return (z1_ + z0_ * w2) / (1.0 + w2);
}

Complex ZipperMap::derivative(Complex z) const {
  Complex w = apply_initial(z);
  Complex dw = apply_initial_derivative(z);
  for (const Step& st : steps_) {
    StepParams p{st.s, st.h, st.has_moebius, st.h == 0.0};
    dw *= step_derivative(w, p);
    w = step_forward(w, p);
  }
  return dw;
}

}  // namespace bouquet
