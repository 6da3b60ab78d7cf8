#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bouquet {

using Complex = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Thrown when an argument is outside an operation's mathematical domain
// (e.g. a half-plane point with nonpositive real part).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a documented precondition fails (distinct from DomainError so
// callers can tell "bad value" from "hypothesis of the estimate violated").
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by numerical map construction when the requested accuracy was not
// reached; carries the accuracy that was achieved.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Thrown when a pullback leaves the numeric domain of the queried tract.
class AddressError : public std::runtime_error {
 public:
  AddressError(const std::string& what, int depth)
      : std::runtime_error(what + " at depth " + std::to_string(depth)), depth_(depth) {}
  int depth() const { return depth_; }

 private:
  int depth_;
};

class NotInDomainError : public std::runtime_error {
 public:
  explicit NotInDomainError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(Complex z, const char* who) {
  if (!is_finite(z)) throw DomainError(std::string(who) + ": nonfinite argument");
}

// acosh(1+q) for q >= 0, accurate for small q where std::acosh(1+q) loses digits.
inline double acosh1p(double q) {
  if (q < 0) throw DomainError("acosh1p: negative argument");
  return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

// Extended real: value v when !log, otherwise represents exp(v).  Used to
// follow forward orbits whose real parts overflow double range.
struct XReal {
  double v = 0.0;
  bool is_log = false;

  static XReal of(double x) { return {x, false}; }
  static XReal log_form(double lx) { return {lx, true}; }

  double value_or_inf() const {
    if (!is_log) return v;
    return v > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(v);
  }
  // natural log; requires positivity in plain form
  double log_value() const { return is_log ? v : std::log(v); }

  bool operator<(const XReal& o) const {
    if (!is_log && !o.is_log) return v < o.v;
    return log_value() < o.log_value();
  }
};

inline XReal xreal_scale(const XReal& x, double factor) {
  if (!x.is_log) return XReal::of(x.v * factor);
  return XReal::log_form(x.v + std::log(factor));
}

}  // namespace bouquet
