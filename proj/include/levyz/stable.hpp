#pragma once

// =====================================================================
// Stable-law parameters and exact sampling.
//
// The driver X is the Levy process with
//   E exp(i xi X(t)) = exp(-t |xi|^a (1 + i nu sgn(xi) tan(pi a/2)) / chi),
// sampled exactly by the Chambers-Mallows-Stuck transform.  The clock
// comes from a one-sided beta-stable subordinator D with
//   E exp(-s D(t)) = exp(-t scale_b s^beta),
// sampled exactly by Kanter's representation.
// =====================================================================

#include <cmath>
#include <complex>
#include <cstdint>

#include "levyz/errors.hpp"
#include "levyz/rng.hpp"
#include "levyz/special.hpp"

namespace levyz {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

inline Philox make_rng(const RngStream& s) { return Philox(s.seed, s.stream_id); }

struct StableParams {
  double alpha = 2.0;  // stability index in (0,2], alpha != 1
  double nu = 0.0;     // skew control in [-1,1]; irrelevant when alpha == 2
  double chi = 1.0;    // positive scale denominator

  void validate() const {
    require(alpha > 0.0 && alpha <= 2.0 && alpha != 1.0,
            "IndexOutOfRange: alpha must lie in (0,2] and differ from 1");
    require(nu >= -1.0 && nu <= 1.0, "SkewOutOfRange: nu must lie in [-1,1]");
    require(chi > 0.0, "NonpositiveScale: chi must be positive");
  }
};

inline StableParams validate_params(double alpha, double nu, double chi) {
  StableParams p{alpha, nu, chi};
  p.validate();
  return p;
}

struct SubordinatorParams {
  double beta = 0.5;     // index in (0,1)
  double scale_b = 1.0;  // Laplace-exponent coefficient, s -> scale_b * s^beta

  void validate() const {
    require(beta > 0.0 && beta < 1.0,
            "IndexOutOfRange: beta must lie in (0,1)");
    require(scale_b > 0.0, "NonpositiveScale: scale_b must be positive");
  }
};

// Bridge to the classical (index, skewness, scale) parametrization used
// by the trigonometric sampler: skewness = -nu, scale = chi^{-1/alpha}.
struct CmsSpec {
  double index = 2.0;
  double skewness = 0.0;
  double scale = 1.0;
};

inline CmsSpec to_cms(const StableParams& p) {
  p.validate();
  return {p.alpha, -p.nu, std::pow(p.chi, -1.0 / p.alpha)};
}

inline std::complex<double> char_function(const StableParams& p, double t,
                                          double xi) {
  p.validate();
  require(t >= 0.0, "char_function: t must be nonnegative");
  const double tanv = (p.alpha == 2.0) ? 0.0 : std::tan(0.5 * kPi * p.alpha);
  const double mag = std::pow(std::fabs(xi), p.alpha) * t / p.chi;
  const double sgn = (xi > 0.0) ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
  return std::exp(std::complex<double>(-mag, -mag * p.nu * sgn * tanv));
}

// One draw with E exp(i xi Y) = exp(-|xi|^a (1 - i b sgn(xi) tan(pi a/2)))
// for a in (0,2), a != 1; consumes exactly two uniforms.
inline double sample_stable_unit(double alpha, double skew, Philox& rng) {
  const double v = kPi * (rng.next_double() - 0.5);
  const double w = rng.next_exponential();
  const double tanv = std::tan(0.5 * kPi * alpha);
  const double bb = std::atan(skew * tanv) / alpha;
  const double ss = std::pow(1.0 + skew * skew * tanv * tanv, 0.5 / alpha);
  const double a = alpha * (v + bb);
  return ss * (std::sin(a) / std::pow(std::cos(v), 1.0 / alpha)) *
         std::pow(std::cos(v - a) / w, (1.0 - alpha) / alpha);
}

// One draw of X(t); alpha == 2 dispatches to the exact Gaussian branch
// with variance 2t/chi, avoiding tan(pi) cancellation noise.
inline double sample_stable(const StableParams& p, double t, Philox& rng) {
  p.validate();
  require(t >= 0.0, "sample_stable: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (p.alpha == 2.0) return std::sqrt(2.0 * t / p.chi) * rng.next_gaussian();
  const CmsSpec c = to_cms(p);
  return std::pow(t, 1.0 / p.alpha) * c.scale *
         sample_stable_unit(c.index, c.skewness, rng);
}

// D(1) for the standard beta-stable subordinator (E exp(-sD(t)) = exp(-t s^beta)),
// Kanter's representation:
//   D(1) = sin(beta U) / (sin U)^{1/beta} * (sin((1-beta) U) / W)^{(1-beta)/beta},
// U uniform on (0,pi), W unit exponential.  Evaluated in log space so
// small beta cannot overflow intermediate factors.
inline double sample_subordinator_unit(double beta, Philox& rng) {
  require(beta > 0.0 && beta < 1.0,
          "IndexOutOfRange: subordinator index must lie in (0,1)");
  const double u = kPi * rng.next_double();
  const double w = rng.next_exponential();
  const double log_d = std::log(std::sin(beta * u)) -
                       std::log(std::sin(u)) / beta +
                       (1.0 - beta) / beta *
                           (std::log(std::sin((1.0 - beta) * u)) - std::log(w));
  return std::exp(log_d);
}

// Increment D(t+dt) - D(t), distributed as (scale_b * dt)^{1/beta} D(1).
inline double sample_subordinator_increment(const SubordinatorParams& p,
                                            double dt, Philox& rng) {
  p.validate();
  require(dt >= 0.0, "sample_subordinator_increment: dt must be nonnegative");
  if (dt == 0.0) return 0.0;
  return std::pow(p.scale_b * dt, 1.0 / p.beta) *
         sample_subordinator_unit(p.beta, rng);
}

}  // namespace levyz
