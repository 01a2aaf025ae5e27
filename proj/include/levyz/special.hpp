#pragma once

// =====================================================================
// Small special-function kit: normal pdf/cdf and inverse cdf, and the
// Kolmogorov-Smirnov limiting tail distribution.
// =====================================================================

#include <cmath>

#include "levyz/errors.hpp"

namespace levyz {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double normal_pdf(double x) {
  return 0.3989422804014326779399460599343819 * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

// Inverse standard normal cdf: Acklam's rational approximation followed
// by one Halley step, giving near machine precision on (0,1).
inline double normal_inverse_cdf(double p) {
  require(p > 0.0 && p < 1.0, "normal_inverse_cdf: p must lie in (0,1)");
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * 2.506628274631000502415765284811 * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

// P(sup_t |B_bridge(t)| > x) in the Kolmogorov-Smirnov limit:
// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
inline double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) {
    // Dual theta series, accurate for small x.
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double m = 2.0 * k - 1.0;
      s += std::exp(-m * m * kPi * kPi / (8.0 * x * x));
    }
    const double cdf = std::sqrt(2.0 * kPi) / x * s;
    return 1.0 - cdf;
  }
  double s = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  const double q = 2.0 * s;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

}  // namespace levyz
