#pragma once

// =====================================================================
// Small-ball probabilities for the sup norm on [0,1].
//
// For a standard Brownian driver W and inverse clock E,
//   P(sup |W(E(s))| <= u) = (4/pi) sum_{k>=1} (-1)^{k-1}/(2k-1)
//                            * E_beta(-(2k-1)^2 pi^2 / (8 u^2)),
// obtained by conditioning on E(1); beta = 1 reduces termwise to the
// classical Brownian theta series.  Terms decrease in magnitude, so the
// alternating remainder is bounded by the first omitted term; that
// decrease is validated at runtime rather than assumed.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <vector>

#include "levyz/errors.hpp"
#include "levyz/mittag_leffler.hpp"
#include "levyz/special.hpp"
#include "levyz/stats.hpp"

namespace levyz {

struct SmallBallSeriesConfig {
  int k_max = 20000;            // term cap
  double remainder_tol = 1e-10;  // alternating-series truncation target

  void validate() const {
    require(k_max > 0, "SmallBallSeriesConfig: k_max must be positive");
    require(remainder_tol > 0.0 && remainder_tol < 1.0,
            "SmallBallSeriesConfig: remainder_tol must lie in (0,1)");
  }
};

// P(sup_{0<=s<=1} |W(s)| <= u) for a standard Brownian motion W.
inline double chung_smallball_bm(double u, double remainder_tol = 1e-14) {
  require(u > 0.0, "chung_smallball_bm: u must be positive");
  const double c = kPi * kPi / (8.0 * u * u);
  double sum = 0.0;
  for (int k = 1;; ++k) {
    const double m = 2.0 * k - 1.0;
    const double term = std::exp(-m * m * c) / m;
    sum += (k % 2 == 1) ? term : -term;
    if (term <= remainder_tol) break;
    if (k > 2000000)
      throw no_convergence("NoConvergence: theta series budget exhausted");
  }
  const double p = 4.0 / kPi * sum;
  return p > 1.0 ? 1.0 : p;
}

// P(sup_{0<=s<=1} |W(E(s))| <= u); beta = 1 is the Brownian reduction.
inline double smallball_Z_series(double beta, double u,
                                 const SmallBallSeriesConfig& cfg =
                                     SmallBallSeriesConfig{}) {
  cfg.validate();
  require(beta > 0.0 && beta <= 1.0,
          "smallball_Z_series: beta must lie in (0,1]");
  require(u > 0.0, "smallball_Z_series: u must be positive");
  const double c = kPi * kPi / (8.0 * u * u);
  double sum = 0.0;
  double prev = 2.0;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const double m = 2.0 * k - 1.0;
    const double term = ml_neg(beta, m * m * c) / m;
    if (term >= prev)
      throw no_convergence(
          "NoConvergence: small-ball terms stopped decreasing");
    prev = term;
    sum += (k % 2 == 1) ? term : -term;
    if (term <= cfg.remainder_tol) {
      const double p = 4.0 / kPi * sum;
      return p > 1.0 ? 1.0 : p;
    }
  }
  throw no_convergence("NoConvergence: small-ball series budget exhausted");
}

// Limit of u^{-2} P(sup |W(E(s))| <= u) as u -> 0:
//   (32 Gamma(beta) sin(beta pi) / pi^4) * sum_{k>=1} (-1)^{k-1}/(2k-1)^3,
// summed in reverse, seeded with half of the first omitted term so the
// truncation error drops from one alternating tail (~1e-12) to ~4e-16.
inline double smallball_Z_limit_constant(double beta) {
  require(beta > 0.0 && beta < 1.0,
          "smallball_Z_limit_constant: beta must lie in (0,1)");
  double s = 0.5 / (8001.0 * 8001.0 * 8001.0);
  for (int k = 4000; k >= 1; --k) {
    const double m = 2.0 * k - 1.0;
    s += ((k % 2 == 1) ? 1.0 : -1.0) / (m * m * m);
  }
  return 32.0 * std::tgamma(beta) * std::sin(beta * kPi) /
         (kPi * kPi * kPi * kPi) * s;
}

// Bracketing of P(sup |U(E(s))| <= u) for a self-similar driver U of
// index H, from the conditioning bound with theta = 1/H:
//   c_lo E_beta(-k(1+nu) u^{-theta}) <= P <= c_hi E_beta(-k(1-nu) u^{-theta}).
inline std::pair<double, double> selfsimilar_envelope(double H, double k_const,
                                                      double nu_slack,
                                                      double beta, double u,
                                                      double c_lo,
                                                      double c_hi) {
  require(H > 0.0 && H < 1.0, "selfsimilar_envelope: H must lie in (0,1)");
  require(k_const > 0.0, "selfsimilar_envelope: k_const must be positive");
  require(nu_slack > 0.0 && nu_slack < 1.0,
          "selfsimilar_envelope: nu_slack must lie in (0,1)");
  require(beta > 0.0 && beta < 1.0,
          "selfsimilar_envelope: beta must lie in (0,1)");
  require(u > 0.0, "selfsimilar_envelope: u must be positive");
  require(c_lo > 0.0 && c_hi >= c_lo,
          "selfsimilar_envelope: need 0 < c_lo <= c_hi");
  const double theta = 1.0 / H;
  const double arg = k_const * std::pow(u, -theta);
  return {c_lo * ml_neg(beta, (1.0 + nu_slack) * arg),
          c_hi * ml_neg(beta, (1.0 - nu_slack) * arg)};
}

}  // namespace levyz
