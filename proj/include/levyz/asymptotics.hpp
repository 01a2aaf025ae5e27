#pragma once

// =====================================================================
// Closed-form growth constants (iterated-logarithm envelopes, modulus of
// continuity, local-time scaling) and the empirical path statistics that
// probe them.
//
// Two limsup constants are exposed and labeled rather than silently
// arbitrated: kappa_paper = mu^{(alpha-beta)/alpha} and kappa_consistent
// = mu^{-(alpha-beta)/alpha}.  The second is the image of the integral
// tests' critical parameter (see integral_tests consistency_check); the
// Monte Carlo experiments report which one the data favors.
// =====================================================================

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "levyz/errors.hpp"
#include "levyz/grid_path.hpp"
#include "levyz/special.hpp"

namespace levyz {

struct DerivedConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double chi = 0.0;
  double theta = 0.0;   // beta/alpha
  double lambda = 0.0;  // beta/(alpha-beta)
  double c1 = 0.0;      // chi^{-1} sec(pi - pi alpha/2)
  double b = 0.0;       // c1^{-1/alpha}
  double m = 0.0;       // b theta / Gamma(1-theta)
  double mu = 0.0;      // (Gamma(1-theta) m)^{alpha/(alpha-beta)} (alpha-beta)/beta
  double c_liminf = 0.0;          // mu^{1/lambda}
  double kappa_paper = 0.0;       // c_liminf^{beta/alpha} = mu^{1-theta}
  double kappa_consistent = 0.0;  // mu^{-(1-theta)}
  double c2 = 0.0;                // (1-theta) theta^{theta/(1-theta)}
  double d = 0.0;                 // (alpha c2 / beta)^{1-theta}
};

namespace detail {

inline void check_close(double x, double y, const char* what) {
  const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  if (std::fabs(x - y) > 1e-12 * scale)
    throw domain_error(std::string("derive_constants: identity failed: ") +
                       what);
}

inline double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

}  // namespace detail

inline DerivedConstants derive_constants(double alpha, double beta,
                                         double chi) {
  require(alpha > 1.0 && alpha <= 2.0,
          "IndexOutOfRange: alpha must lie in (1,2]");
  require(beta > 0.0 && beta < 1.0, "IndexOutOfRange: beta must lie in (0,1)");
  require(chi > 0.0, "NonpositiveScale: chi must be positive");
  DerivedConstants k;
  k.alpha = alpha;
  k.beta = beta;
  k.chi = chi;
  k.theta = beta / alpha;
  k.lambda = beta / (alpha - beta);
  detail::check_close(k.lambda, k.theta / (1.0 - k.theta), "lambda");
  k.c1 = 1.0 / (chi * std::cos(kPi * (2.0 - alpha) / 2.0));
  k.b = std::pow(k.c1, -1.0 / alpha);
  k.m = k.b * k.theta / std::tgamma(1.0 - k.theta);
  detail::check_close(k.m * std::tgamma(1.0 - k.theta), k.b * k.theta,
                      "m Gamma(1-theta) = b theta");
  k.mu = std::pow(std::tgamma(1.0 - k.theta) * k.m, alpha / (alpha - beta)) *
         (alpha - beta) / beta;
  detail::check_close(
      k.mu, std::pow(k.b * k.theta, 1.0 / (1.0 - k.theta)) *
                (1.0 - k.theta) / k.theta,
      "mu = (b theta)^{1/(1-theta)} (1-theta)/theta");
  k.c_liminf = std::pow(k.mu, 1.0 / k.lambda);
  k.kappa_paper = std::pow(k.c_liminf, k.theta);
  k.kappa_consistent = std::pow(k.mu, -(1.0 - k.theta));
  detail::check_close(k.kappa_paper, std::pow(k.mu, 1.0 - k.theta),
                      "kappa_paper = mu^{1-theta}");
  detail::check_close(k.kappa_paper * k.kappa_consistent, 1.0,
                      "kappa_paper * kappa_consistent = 1");
  k.c2 = (1.0 - k.theta) * std::pow(k.theta, k.theta / (1.0 - k.theta));
  detail::check_close(
      k.c2, (1.0 - beta / alpha) * std::pow(beta / alpha, beta / (alpha - beta)),
      "c2 equivalent forms");
  k.d = std::pow(alpha * k.c2 / beta, 1.0 - k.theta);
  return k;
}

// t^{alpha/beta} (log|log t|)^{(beta-alpha)/beta}; defined for |log t| > 1.
inline double fristedt_normalizer(double t, double alpha, double beta) {
  require(t > 0.0, "fristedt_normalizer: t must be positive");
  const double lt = std::log(t);
  require(std::fabs(lt) > 1.0,
          "DomainError: need |log t| > 1 so log|log t| is positive");
  const double ll = std::log(std::fabs(lt));
  return std::pow(t, alpha / beta) * std::pow(ll, (beta - alpha) / beta);
}

// t^{beta/alpha} (log|log t|)^{(alpha-beta)/alpha}; defined for |log t| > 1.
inline double lil_normalizer(double t, double alpha, double beta) {
  require(t > 0.0, "lil_normalizer: t must be positive");
  const double lt = std::log(t);
  require(std::fabs(lt) > 1.0,
          "DomainError: need |log t| > 1 so log|log t| is positive");
  const double ll = std::log(std::fabs(lt));
  return std::pow(t, beta / alpha) * std::pow(ll, (alpha - beta) / alpha);
}

// Both candidate limsup constants, labeled: {paper, breiman-consistent}.
inline std::pair<double, double> lil_limsup_constants(
    const DerivedConstants& dc) {
  return {dc.kappa_paper, dc.kappa_consistent};
}

namespace detail {

inline double skew_re_term(double gamma, double nu) {
  const double tanv = (gamma == 2.0) ? 0.0 : std::tan(0.5 * kPi * gamma);
  const double r = std::sqrt(1.0 + nu * nu * tanv * tanv);
  const double phi = std::atan(nu * tanv);
  return std::pow(r, -1.0 / gamma) * std::cos(phi / gamma);
}

}  // namespace detail

// rho solving rho^{-(1-1/gamma)} =
//   pi^{-1} Gamma(1+1/gamma) Gamma(1-1/gamma) chi^{-1} Re{(1+i nu tan(pi gamma/2))^{-1/gamma}}.
// At gamma = 2 this reduces to 4 chi^2 for every nu.
inline double stone_rho(double gamma, double chi, double nu) {
  require(gamma > 1.0 && gamma <= 2.0,
          "DomainError: gamma must lie in (1,2]");
  require(chi > 0.0, "NonpositiveScale: chi must be positive");
  require(nu >= -1.0 && nu <= 1.0, "SkewOutOfRange: nu must lie in [-1,1]");
  const double re = detail::skew_re_term(gamma, nu);
  require(re > 0.0, "DegenerateRe: nonpositive real part");
  const double rhs = std::tgamma(1.0 + 1.0 / gamma) *
                     std::tgamma(1.0 - 1.0 / gamma) * re / (kPi * chi);
  return std::pow(rhs, -gamma / (gamma - 1.0));
}

// Time-change constant derived from the occupation density of the driver:
// the inverse local time is a subordinator with Laplace exponent
// x q^{1-1/gamma} / (u_q-coefficient), which identifies L(t) = E(rho t) with
//   rho = [Gamma(1+1/gamma) Gamma(1-1/gamma) chi^{1/gamma} Re{...} / pi]^{gamma/(gamma-1)}.
// This is the normalization the running-supremum oracle validates; it
// differs from stone_rho in both the chi power and the inversion
// direction (at gamma = 2, chi = 2 it gives 1/2 where stone_rho gives 16).
inline double stone_rho_occupation(double gamma, double chi, double nu) {
  require(gamma > 1.0 && gamma <= 2.0,
          "DomainError: gamma must lie in (1,2]");
  require(chi > 0.0, "NonpositiveScale: chi must be positive");
  require(nu >= -1.0 && nu <= 1.0, "SkewOutOfRange: nu must lie in [-1,1]");
  const double re = detail::skew_re_term(gamma, nu);
  require(re > 0.0, "DegenerateRe: nonpositive real part");
  const double rhs = std::tgamma(1.0 + 1.0 / gamma) *
                     std::tgamma(1.0 - 1.0 / gamma) *
                     std::pow(chi, 1.0 / gamma) * re / kPi;
  return std::pow(rhs, gamma / (gamma - 1.0));
}

// Modulus-of-continuity constants: c2 = (1-theta) theta^{theta/(1-theta)}
// and d = (alpha c2 / beta)^{1-theta}, theta = beta/alpha.
inline std::pair<double, double> modulus_constants(double alpha, double beta) {
  const DerivedConstants dc = derive_constants(alpha, beta, 1.0);
  return {dc.c2, dc.d};
}

struct EmpiricalStatSummary {
  std::vector<double> stats;  // one statistic per path
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
};

namespace detail {

inline EmpiricalStatSummary summarize(std::vector<double> stats) {
  EmpiricalStatSummary s;
  s.median = quantile(stats, 0.5);
  s.q10 = quantile(stats, 0.1);
  s.q90 = quantile(stats, 0.9);
  s.stats = std::move(stats);
  return s;
}

}  // namespace detail

// Per-path max of Z(t) / lil_normalizer(t) over the path's sample times
// inside [t_lo, t_hi], plus summary quantiles.
inline EmpiricalStatSummary empirical_limsup_stat(
    const std::vector<GridPath>& paths, double t_lo, double t_hi, double alpha,
    double beta) {
  require(t_lo > std::exp(1.0), "DomainError: t_lo must exceed e");
  require(t_hi >= t_lo, "DomainError: t_hi must be at least t_lo");
  require(!paths.empty(), "EmptySample: no paths");
  std::vector<double> stats;
  stats.reserve(paths.size());
  for (const GridPath& p : paths) {
    double best = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < p.times.size(); ++i) {
      const double t = p.times[i];
      if (t < t_lo || t > t_hi) continue;
      const double r = p.values[i] / lil_normalizer(t, alpha, beta);
      if (!seen || r > best) best = r;
      seen = true;
    }
    require(seen, "DomainError: path has no sample times inside [t_lo, t_hi]");
    stats.push_back(best);
  }
  return detail::summarize(std::move(stats));
}

// Per-path min of (D o sigma)(t) / fristedt_normalizer(t) over the path's
// sample times inside [t_lo, t_hi], plus summary quantiles.
inline EmpiricalStatSummary empirical_liminf_subordinator_stat(
    const std::vector<GridPath>& paths, double t_lo, double t_hi, double alpha,
    double beta) {
  require(t_lo > std::exp(1.0), "DomainError: t_lo must exceed e");
  require(t_hi >= t_lo, "DomainError: t_hi must be at least t_lo");
  require(!paths.empty(), "EmptySample: no paths");
  std::vector<double> stats;
  stats.reserve(paths.size());
  for (const GridPath& p : paths) {
    double best = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < p.times.size(); ++i) {
      const double t = p.times[i];
      if (t < t_lo || t > t_hi) continue;
      const double r = p.values[i] / fristedt_normalizer(t, alpha, beta);
      if (!seen || r < best) best = r;
      seen = true;
    }
    require(seen, "DomainError: path has no sample times inside [t_lo, t_hi]");
    stats.push_back(best);
  }
  return detail::summarize(std::move(stats));
}

// Discrete modulus statistic of a running-supremum path on [0, T]:
//   sup over grid times t and h in h_grid of
//   (Zbar(t+h) - Zbar(t)) / (h^{beta/alpha} (log 1/h)^{(alpha-beta)/alpha}).
inline double empirical_modulus_stat(const GridPath& zbar,
                                     const std::vector<double>& h_grid,
                                     double alpha, double beta) {
  zbar.validate();
  require(!h_grid.empty(), "DomainError: empty h grid");
  const double t_end = zbar.times.back();
  double best = 0.0;
  for (const double h : h_grid) {
    require(h > 0.0 && h < std::exp(-1.0),
            "DomainError: h must lie in (0, e^{-1})");
    const double denom = std::pow(h, beta / alpha) *
                         std::pow(std::log(1.0 / h), (alpha - beta) / alpha);
    for (std::size_t i = 0; i < zbar.times.size(); ++i) {
      const double t = zbar.times[i];
      if (t + h > t_end) break;
      const double inc = value_at(zbar, t + h) - zbar.values[i];
      const double r = inc / denom;
      if (r > best) best = r;
    }
  }
  return best;
}

}  // namespace levyz
