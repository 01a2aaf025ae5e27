#pragma once

// =====================================================================
// Statistical verdicts for Monte Carlo experiments: Kolmogorov-Smirnov
// one- and two-sample tests and mean estimates with normal-theory CIs.
// =====================================================================

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "levyz/errors.hpp"
#include "levyz/special.hpp"

namespace levyz {

struct KSResult {
  double statistic = 0.0;  // sup-distance between the two cdfs
  double p_value = 1.0;    // asymptotic Kolmogorov tail probability
};

struct EstimateWithCI {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double half_width = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;  // confidence level of the interval
  std::size_t n = 0;
  std::uint64_t seed = 0;  // provenance, set by Monte Carlo harnesses
};

inline KSResult ks_one_sample(std::vector<double> samples,
                              const std::function<double(double)>& cdf) {
  require(!samples.empty(), "EmptySample: ks_one_sample needs data");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return {d, kolmogorov_tail(std::sqrt(n) * d)};
}

inline KSResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "EmptySample: ks_two_sample needs data");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  const double n_eff = na * nb / (na + nb);
  return {d, kolmogorov_tail(std::sqrt(n_eff) * d)};
}

inline EstimateWithCI mc_mean_ci(const std::vector<double>& samples,
                                 double level) {
  require(samples.size() >= 2, "InsufficientSamples: need at least two samples");
  require(level > 0.0 && level < 1.0, "mc_mean_ci: level must lie in (0,1)");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double z = normal_inverse_cdf(0.5 * (1.0 + level));
  const double hw = z * sd / std::sqrt(n);
  EstimateWithCI e;
  e.mean = mean;
  e.stddev = sd;
  e.half_width = hw;
  e.lower = mean - hw;
  e.upper = mean + hw;
  e.level = level;
  e.n = samples.size();
  return e;
}

}  // namespace levyz
