#pragma once

// =====================================================================
// Path simulation: subordinator paths, their right-continuous inverses,
// driver paths run on an inner clock, the composed process Z = X(E),
// subordinated subordinators, and the local-time clock identity.
// =====================================================================

#include <cmath>
#include <cstddef>
#include <vector>

#include "levyz/asymptotics.hpp"
#include "levyz/grid_path.hpp"
#include "levyz/rng.hpp"
#include "levyz/stable.hpp"

namespace levyz {

struct CompositionSpec {
  StableParams driver;
  SubordinatorParams inner;
  double horizon = 1.0;  // outer time horizon T
  int grid_size = 1024;  // number of grid points, >= 2

  void validate() const {
    driver.validate();
    inner.validate();
    require(horizon > 0.0, "CompositionSpec: horizon must be positive");
    require(grid_size >= 2, "DegenerateGrid: grid_size must be at least 2");
  }
};

// Nondecreasing step path with i.i.d. stable increments on a uniform
// n-point grid over [0, horizon].
inline GridPath simulate_subordinator_path(const SubordinatorParams& params,
                                           double horizon, int n, Philox& rng) {
  params.validate();
  require(horizon > 0.0, "simulate_subordinator_path: horizon must be positive");
  require(n >= 2, "DegenerateGrid: need at least two grid points");
  const double dt = horizon / static_cast<double>(n - 1);
  const double scale = std::pow(params.scale_b * dt, 1.0 / params.beta);
  GridPath p;
  p.kind = PathKind::RightContinuousStep;
  p.times.resize(static_cast<std::size_t>(n));
  p.values.resize(static_cast<std::size_t>(n));
  p.times[0] = 0.0;
  p.values[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    p.times[static_cast<std::size_t>(i)] = dt * static_cast<double>(i);
    p.values[static_cast<std::size_t>(i)] =
        p.values[static_cast<std::size_t>(i) - 1] +
        scale * sample_subordinator_unit(params.beta, rng);
  }
  return p;
}

// E(t) = smallest grid time s with d(s) > t, the step reading of the
// inverse.  Query times must be strictly increasing within [0, sup d).
inline GridPath inverse_path(const GridPath& d,
                             const std::vector<double>& query_times) {
  d.validate();
  require(!query_times.empty(), "inverse_path: no query times");
  for (std::size_t i = 0; i + 1 < query_times.size(); ++i)
    require(query_times[i] < query_times[i + 1],
            "inverse_path: query times must strictly increase");
  for (std::size_t i = 1; i < d.values.size(); ++i)
    require(d.values[i] >= d.values[i - 1],
            "inverse_path: input path must be nondecreasing");
  GridPath e;
  e.kind = PathKind::RightContinuousStep;
  e.times = query_times;
  e.values.resize(query_times.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < query_times.size(); ++i) {
    const double t = query_times[i];
    require(t >= 0.0, "QueryBeyondRange: query before time 0");
    require(t < d.values.back(),
            "QueryBeyondRange: query at or beyond the path supremum");
    while (d.values[j] <= t) ++j;
    e.values[i] = d.times[j];
  }
  return e;
}

// Driver X evaluated along the clock's value points: independent stable
// increments over successive value gaps, starting from 0.
inline GridPath simulate_driver_path(const StableParams& params,
                                     const GridPath& clock, Philox& rng) {
  params.validate();
  clock.validate();
  GridPath x;
  x.kind = PathKind::RightContinuousStep;
  x.times = clock.times;
  x.values.resize(clock.values.size());
  x.values[0] = 0.0;
  for (std::size_t i = 1; i < clock.values.size(); ++i) {
    const double gap = clock.values[i] - clock.values[i - 1];
    require(gap >= 0.0, "simulate_driver_path: clock must be nondecreasing");
    x.values[i] = x.values[i - 1] + sample_stable(params, gap, rng);
  }
  return x;
}

// Inverse clock E on the uniform n-point grid over [0, horizon]: simulate
// D on an inner grid extended until it exceeds the horizon, then invert.
inline GridPath simulate_inverse_path(const SubordinatorParams& params,
                                      double horizon, int n, Philox& rng) {
  params.validate();
  require(horizon > 0.0, "simulate_inverse_path: horizon must be positive");
  require(n >= 2, "DegenerateGrid: need at least two grid points");
  const std::size_t m = static_cast<std::size_t>(n);
  const double ds =
      std::pow(horizon, params.beta) / (params.scale_b * static_cast<double>(m));
  const double inc_scale = std::pow(params.scale_b * ds, 1.0 / params.beta);
  GridPath d;
  d.kind = PathKind::RightContinuousStep;
  d.times.push_back(0.0);
  d.values.push_back(0.0);
  const std::size_t max_steps = 4096 * m;
  std::size_t k = 0;
  while (d.values.back() <= horizon) {
    if (++k > max_steps)
      throw no_convergence(
          "simulate_inverse_path: inner clock failed to cross horizon");
    d.times.push_back(ds * static_cast<double>(k));
    d.values.push_back(d.values.back() +
                       inc_scale * sample_subordinator_unit(params.beta, rng));
  }
  std::vector<double> outer(m);
  const double dt = horizon / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) outer[i] = dt * static_cast<double>(i);
  outer.back() = horizon;
  return inverse_path(d, outer);
}

// Z = X(E) on the uniform outer grid over [0, T]: invert the inner clock,
// then run X over the E-gaps.
inline GridPath compose_z(const CompositionSpec& spec, Philox& rng) {
  spec.validate();
  const GridPath e =
      simulate_inverse_path(spec.inner, spec.horizon, spec.grid_size, rng);
  return simulate_driver_path(spec.driver, e, rng);
}

// One draw of the subordinated subordinator D(sigma(t)), where sigma has
// Laplace transform exp(-t (s/c1)^{1/alpha}); the composition is a stable
// subordinator of index beta/alpha with Laplace exponent c1^{-1/alpha} s^{beta/alpha}.
inline double bochner_sample(double beta, double alpha, double chi, double t,
                             Philox& rng) {
  require(alpha > 1.0 && alpha <= 2.0,
          "IndexOutOfRange: alpha must lie in (1,2]");
  require(beta > 0.0 && beta < 1.0, "IndexOutOfRange: beta must lie in (0,1)");
  require(chi > 0.0, "NonpositiveScale: chi must be positive");
  require(t >= 0.0, "bochner_sample: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const double c1 = derive_constants(alpha, beta, chi).c1;
  const double sigma =
      (std::pow(t, alpha) / c1) * sample_subordinator_unit(1.0 / alpha, rng);
  return std::pow(sigma, 1.0 / beta) * sample_subordinator_unit(beta, rng);
}

struct LocalTimeClock {
  double beta = 0.0;  // inverse-subordinator index 1 - 1/gamma
  double rho = 0.0;   // time-change constant
};

// Clock parameters for reading the local time of an index-gamma driver
// as E(rho t).  The returned rho evaluates the gamma-function formula of
// stone_rho; stone_rho_occupation gives the normalization that the
// running-supremum oracle validates (see local-time experiments).
inline LocalTimeClock local_time_clock(double gamma,
                                       const StableParams& y_params) {
  y_params.validate();
  return {1.0 - 1.0 / gamma, stone_rho(gamma, y_params.chi, y_params.nu)};
}

// Independent oracle for the gamma = 2 local time: by the reflection
// identity, Brownian local time at zero equals in law the running
// supremum of an independent standard Brownian path.
inline GridPath levy_local_time_oracle(double horizon, int n, Philox& rng) {
  require(horizon > 0.0, "levy_local_time_oracle: horizon must be positive");
  require(n >= 2, "DegenerateGrid: need at least two grid points");
  const double dt = horizon / static_cast<double>(n - 1);
  const double sd = std::sqrt(dt);
  GridPath p;
  p.kind = PathKind::RightContinuousStep;
  p.times.resize(static_cast<std::size_t>(n));
  p.values.resize(static_cast<std::size_t>(n));
  p.times[0] = 0.0;
  p.values[0] = 0.0;
  double b = 0.0;
  double sup = 0.0;
  for (int i = 1; i < n; ++i) {
    b += sd * rng.next_gaussian();
    if (b > sup) sup = b;
    p.times[static_cast<std::size_t>(i)] = dt * static_cast<double>(i);
    p.values[static_cast<std::size_t>(i)] = sup;
  }
  return p;
}

}  // namespace levyz
