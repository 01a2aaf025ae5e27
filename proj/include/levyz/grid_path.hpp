#pragma once

// =====================================================================
// Sampled paths on strictly increasing time grids.
// =====================================================================

#include <algorithm>
#include <cstddef>
#include <vector>

#include "levyz/errors.hpp"

namespace levyz {

enum class PathKind { RightContinuousStep, PiecewiseLinear };

struct GridPath {
  std::vector<double> times;
  std::vector<double> values;
  PathKind kind = PathKind::RightContinuousStep;

  std::size_t size() const { return times.size(); }

  void validate() const {
    require(times.size() == values.size() && !times.empty(),
            "GridPath: times and values must be nonempty and equal length");
    for (std::size_t i = 1; i < times.size(); ++i)
      require(times[i] > times[i - 1], "GridPath: times must strictly increase");
  }
};

// Evaluate the path at time t under its interpolation convention.
// Queries outside [times.front(), times.back()] are hard errors,
// never extrapolated.
inline double value_at(const GridPath& p, double t) {
  require(!p.times.empty(), "value_at: empty path");
  require(t >= p.times.front() && t <= p.times.back(),
          "QueryBeyondRange: t outside the sampled window");
  const auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - p.times.begin());
  if (hi == 0) return p.values.front();
  if (hi == p.times.size()) return p.values.back();
  if (p.kind == PathKind::RightContinuousStep) return p.values[hi - 1];
  const double t0 = p.times[hi - 1], t1 = p.times[hi];
  const double w = (t - t0) / (t1 - t0);
  return p.values[hi - 1] * (1.0 - w) + p.values[hi] * w;
}

// Pointwise prefix maximum; same grid and kind, nondecreasing values.
inline GridPath running_sup(const GridPath& p) {
  p.validate();
  GridPath out = p;
  for (std::size_t i = 1; i < out.values.size(); ++i)
    out.values[i] = std::max(out.values[i], out.values[i - 1]);
  return out;
}

}  // namespace levyz
