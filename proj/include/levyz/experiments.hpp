#pragma once

// =====================================================================
// Monte Carlo experiment drivers shared by the CLI and the acceptance
// suite.  Every experiment draws path i from Philox stream
// (rng.stream_id + offset + i), so results depend only on (seed, stream)
// and never on the worker count; per-path outputs are written into
// index-addressed buffers and reduced serially.
// =====================================================================

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "levyz/asymptotics.hpp"
#include "levyz/errors.hpp"
#include "levyz/grid_path.hpp"
#include "levyz/mittag_leffler.hpp"
#include "levyz/pathsim.hpp"
#include "levyz/rng.hpp"
#include "levyz/smallball.hpp"
#include "levyz/stable.hpp"
#include "levyz/stats.hpp"

namespace levyz {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEVYZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096)
      return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static partition of [0, n) into contiguous blocks, one per worker.
template <typename Body>
void parallel_for_paths(std::size_t n, int threads, Body&& body) {
  if (n == 0) return;
  const std::size_t t =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------
// Small-ball Monte Carlo.  sup_{t <= T} |Z(t)| equals sup_{s <= E(T)} |X(s)|
// because E is continuous, so each path draws E(T) from its exact
// marginal (T^beta D(1)^{-beta} / scale_b) and monitors X on a uniform
// grid of [0, E(T)] with grid_size cells.  The companion estimate reuses
// the even-indexed half of the same grid, giving a coupled measurement
// of the one-sided discretization bias.
// ---------------------------------------------------------------------

struct SmallBallMcResult {
  EstimateWithCI estimate;
  EstimateWithCI coarse;
  double bias_companion = 0.0;  // coarse.mean - estimate.mean
};

inline SmallBallMcResult mc_smallball_companion(const CompositionSpec& spec,
                                                double u, int n_paths,
                                                const RngStream& rng,
                                                int threads = 0,
                                                double level = 0.9973) {
  spec.validate();
  require(u > 0.0, "DomainError: u must be positive");
  require(n_paths >= 2, "InsufficientSamples: need at least 2 paths");
  require(spec.grid_size >= 4 && spec.grid_size % 2 == 0,
          "DegenerateGrid: companion estimate needs an even grid_size >= 4");
  const int m = spec.grid_size;
  std::vector<double> fine(static_cast<std::size_t>(n_paths));
  std::vector<double> half(static_cast<std::size_t>(n_paths));
  parallel_for_paths(static_cast<std::size_t>(n_paths), threads,
                     [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    const double d1 = sample_subordinator_unit(spec.inner.beta, g);
    const double e_end = std::pow(spec.horizon, spec.inner.beta) /
                         (spec.inner.scale_b * std::pow(d1, spec.inner.beta));
    const double dt = e_end / m;
    double x = 0.0;
    bool ok_fine = true;
    bool ok_half = true;
    for (int k = 1; k <= m && ok_half; ++k) {
      x += sample_stable(spec.driver, dt, g);
      if (std::fabs(x) > u) {
        ok_fine = false;
        if (k % 2 == 0) ok_half = false;
      }
    }
    fine[i] = ok_fine ? 1.0 : 0.0;
    half[i] = ok_half ? 1.0 : 0.0;
  });
  SmallBallMcResult r;
  r.estimate = mc_mean_ci(fine, level);
  r.estimate.seed = rng.seed;
  r.coarse = mc_mean_ci(half, level);
  r.coarse.seed = rng.seed;
  r.bias_companion = r.coarse.mean - r.estimate.mean;
  return r;
}

inline EstimateWithCI mc_smallball(const CompositionSpec& spec, double u,
                                   int n_paths, const RngStream& rng,
                                   int threads = 0, double level = 0.9973) {
  return mc_smallball_companion(spec, u, n_paths, rng, threads, level).estimate;
}

// ---------------------------------------------------------------------
// Laplace transform of the inverse subordinator: E(1) is read off a
// stepped subordinator path as (K - 1/2) ds where K is the first grid
// index with D > 1, then compared against the analytic transform.
// ---------------------------------------------------------------------

struct LaplaceCheckCell {
  double beta = 0.0;
  double s = 0.0;
  double mc = 0.0;
  double exact = 0.0;
  double sigma = 0.0;   // standard error of the MC mean
  double zscore = 0.0;
};

struct LaplaceCheckResult {
  std::vector<LaplaceCheckCell> cells;
  bool pass = false;  // every |zscore| <= 3
  int n_paths = 0;
  double ds = 0.0;
  std::uint64_t seed = 0;
};

inline LaplaceCheckResult laplace_check(const std::vector<double>& betas,
                                        const std::vector<double>& s_list,
                                        int n_paths, double ds,
                                        const RngStream& rng,
                                        int threads = 0) {
  require(!betas.empty() && !s_list.empty(),
          "DomainError: need at least one beta and one s");
  require(n_paths >= 2, "InsufficientSamples: need at least 2 paths");
  require(ds > 0.0 && ds < 1.0, "DomainError: ds must lie in (0,1)");
  LaplaceCheckResult out;
  out.n_paths = n_paths;
  out.ds = ds;
  out.seed = rng.seed;
  out.pass = true;
  const std::size_t np = static_cast<std::size_t>(n_paths);
  const std::size_t max_steps = static_cast<std::size_t>(512.0 / ds);
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const double beta = betas[bi];
    SubordinatorParams sp{beta, 1.0};
    sp.validate();
    const double inc_scale = std::pow(ds, 1.0 / beta);
    std::vector<double> e1(np);
    parallel_for_paths(np, threads, [&](std::size_t i) {
      Philox g(rng.seed, rng.stream_id + 1 + bi * np + i);
      double cum = 0.0;
      std::size_t k = 0;
      while (cum <= 1.0) {
        ++k;
        if (k > max_steps)
          throw no_convergence(
              "NoConvergence: subordinator failed to cross the horizon");
        cum += inc_scale * sample_subordinator_unit(beta, g);
      }
      e1[i] = (static_cast<double>(k) - 0.5) * ds;
    });
    for (const double s : s_list) {
      require(s >= 0.0, "DomainError: s must be nonnegative");
      std::vector<double> vals(np);
      for (std::size_t i = 0; i < np; ++i) vals[i] = std::exp(-s * e1[i]);
      const EstimateWithCI est = mc_mean_ci(vals, 0.9973);
      LaplaceCheckCell cell;
      cell.beta = beta;
      cell.s = s;
      cell.mc = est.mean;
      cell.exact = laplace_E(beta, s, 1.0);
      cell.sigma = est.stddev / std::sqrt(static_cast<double>(np));
      cell.zscore = cell.sigma > 0.0 ? (cell.mc - cell.exact) / cell.sigma
                                     : 0.0;
      if (std::fabs(cell.zscore) > 3.0) out.pass = false;
      out.cells.push_back(cell);
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Subordinated-subordinator composition check: draws of D(sigma(1)) must
// match the index-beta/alpha stable subordinator with Laplace exponent
// b s^{beta/alpha}, both through the empirical transform and by
// two-sample KS against an independently scaled direct sampler.
// ---------------------------------------------------------------------

struct BochnerCheckCell {
  double s = 0.0;
  double mc = 0.0;
  double exact = 0.0;
  double sigma = 0.0;
  double zscore = 0.0;
};

struct BochnerCheckResult {
  std::vector<BochnerCheckCell> cells;
  KSResult ks;
  bool laplace_pass = false;
  bool ks_pass = false;
  bool pass = false;
  int n = 0;
  std::uint64_t seed = 0;
};

inline BochnerCheckResult bochner_check(double alpha, double beta, double chi,
                                        int n, const std::vector<double>& s_list,
                                        const RngStream& rng, int threads = 0) {
  require(n >= 2, "InsufficientSamples: need at least 2 draws");
  require(!s_list.empty(), "DomainError: need at least one s");
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  const double theta = dc.theta;
  const double ref_scale = std::pow(dc.b, alpha / beta);
  const std::size_t np = static_cast<std::size_t>(n);
  std::vector<double> composed(np);
  std::vector<double> reference(np);
  parallel_for_paths(np, threads, [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    composed[i] = bochner_sample(beta, alpha, chi, 1.0, g);
    Philox h(rng.seed, rng.stream_id + 1 + np + i);
    reference[i] = ref_scale * sample_subordinator_unit(theta, h);
  });
  BochnerCheckResult out;
  out.n = n;
  out.seed = rng.seed;
  out.laplace_pass = true;
  for (const double s : s_list) {
    require(s >= 0.0, "DomainError: s must be nonnegative");
    std::vector<double> vals(np);
    for (std::size_t i = 0; i < np; ++i) vals[i] = std::exp(-s * composed[i]);
    const EstimateWithCI est = mc_mean_ci(vals, 0.9973);
    BochnerCheckCell cell;
    cell.s = s;
    cell.mc = est.mean;
    cell.exact = std::exp(-dc.b * std::pow(s, theta));
    cell.sigma = est.stddev / std::sqrt(static_cast<double>(np));
    cell.zscore =
        cell.sigma > 0.0 ? (cell.mc - cell.exact) / cell.sigma : 0.0;
    if (std::fabs(cell.zscore) > 3.0) out.laplace_pass = false;
    out.cells.push_back(cell);
  }
  out.ks = ks_two_sample(composed, reference);
  out.ks_pass = out.ks.p_value > 0.001;
  out.pass = out.laplace_pass && out.ks_pass;
  return out;
}

// ---------------------------------------------------------------------
// Local-time clock check at gamma = 2.  The driver's local time at zero
// has the exact oracle sqrt(chi/2) sup_{s<=1} W(s) (reflection), and the
// clock side samples E(rho) from its exact marginal.  Both candidate
// normalizations are reported: the gamma-function formula of stone_rho
// and the occupation-density value of stone_rho_occupation; only the
// latter is expected to match the oracle in distribution.
// ---------------------------------------------------------------------

struct LocalTimeCheckResult {
  double rho_literal = 0.0;
  double rho_occupation = 0.0;
  double algebra_expected = 0.0;  // 4 chi^2
  bool algebra_ok = false;
  KSResult ks_occupation;
  KSResult ks_literal;
  double corollary_literal = 0.0;             // (rho_literal c_liminf)^{beta/alpha}
  double corollary_composed_paper = 0.0;      // kappa_paper rho_occ^{beta/alpha}
  double corollary_composed_consistent = 0.0; // kappa_consistent rho_occ^{beta/alpha}
  bool pass = false;  // algebra_ok and ks_occupation p > 0.001
  int n = 0;
  int oracle_grid = 0;
  std::uint64_t seed = 0;
};

inline LocalTimeCheckResult local_time_check(double chi, double nu, int n,
                                             int oracle_grid,
                                             const RngStream& rng,
                                             int threads = 0) {
  require(n >= 2, "InsufficientSamples: need at least 2 samples");
  require(oracle_grid >= 2, "DegenerateGrid: oracle grid too small");
  const double gamma = 2.0;
  LocalTimeCheckResult out;
  out.n = n;
  out.oracle_grid = oracle_grid;
  out.seed = rng.seed;
  out.rho_literal = stone_rho(gamma, chi, nu);
  out.rho_occupation = stone_rho_occupation(gamma, chi, nu);
  out.algebra_expected = 4.0 * chi * chi;
  out.algebra_ok = std::fabs(out.rho_literal - out.algebra_expected) <=
                   1e-12 * std::max(1.0, out.algebra_expected);
  const double beta = 1.0 - 1.0 / gamma;
  const std::size_t np = static_cast<std::size_t>(n);
  std::vector<double> oracle(np);
  std::vector<double> clock_occ(np);
  std::vector<double> clock_lit(np);
  const double oracle_scale = std::sqrt(chi / 2.0);
  parallel_for_paths(np, threads, [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    const GridPath sup = levy_local_time_oracle(1.0, oracle_grid, g);
    oracle[i] = oracle_scale * sup.values.back();
    Philox h(rng.seed, rng.stream_id + 1 + np + i);
    const double d1 = sample_subordinator_unit(beta, h);
    const double inv = std::pow(d1, -beta);
    clock_occ[i] = std::pow(out.rho_occupation, beta) * inv;
    clock_lit[i] = std::pow(out.rho_literal, beta) * inv;
  });
  out.ks_occupation = ks_two_sample(oracle, clock_occ);
  out.ks_literal = ks_two_sample(oracle, clock_lit);
  const DerivedConstants dc = derive_constants(2.0, beta, chi);
  out.corollary_literal =
      std::pow(out.rho_literal * dc.c_liminf, dc.theta);
  out.corollary_composed_paper =
      dc.kappa_paper * std::pow(out.rho_occupation, dc.theta);
  out.corollary_composed_consistent =
      dc.kappa_consistent * std::pow(out.rho_occupation, dc.theta);
  out.pass = out.algebra_ok && out.ks_occupation.p_value > 0.001;
  return out;
}

// ---------------------------------------------------------------------
// Iterated-logarithm experiments on dyadic time grids t_j = 2^j.
// ---------------------------------------------------------------------

struct LilExperimentResult {
  EmpiricalStatSummary summary;
  double kappa_paper = 0.0;
  double kappa_consistent = 0.0;
  double lower_threshold = 0.0;  // 0.5 kappa_consistent
  double upper_threshold = 0.0;  // 1.5 max(kappa_paper, kappa_consistent)
  double frac_attain_lower = 0.0;
  double frac_exceed_upper = 0.0;
  std::string favored;  // constant closer to the median on log scale
  int n_paths = 0;
  int j_lo = 0;
  int j_hi = 0;
  double ds = 0.0;
  std::uint64_t seed = 0;
};

inline LilExperimentResult lil_experiment(double alpha, double beta,
                                          double chi, int n_paths, int j_lo,
                                          int j_hi, double ds,
                                          const RngStream& rng,
                                          int threads = 0) {
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  require(n_paths >= 2, "InsufficientSamples: need at least 2 paths");
  require(j_lo >= 2 && j_hi > j_lo, "DomainError: need 2 <= j_lo < j_hi");
  require(ds > 0.0 && ds < 1.0, "DomainError: ds must lie in (0,1)");
  StableParams driver = validate_params(alpha, 0.0, chi);
  const std::size_t np = static_cast<std::size_t>(n_paths);
  const std::size_t nt = static_cast<std::size_t>(j_hi - j_lo + 1);
  const double t_hi = std::pow(2.0, j_hi);
  const std::size_t max_steps =
      static_cast<std::size_t>(64.0 * std::pow(t_hi, beta) / ds) + 1024;
  const double inc_scale = std::pow(ds, 1.0 / beta);
  std::vector<GridPath> paths(np);
  parallel_for_paths(np, threads, [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    GridPath z;
    z.kind = PathKind::RightContinuousStep;
    z.times.resize(nt);
    z.values.resize(nt);
    double cum = 0.0;
    std::size_t k = 0;
    double e_prev = 0.0;
    double x = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double target = std::pow(2.0, static_cast<double>(j_lo) +
                                              static_cast<double>(j));
      while (cum <= target) {
        ++k;
        if (k > max_steps)
          throw no_convergence(
              "NoConvergence: subordinator failed to cross the horizon");
        cum += inc_scale * sample_subordinator_unit(beta, g);
      }
      const double e_here = (static_cast<double>(k) - 0.5) * ds;
      x += sample_stable(driver, e_here - e_prev, g);
      e_prev = e_here;
      z.times[j] = target;
      z.values[j] = x;
    }
    paths[i] = std::move(z);
  });
  LilExperimentResult out;
  out.summary = empirical_limsup_stat(paths, std::pow(2.0, j_lo),
                                      std::pow(2.0, j_hi), alpha, beta);
  out.kappa_paper = dc.kappa_paper;
  out.kappa_consistent = dc.kappa_consistent;
  out.lower_threshold = 0.5 * dc.kappa_consistent;
  out.upper_threshold = 1.5 * std::max(dc.kappa_paper, dc.kappa_consistent);
  std::size_t attain = 0;
  std::size_t exceed = 0;
  for (const double s : out.summary.stats) {
    if (s >= out.lower_threshold) ++attain;
    if (s > out.upper_threshold) ++exceed;
  }
  out.frac_attain_lower = static_cast<double>(attain) / static_cast<double>(np);
  out.frac_exceed_upper = static_cast<double>(exceed) / static_cast<double>(np);
  const double med = std::max(out.summary.median, 1e-300);
  out.favored = std::fabs(std::log(med / dc.kappa_paper)) <=
                        std::fabs(std::log(med / dc.kappa_consistent))
                    ? "paper"
                    : "breiman-consistent";
  out.n_paths = n_paths;
  out.j_lo = j_lo;
  out.j_hi = j_hi;
  out.ds = ds;
  out.seed = rng.seed;
  return out;
}

struct LiminfExperimentResult {
  EmpiricalStatSummary summary;
  double c_liminf = 0.0;
  int n_paths = 0;
  int j_lo = 0;
  int j_hi = 0;
  std::uint64_t seed = 0;
};

// Composed subordinator D(sigma(t)) sampled as the index-beta/alpha
// subordinator with Laplace exponent b s^{beta/alpha}, probed against
// the small-value envelope normalizer.
inline LiminfExperimentResult liminf_subordinator_experiment(
    double alpha, double beta, double chi, int n_paths, int j_lo, int j_hi,
    const RngStream& rng, int threads = 0) {
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  require(n_paths >= 2, "InsufficientSamples: need at least 2 paths");
  require(j_lo >= 2 && j_hi > j_lo, "DomainError: need 2 <= j_lo < j_hi");
  const SubordinatorParams composed{dc.theta, dc.b};
  const std::size_t np = static_cast<std::size_t>(n_paths);
  const std::size_t nt = static_cast<std::size_t>(j_hi - j_lo + 1);
  std::vector<GridPath> paths(np);
  parallel_for_paths(np, threads, [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    GridPath w;
    w.kind = PathKind::RightContinuousStep;
    w.times.resize(nt);
    w.values.resize(nt);
    double t_prev = 0.0;
    double cum = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double t = std::pow(2.0, static_cast<double>(j_lo) +
                                         static_cast<double>(j));
      cum += sample_subordinator_increment(composed, t - t_prev, g);
      t_prev = t;
      w.times[j] = t;
      w.values[j] = cum;
    }
    paths[i] = std::move(w);
  });
  LiminfExperimentResult out;
  out.summary = empirical_liminf_subordinator_stat(
      paths, std::pow(2.0, j_lo), std::pow(2.0, j_hi), alpha, beta);
  out.c_liminf = dc.c_liminf;
  out.n_paths = n_paths;
  out.j_lo = j_lo;
  out.j_hi = j_hi;
  out.seed = rng.seed;
  return out;
}

// ---------------------------------------------------------------------
// Modulus-of-continuity probe on the running supremum of Z over [0,1].
// ---------------------------------------------------------------------

struct ModulusExperimentResult {
  std::vector<double> stats;
  double median = 0.0;
  double c2 = 0.0;
  double d_const = 0.0;
  double ratio_median_to_d = 0.0;
  bool within_factor3 = false;
  int n_paths = 0;
  int grid = 0;
  std::uint64_t seed = 0;
};

inline ModulusExperimentResult modulus_experiment(double alpha, double beta,
                                                  double chi, int n_paths,
                                                  int grid, int h_pow_lo,
                                                  int h_pow_hi,
                                                  const RngStream& rng,
                                                  int threads = 0) {
  require(n_paths >= 1, "InsufficientSamples: need at least 1 path");
  require(h_pow_lo >= 2 && h_pow_hi >= h_pow_lo,
          "DomainError: need 2 <= h_pow_lo <= h_pow_hi so h < 1/e");
  const auto [c2, d] = modulus_constants(alpha, beta);
  CompositionSpec spec;
  spec.driver = validate_params(alpha, 0.0, chi);
  spec.inner = SubordinatorParams{beta, 1.0};
  spec.horizon = 1.0;
  spec.grid_size = grid;
  spec.validate();
  std::vector<double> h_grid;
  for (int p = h_pow_lo; p <= h_pow_hi; ++p)
    h_grid.push_back(std::pow(2.0, -p));
  const std::size_t np = static_cast<std::size_t>(n_paths);
  std::vector<double> stats(np);
  parallel_for_paths(np, threads, [&](std::size_t i) {
    Philox g(rng.seed, rng.stream_id + 1 + i);
    const GridPath z = compose_z(spec, g);
    const GridPath zbar = running_sup(z);
    stats[i] = empirical_modulus_stat(zbar, h_grid, alpha, beta);
  });
  ModulusExperimentResult out;
  out.stats = stats;
  out.median = detail::quantile(stats, 0.5);
  out.c2 = c2;
  out.d_const = d;
  out.ratio_median_to_d = out.median / d;
  out.within_factor3 =
      out.ratio_median_to_d >= 1.0 / 3.0 && out.ratio_median_to_d <= 3.0;
  out.n_paths = n_paths;
  out.grid = grid;
  out.seed = rng.seed;
  return out;
}

}  // namespace levyz
