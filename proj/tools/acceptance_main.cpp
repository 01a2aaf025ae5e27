// =====================================================================
// Acceptance gate: runs every numbered release criterion end to end and
// prints one [PASS]/[FAIL] line per criterion with the measured numbers,
// so a failure is diagnosable from the log alone.  Exit 0 only when all
// criteria pass.  Heavy Monte Carlo criteria use the fixed seed 12345.
// =====================================================================

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "levyz/asymptotics.hpp"
#include "levyz/cli.hpp"
#include "levyz/experiments.hpp"
#include "levyz/integral_tests.hpp"
#include "levyz/mittag_leffler.hpp"
#include "levyz/smallball.hpp"
#include "levyz/special.hpp"
#include "levyz/stable.hpp"

namespace {

using namespace levyz;

constexpr std::uint64_t kSeed = 12345;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int g_failures = 0;

template <typename Body>
void criterion(int id, const char* label, Body&& body, double limit_s = 0.0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (limit_s > 0.0 && secs > limit_s) {
    out.ok = false;
    out.detail += " [over the " + std::to_string(limit_s) + " s budget]";
  }
  if (!out.ok) ++g_failures;
  std::printf("[%s] %02d %s: %s [%.2f s]\n", out.ok ? "PASS" : "FAIL", id,
              label, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// exp(z^2) erfc(z): direct product below z = 6, asymptotic series above,
// where exp(z^2) and erfc(z) overflow/underflow separately.
double erfcx_oracle(double z) {
  if (z < 6.0) return std::exp(z * z) * std::erfc(z);
  const double inv2zz = 1.0 / (2.0 * z * z);
  double mag = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double next = mag * (2.0 * k - 1.0) * inv2zz;
    if (next >= mag) break;
    mag = next;
    sum += (k % 2 == 1) ? -mag : mag;
    if (mag < 1e-18) break;
  }
  return sum / (z * std::sqrt(kPi));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "levyz");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return levyz::cli::run(static_cast<int>(argv.size()), argv.data());
}

// ---------------------------------------------------------------------
// Criteria bodies
// ---------------------------------------------------------------------

Outcome ml_erfc_identity() {
  double worst = 0.0;
  for (double z : {0.1, 1.0, 5.0, 20.0, 50.0}) {
    const double want = erfcx_oracle(z);
    worst = std::max(worst, std::fabs(ml_neg(0.5, z) - want) / want);
  }
  return {worst <= 1e-8, fmt("max rel err %.2e (tol 1e-8)", worst)};
}

Outcome ml_tail() {
  double worst = 0.0;
  for (double beta : {0.3, 0.5, 0.7}) {
    const double z = 1e6;
    worst = std::max(
        worst, std::fabs(z * ml_neg(beta, z) * std::tgamma(1.0 - beta) - 1.0));
  }
  return {worst <= 1e-3, fmt("max |z ml Gamma(1-beta) - 1| %.2e (tol 1e-3)",
                             worst)};
}

Outcome series_constant() {
  double series = 0.0;
  for (int k = 200000; k >= 1; --k) {
    const double m = 2.0 * k - 1.0;
    series += ((k % 2 == 1) ? 1.0 : -1.0) / (m * m * m);
  }
  const double target = kPi * kPi * kPi / 32.0;
  const double series_err = std::fabs(series - target);
  double worst = 0.0;
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double want = std::tgamma(beta) * std::sin(beta * kPi) / kPi;
    worst = std::max(
        worst, std::fabs(smallball_Z_limit_constant(beta) - want) / want);
  }
  const bool ok = series_err <= 1e-9 && worst <= 1e-9;
  return {ok, fmt("series err %.2e, limit-constant rel err %.2e (tol 1e-9)",
                  series_err, worst)};
}

Outcome small_u_limit() {
  double worst = 0.0;
  const double u = 0.02;
  for (double beta : {0.3, 0.5, 0.7}) {
    const double ratio =
        smallball_Z_series(beta, u) / (u * u) / smallball_Z_limit_constant(beta);
    worst = std::max(worst, std::fabs(ratio - 1.0));
  }
  return {worst <= 0.02, fmt("max |u^-2 P / limit - 1| %.2e (tol 0.02)",
                             worst)};
}

Outcome smallball_mc() {
  CompositionSpec spec;
  spec.driver = {2.0, 0.0, 2.0};
  spec.inner = {0.5, 1.0};
  spec.horizon = 1.0;
  spec.grid_size = 1 << 14;
  const int paths = 100000;
  bool ok = true;
  std::string detail;
  const std::vector<double> us = {0.2, 0.5, 1.0};
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double u = us[i];
    const double want = smallball_Z_series(0.5, u);
    const RngStream rng{kSeed, i * (static_cast<std::uint64_t>(paths) + 1)};
    const SmallBallMcResult r = mc_smallball_companion(spec, u, paths, rng);
    const double se = r.estimate.stddev / std::sqrt(static_cast<double>(paths));
    const double gap = std::fabs(r.estimate.mean - want);
    const double tol = std::max(3.0 * se, 0.02 * want);
    const bool cell_ok = gap <= tol && std::fabs(r.bias_companion) < 0.01;
    ok = ok && cell_ok;
    detail += fmt("u=%.1f gap %.1e (tol %.1e) bias %.1e%s", u, gap, tol,
                  r.bias_companion, i + 1 < us.size() ? "; " : "");
  }
  return {ok, detail};
}

Outcome bochner() {
  const BochnerCheckResult r =
      bochner_check(2.0, 0.5, 1.0, 10000, {0.5, 1.0, 2.0}, {kSeed, 0});
  double worst_z = 0.0;
  for (const auto& c : r.cells) worst_z = std::max(worst_z, std::fabs(c.zscore));
  return {r.pass, fmt("max |z| %.2f (tol 3), ks p %.4f (need > 0.001)",
                      worst_z, r.ks.p_value)};
}

Outcome laplace_inverse() {
  const LaplaceCheckResult r = laplace_check(
      {0.3, 0.5, 0.7}, {0.5, 1.0, 2.0}, 100000, 1.0 / 1024.0, {kSeed, 0});
  double worst_z = 0.0;
  for (const auto& c : r.cells) worst_z = std::max(worst_z, std::fabs(c.zscore));
  return {r.pass, fmt("9 cells, max |z| %.2f (tol 3)", worst_z)};
}

Outcome local_time() {
  const LocalTimeCheckResult r =
      local_time_check(2.0, 0.0, 10000, 1 << 14, {kSeed, 0});
  double worst = 0.0;
  for (double chi : {0.5, 1.0, 2.0, 3.0})
    for (double nu : {-1.0, -0.5, 0.0, 0.5, 1.0})
      worst = std::max(
          worst, std::fabs(stone_rho(2.0, chi, nu) - 4.0 * chi * chi));
  const bool ok = r.pass && worst <= 1e-12;
  return {ok, fmt("ks p %.4f (need > 0.001), max |rho - 4 chi^2| %.1e",
                  r.ks_occupation.p_value, worst)};
}

struct CatalogEntry {
  const char* name;
  int which;  // 0 kolmogorov, 1 breiman, 2 hirsch
  TestFunctionSpec spec;
  TestOutcome want;
};

Outcome integral_catalog() {
  const double a = 2.0, b = 0.5, chi = 2.0;
  const double astar = 4.0 / 3.0;  // 1/mu at these parameters
  const std::vector<CatalogEntry> entries = {
      {"K1", 0, {TestFamily::LogLogPower, 2.0, 0.0}, TestOutcome::Converges},
      {"K2", 0, {TestFamily::LogLogPower, 1.0, 0.0}, TestOutcome::Diverges},
      {"K3", 0, {TestFamily::LogLogPower, astar, 0.0}, TestOutcome::Diverges},
      {"K4", 0, {TestFamily::LogLogPlusLogLogLog, astar, 3.0},
       TestOutcome::Converges},
      {"K5", 0, {TestFamily::LogLogPlusLogLogLog, astar, 2.0},
       TestOutcome::Diverges},
      {"K6", 0, {TestFamily::Constant, 1.0, 0.0}, TestOutcome::Diverges},
      {"K7", 0, {TestFamily::PurePower, 1.0, 0.0}, TestOutcome::Converges},
      {"B1", 1, {TestFamily::LogLogPower, 2.0, 0.0}, TestOutcome::Converges},
      {"B2", 1, {TestFamily::LogLogPower, astar, 0.0}, TestOutcome::Diverges},
      {"B3", 1, {TestFamily::Constant, 2.0, 0.0}, TestOutcome::Diverges},
      {"B4", 1, {TestFamily::PurePower, 0.5, 0.0}, TestOutcome::Converges},
      {"H1", 2, {TestFamily::PurePower, 0.2, 0.0}, TestOutcome::Converges},
      {"H2", 2, {TestFamily::PurePower, 0.25, 0.0}, TestOutcome::Diverges},
      {"H3", 2, {TestFamily::PowerOverLogPower, 0.25, 1.0},
       TestOutcome::Diverges},
      {"H4", 2, {TestFamily::PowerOverLogPower, 0.25, 2.0},
       TestOutcome::Converges},
      {"H5", 2, {TestFamily::Constant, 1.0, 0.0}, TestOutcome::Converges},
      {"H6", 2, {TestFamily::LogLogPower, 1.0, 0.0}, TestOutcome::Diverges},
      {"H7", 2, {TestFamily::LogLogPlusLogLogLog, 1.0, 2.0},
       TestOutcome::Converges},
  };
  int agree = 0;
  std::string bad;
  for (const auto& e : entries) {
    Verdict v;
    if (e.which == 0) v = classify_kolmogorov(e.spec, a, b, chi);
    else if (e.which == 1) v = classify_breiman(e.spec, a, b, chi);
    else v = classify_hirsch(e.spec, a, b);
    if (v.outcome == e.want) ++agree;
    else bad += std::string(" ") + e.name;
  }
  const bool ok = agree == static_cast<int>(entries.size());
  std::string detail = fmt("%d/%zu verdicts agree (two boundary cases "
                           "included)", agree, entries.size());
  if (!ok) detail += "; wrong:" + bad;
  return {ok, detail};
}

Outcome constant_consistency() {
  double worst = 0.0;
  int cells = 0;
  bool ok = true;
  for (double alpha : {1.2, 1.5, 1.8, 2.0})
    for (double beta : {0.3, 0.5, 0.7, 0.9})
      for (double chi : {0.5, 1.0, 2.0}) {
        const ConsistencyReport r = consistency_check(alpha, beta, chi);
        ok = ok && r.kappa_matches && r.c_liminf_matches;
        const DerivedConstants dc = derive_constants(alpha, beta, chi);
        const double e1 = std::fabs(dc.kappa_paper * dc.kappa_consistent - 1.0);
        const double e2 =
            std::fabs(dc.m * std::tgamma(1.0 - dc.theta) - dc.b * dc.theta);
        const double mu_alt = std::pow(dc.b * dc.theta, 1.0 / (1.0 - dc.theta)) *
                              (1.0 - dc.theta) / dc.theta;
        const double e3 = std::fabs(dc.mu - mu_alt) / dc.mu;
        worst = std::max({worst, e1, e2, e3});
        ++cells;
      }
  ok = ok && worst <= 1e-12;
  return {ok, fmt("%d parameter points, max identity err %.1e (tol 1e-12)",
                  cells, worst)};
}

Outcome lil_envelope() {
  const LilExperimentResult r = lil_experiment(
      2.0, 0.5, 2.0, 200, 3, 20, 1.0 / 1024.0, {kSeed, 0});
  const bool ok = r.frac_attain_lower >= 0.5 && r.frac_exceed_upper <= 0.1;
  return {ok, fmt("attain %.3f (need >= 0.5), exceed %.3f (need <= 0.1), "
                  "favored constant: %s", r.frac_attain_lower,
                  r.frac_exceed_upper, r.favored.c_str())};
}

Outcome modulus_probe() {
  const ModulusExperimentResult r =
      modulus_experiment(2.0, 0.5, 1.0, 50, 1 << 16, 4, 16, {kSeed, 0});
  const auto [c2, d] = modulus_constants(2.0, 0.5);
  const DerivedConstants dc = derive_constants(2.0, 0.5, 1.0);
  const double c2_alt = (1.0 - dc.theta) *
                        std::pow(dc.theta, dc.theta / (1.0 - dc.theta));
  const double d_alt = std::pow(2.0 * c2 / 0.5, 1.0 - dc.theta);
  const double alg = std::max(std::fabs(c2 - c2_alt) / c2,
                              std::fabs(d - d_alt) / d);
  const bool ok = r.within_factor3 && alg <= 1e-12;
  return {ok, fmt("median/d %.3f (need within factor 3), identity err %.1e",
                  r.ratio_median_to_d, alg)};
}

Outcome reproducibility() {
  struct Case {
    const char* tag;
    bool threaded;  // subcommand spawns workers and takes --threads
    std::vector<std::string> args;
  };
  const std::vector<Case> cases = {
      {"ml", true, {"ml", "--beta", "0.5", "--z", "1", "--mc-paths", "2000",
                    "--mc-ds", "0.00390625", "--format", "json"}},
      {"smallball", true, {"smallball", "--u", "0.5", "--paths", "1200",
                           "--grid", "1024", "--seed", "99"}},
      {"lil", true, {"lil", "--paths", "24", "--j-lo", "3", "--j-hi", "10",
                     "--ds", "0.01", "--format", "json"}},
      {"constants", false, {"constants", "--alpha", "2", "--beta", "0.5",
                            "--chi", "2", "--format", "json"}},
  };
  for (const auto& c : cases) {
    const std::string p1 = std::string("/tmp/levyz_acc_") + c.tag + "_1";
    const std::string p2 = std::string("/tmp/levyz_acc_") + c.tag + "_2";
    const std::string p3 = std::string("/tmp/levyz_acc_") + c.tag + "_3";
    auto a1 = c.args;
    auto a2 = c.args;
    auto a3 = c.args;
    if (c.threaded) {
      a1.insert(a1.end(), {"--threads", "1"});
      a2.insert(a2.end(), {"--threads", "1"});
      a3.insert(a3.end(), {"--threads", "3"});
    }
    a1.insert(a1.end(), {"--out", p1});
    a2.insert(a2.end(), {"--out", p2});
    a3.insert(a3.end(), {"--out", p3});
    if (run_cli(a1) != 0 || run_cli(a2) != 0 || run_cli(a3) != 0)
      return {false, fmt("%s: nonzero exit", c.tag)};
    const std::string b1 = slurp(p1);
    if (b1.empty() || b1 != slurp(p2))
      return {false, fmt("%s: rerun bytes differ", c.tag)};
    if (b1 != slurp(p3))
      return {false, fmt("%s: %s changed the bytes", c.tag,
                         c.threaded ? "--threads" : "a rerun")};
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    std::remove(p3.c_str());
  }
  return {true, fmt("%zu subcommands byte-identical across reruns, "
                    "--threads 1 vs 3 where applicable", cases.size())};
}

}  // namespace

int main() {
  std::printf("levyz acceptance suite (seed %llu)\n",
              static_cast<unsigned long long>(kSeed));
  criterion(1, "mittag-leffler matches exp(z^2) erfc(z)", ml_erfc_identity,
            1.0);
  criterion(2, "mittag-leffler tail 1/(z Gamma(1-beta))", ml_tail);
  criterion(3, "small-ball limit constant algebra", series_constant);
  criterion(4, "small-u limit of u^-2 P(u)", small_u_limit, 1.0);
  criterion(5, "small-ball Monte Carlo vs series", smallball_mc, 300.0);
  criterion(6, "bochner subordination composition", bochner);
  criterion(7, "inverse-subordinator laplace transform", laplace_inverse);
  criterion(8, "local time vs scaled inverse clock", local_time);
  criterion(9, "integral-test catalog", integral_catalog);
  criterion(10, "derived-constant consistency sweep", constant_consistency);
  criterion(11, "iterated-logarithm envelope", lil_envelope, 600.0);
  criterion(12, "modulus of continuity probe", modulus_probe);
  criterion(13, "byte-identical reproducibility", reproducibility);
  std::printf("%d/13 criteria passed\n", 13 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
