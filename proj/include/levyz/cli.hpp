#pragma once

// =====================================================================
// Command-line front end: parses one subcommand, runs the experiment,
// and writes deterministic CSV or JSON.  Worker streams are assigned
// by path index, so --threads never changes the bytes written; the
// wall-clock runtime goes to standard error to keep outputs
// byte-identical across reruns.
//
// Exit codes: 0 success, 1 usage error, 2 numeric or domain failure,
// 3 a check subcommand found disagreement beyond tolerance.
// =====================================================================

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "levyz/asymptotics.hpp"
#include "levyz/errors.hpp"
#include "levyz/experiments.hpp"
#include "levyz/integral_tests.hpp"
#include "levyz/io.hpp"
#include "levyz/mittag_leffler.hpp"
#include "levyz/pathsim.hpp"
#include "levyz/smallball.hpp"
#include "levyz/stable.hpp"
#include "levyz/stats.hpp"

namespace levyz::cli {

namespace detail {

// Accumulates the effective configuration as both a "k=v k=v" comment
// line for CSV and an ordered JSON object for the envelope.
struct ConfigEcho {
  json obj = json::object();
  std::string line;

  void note(const std::string& key, const std::string& shown, json value) {
    if (!line.empty()) line += ' ';
    line += key;
    line += '=';
    line += shown;
    obj[key] = std::move(value);
  }
  void add(const std::string& k, double v) { note(k, format_number(v), v); }
  void add(const std::string& k, int v) { note(k, std::to_string(v), v); }
  void add(const std::string& k, std::uint64_t v) {
    note(k, std::to_string(v), v);
  }
  void add(const std::string& k, bool v) {
    note(k, v ? "true" : "false", v);
  }
  void add(const std::string& k, const std::string& v) { note(k, v, v); }
  void add(const std::string& k, const std::vector<double>& v) {
    std::string shown;
    json arr = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) shown += ';';
      shown += format_number(v[i]);
      arr.push_back(v[i]);
    }
    note(k, shown, std::move(arr));
  }
};

inline json ci_json(const EstimateWithCI& e) {
  return json{{"mean", e.mean},
              {"stddev", e.stddev},
              {"half_width", e.half_width},
              {"lower", e.lower},
              {"upper", e.upper},
              {"level", e.level},
              {"n", e.n},
              {"seed", e.seed}};
}

inline json ks_json(const KSResult& k) {
  return json{{"statistic", k.statistic}, {"p_value", k.p_value}};
}

inline json summary_json(const EmpiricalStatSummary& s) {
  return json{{"stats", s.stats},
              {"median", s.median},
              {"q10", s.q10},
              {"q90", s.q90}};
}

inline void fill_default(std::vector<double>& v,
                         std::initializer_list<double> d) {
  if (v.empty()) v.assign(d);
}

// Common per-subcommand state: where to write and in which format.
struct IoOpts {
  std::string out = "-";
  std::string format;
};

inline void add_io(CLI::App* sub, IoOpts& io, const char* format_default) {
  io.format = format_default;
  sub->add_option("--out", io.out, "output path, '-' for standard output")
      ->capture_default_str();
  sub->add_option("--format", io.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

struct McOpts {
  std::uint64_t seed = 12345;
  int threads = 0;
};

inline void add_mc(CLI::App* sub, McOpts& mc) {
  sub->add_option("--seed", mc.seed, "base seed for the Philox streams")
      ->capture_default_str();
  sub->add_option("--threads", mc.threads,
                  "worker count; 0 uses LEVYZ_THREADS or the hardware count")
      ->capture_default_str();
}

inline void emit(const IoOpts& io, const ConfigEcho& echo,
                 const std::string& subcommand, CsvWriter& csv,
                 const json& results, const json& diagnostics) {
  if (io.format == "csv") {
    csv.config_line = echo.line;
    write_output(io.out, csv.str());
    return;
  }
  json j = json_envelope(subcommand, echo.obj);
  j["results"] = results;
  j["diagnostics"] = diagnostics;
  write_output(io.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------
// ml: Mittag-Leffler values, optionally cross-checked against the
// inverse-clock Laplace transform by Monte Carlo.
// ---------------------------------------------------------------------

struct MlOpts {
  IoOpts io;
  McOpts mc;
  double beta = 0.5;
  std::vector<double> z;
  double tolerance = 1e-12;
  int mc_paths = 0;
  std::vector<double> s;
  double mc_ds = 0.0009765625;
};

inline int run_ml(const MlOpts& o) {
  std::vector<double> z = o.z;
  std::vector<double> s = o.s;
  fill_default(z, {1.0});
  fill_default(s, {0.5, 1.0, 2.0});
  MLConfig cfg;
  cfg.tolerance = o.tolerance;
  cfg.validate();

  ConfigEcho echo;
  echo.add("beta", o.beta);
  echo.add("z", z);
  echo.add("tolerance", o.tolerance);
  echo.add("mc_paths", o.mc_paths);
  if (o.mc_paths > 0) {
    echo.add("s", s);
    echo.add("mc_ds", o.mc_ds);
    echo.add("seed", o.mc.seed);
  }
  echo.add("format", o.io.format);

  CsvWriter csv;
  csv.columns = {"beta", "z", "value"};
  json values = json::array();
  for (double zi : z) {
    const double v = ml_neg(o.beta, zi, cfg);
    csv.add_row({format_number(o.beta), format_number(zi), format_number(v)});
    values.push_back(json{{"beta", o.beta}, {"z", zi}, {"value", v}});
  }
  json results;
  results["values"] = std::move(values);

  int code = 0;
  json diagnostics = json::object();
  if (o.mc_paths > 0) {
    const LaplaceCheckResult lap = laplace_check(
        {o.beta}, s, o.mc_paths, o.mc_ds, RngStream{o.mc.seed, 0},
        o.mc.threads);
    json cells = json::array();
    for (const auto& c : lap.cells)
      cells.push_back(json{{"beta", c.beta},
                           {"s", c.s},
                           {"mc", c.mc},
                           {"exact", c.exact},
                           {"sigma", c.sigma},
                           {"zscore", c.zscore}});
    results["laplace_check"] = json{{"cells", std::move(cells)},
                                    {"pass", lap.pass},
                                    {"n_paths", lap.n_paths},
                                    {"ds", lap.ds},
                                    {"seed", lap.seed}};
    if (!lap.pass) code = 3;
    std::fprintf(stderr, "levyz ml: laplace check %s\n",
                 lap.pass ? "pass" : "FAIL");
  }
  emit(o.io, echo, "ml", csv, results, diagnostics);
  return code;
}

// ---------------------------------------------------------------------
// smallball: analytic series vs Monte Carlo with a grid-doubling
// companion estimate for the discretization bias.
// ---------------------------------------------------------------------

struct SmallballOpts {
  IoOpts io;
  McOpts mc;
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 2.0;
  double nu = 0.0;
  std::vector<double> u;
  int paths = 20000;
  int grid = 16384;
  double level = 0.9973;
  bool analytic_only = false;
};

inline int run_smallball(const SmallballOpts& o) {
  std::vector<double> u = o.u;
  fill_default(u, {0.2, 0.5, 1.0});
  const bool have_analytic = o.alpha == 2.0 && o.chi == 2.0 && o.nu == 0.0;

  ConfigEcho echo;
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("nu", o.nu);
  echo.add("u", u);
  echo.add("paths", o.paths);
  echo.add("grid", o.grid);
  echo.add("analytic_only", o.analytic_only);
  echo.add("level", o.level);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  CompositionSpec spec;
  spec.driver = validate_params(o.alpha, o.nu, o.chi);
  spec.inner = SubordinatorParams{o.beta, 1.0};
  spec.horizon = 1.0;
  spec.grid_size = o.grid;
  spec.validate();

  CsvWriter csv;
  csv.columns = {"u",    "analytic", "mc_estimate", "ci_halfwidth",
                 "grid", "paths",    "seed"};
  json rows = json::array();
  json zscores = json::array();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double analytic =
        have_analytic ? smallball_Z_series(o.beta, u[i]) : nan;
    double mc_mean = nan;
    double mc_hw = nan;
    json row{{"u", u[i]}, {"analytic", analytic}};
    if (!o.analytic_only) {
      const RngStream stream{
          o.mc.seed, static_cast<std::uint64_t>(i) *
                         (static_cast<std::uint64_t>(o.paths) + 1)};
      const SmallBallMcResult r = mc_smallball_companion(
          spec, u[i], o.paths, stream, o.mc.threads, o.level);
      mc_mean = r.estimate.mean;
      mc_hw = r.estimate.half_width;
      row["mc"] = ci_json(r.estimate);
      row["coarse_mean"] = r.coarse.mean;
      row["bias_companion"] = r.bias_companion;
      if (have_analytic && r.estimate.stddev > 0.0) {
        const double sigma =
            r.estimate.stddev / std::sqrt(static_cast<double>(r.estimate.n));
        zscores.push_back(json{{"u", u[i]},
                               {"zscore", (mc_mean - analytic) / sigma}});
      }
    }
    csv.add_row({format_number(u[i]), format_number(analytic),
                 format_number(mc_mean), format_number(mc_hw),
                 std::to_string(o.grid), std::to_string(o.paths),
                 std::to_string(o.mc.seed)});
    rows.push_back(std::move(row));
  }
  json results;
  results["rows"] = std::move(rows);
  json diagnostics = json::object();
  if (!zscores.empty()) diagnostics["zscores_vs_analytic"] = std::move(zscores);
  emit(o.io, echo, "smallball", csv, results, diagnostics);
  return 0;
}

// ---------------------------------------------------------------------
// paths: plot-ready sample paths of Z, the inner clock D, or E.
// ---------------------------------------------------------------------

struct PathsOpts {
  IoOpts io;
  McOpts mc;
  std::string kind = "z";
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 1.0;
  double nu = 0.0;
  double scale_b = 1.0;
  double horizon = 1.0;
  int grid = 1024;
  int paths = 1;
};

inline int run_paths(const PathsOpts& o) {
  require(o.paths >= 1, "InsufficientSamples: need at least 1 path");
  ConfigEcho echo;
  echo.add("kind", o.kind);
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("nu", o.nu);
  echo.add("scale_b", o.scale_b);
  echo.add("horizon", o.horizon);
  echo.add("grid", o.grid);
  echo.add("paths", o.paths);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  CompositionSpec spec;
  spec.driver = validate_params(o.alpha, o.nu, o.chi);
  spec.inner = SubordinatorParams{o.beta, o.scale_b};
  spec.horizon = o.horizon;
  spec.grid_size = o.grid;
  spec.validate();

  const std::size_t np = static_cast<std::size_t>(o.paths);
  std::vector<GridPath> sampled(np);
  parallel_for_paths(np, o.mc.threads, [&](std::size_t i) {
    Philox g(o.mc.seed, 1 + i);
    if (o.kind == "z")
      sampled[i] = compose_z(spec, g);
    else if (o.kind == "subordinator")
      sampled[i] =
          simulate_subordinator_path(spec.inner, o.horizon, o.grid, g);
    else
      sampled[i] = simulate_inverse_path(spec.inner, o.horizon, o.grid, g);
  });

  CsvWriter csv;
  csv.columns = {"path_id", "t", "value"};
  json jpaths = json::array();
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t k = 0; k < sampled[i].times.size(); ++k)
      csv.add_row({std::to_string(i), format_number(sampled[i].times[k]),
                   format_number(sampled[i].values[k])});
    jpaths.push_back(json{{"path_id", i},
                          {"times", sampled[i].times},
                          {"values", sampled[i].values}});
  }
  json results;
  results["paths"] = std::move(jpaths);
  emit(o.io, echo, "paths", csv, results, json::object());
  return 0;
}

// ---------------------------------------------------------------------
// constants: derived constants, classifier consistency, and the
// local-time composition constants, no simulation.
// ---------------------------------------------------------------------

struct ConstantsOpts {
  IoOpts io;
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 1.0;
  double nu = 0.0;
};

inline int run_constants(const ConstantsOpts& o) {
  const DerivedConstants dc = derive_constants(o.alpha, o.beta, o.chi);
  const ConsistencyReport cons = consistency_check(o.alpha, o.beta, o.chi);
  const double rho_lit = stone_rho(o.alpha, o.chi, o.nu);
  const double rho_occ = stone_rho_occupation(o.alpha, o.chi, o.nu);

  ConfigEcho echo;
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("nu", o.nu);
  echo.add("format", o.io.format);

  json constants{{"alpha", dc.alpha},
                 {"beta", dc.beta},
                 {"chi", dc.chi},
                 {"theta", dc.theta},
                 {"lambda", dc.lambda},
                 {"c1", dc.c1},
                 {"b", dc.b},
                 {"m", dc.m},
                 {"mu", dc.mu},
                 {"c_liminf", dc.c_liminf},
                 {"kappa_paper", dc.kappa_paper},
                 {"kappa_consistent", dc.kappa_consistent},
                 {"c2", dc.c2},
                 {"d", dc.d}};
  json consistency{{"a_star", cons.a_star},
                   {"kappa_from_kolmogorov", cons.kappa_from_kolmogorov},
                   {"c_star", cons.c_star},
                   {"c_liminf_from_breiman", cons.c_liminf_from_breiman},
                   {"kappa_matches", cons.kappa_matches},
                   {"c_liminf_matches", cons.c_liminf_matches},
                   {"paper_constant_differs", cons.paper_constant_differs},
                   {"note", cons.note}};
  json local_time{
      {"gamma", o.alpha},
      {"rho_literal", rho_lit},
      {"rho_occupation", rho_occ},
      {"corollary_literal", std::pow(rho_lit * dc.c_liminf, dc.theta)},
      {"corollary_composed_paper",
       dc.kappa_paper * std::pow(rho_occ, dc.theta)},
      {"corollary_composed_consistent",
       dc.kappa_consistent * std::pow(rho_occ, dc.theta)}};

  CsvWriter csv;
  csv.columns = {"name", "value"};
  for (const auto& [key, value] : constants.items())
    csv.add_row({key, format_number(value.get<double>())});
  csv.add_row({"rho_literal", format_number(rho_lit)});
  csv.add_row({"rho_occupation", format_number(rho_occ)});

  json results;
  results["constants"] = std::move(constants);
  results["consistency"] = std::move(consistency);
  results["local_time"] = std::move(local_time);
  emit(o.io, echo, "constants", csv, results, json::object());
  return 0;
}

// ---------------------------------------------------------------------
// lil: empirical limsup (or subordinator liminf) statistics over
// dyadic horizons, with optional threshold check.
// ---------------------------------------------------------------------

struct LilOpts {
  IoOpts io;
  McOpts mc;
  std::string statistic = "limsup";
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 2.0;
  int paths = 200;
  int j_lo = 3;
  int j_hi = 20;
  double ds = 0.0009765625;
  bool check = false;
};

inline int run_lil(const LilOpts& o) {
  ConfigEcho echo;
  echo.add("statistic", o.statistic);
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("paths", o.paths);
  echo.add("j_lo", o.j_lo);
  echo.add("j_hi", o.j_hi);
  if (o.statistic == "limsup") echo.add("ds", o.ds);
  echo.add("check", o.check);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  CsvWriter csv;
  csv.columns = {"path_id", "stat"};
  json results;
  int code = 0;
  if (o.statistic == "limsup") {
    const LilExperimentResult r =
        lil_experiment(o.alpha, o.beta, o.chi, o.paths, o.j_lo, o.j_hi, o.ds,
                       RngStream{o.mc.seed, 0}, o.mc.threads);
    for (std::size_t i = 0; i < r.summary.stats.size(); ++i)
      csv.add_row({std::to_string(i), format_number(r.summary.stats[i])});
    results["summary"] = summary_json(r.summary);
    results["kappa_paper"] = r.kappa_paper;
    results["kappa_consistent"] = r.kappa_consistent;
    results["lower_threshold"] = r.lower_threshold;
    results["upper_threshold"] = r.upper_threshold;
    results["frac_attain_lower"] = r.frac_attain_lower;
    results["frac_exceed_upper"] = r.frac_exceed_upper;
    results["favored"] = r.favored;
    const bool ok = r.frac_attain_lower >= 0.5 && r.frac_exceed_upper <= 0.1;
    if (o.check && !ok) code = 3;
    std::fprintf(stderr,
                 "levyz lil: median %.6g, favored constant %s, "
                 "attain %.3f, exceed %.3f\n",
                 r.summary.median, r.favored.c_str(), r.frac_attain_lower,
                 r.frac_exceed_upper);
  } else {
    const LiminfExperimentResult r = liminf_subordinator_experiment(
        o.alpha, o.beta, o.chi, o.paths, o.j_lo, o.j_hi,
        RngStream{o.mc.seed, 0}, o.mc.threads);
    for (std::size_t i = 0; i < r.summary.stats.size(); ++i)
      csv.add_row({std::to_string(i), format_number(r.summary.stats[i])});
    results["summary"] = summary_json(r.summary);
    results["c_liminf"] = r.c_liminf;
    const bool ok = r.summary.median >= r.c_liminf / 10.0 &&
                    r.summary.median <= r.c_liminf * 10.0;
    if (o.check && !ok) code = 3;
    std::fprintf(stderr, "levyz lil: liminf median %.6g vs c_liminf %.6g\n",
                 r.summary.median, r.c_liminf);
  }
  emit(o.io, echo, "lil", csv, results, json::object());
  return code;
}

// ---------------------------------------------------------------------
// modulus: empirical modulus-of-continuity statistics on [0,1].
// ---------------------------------------------------------------------

struct ModulusOpts {
  IoOpts io;
  McOpts mc;
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 1.0;
  int paths = 50;
  int grid = 65536;
  int h_lo = 4;
  int h_hi = 16;
  bool check = false;
};

inline int run_modulus(const ModulusOpts& o) {
  ConfigEcho echo;
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("paths", o.paths);
  echo.add("grid", o.grid);
  echo.add("h_lo", o.h_lo);
  echo.add("h_hi", o.h_hi);
  echo.add("check", o.check);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  const ModulusExperimentResult r =
      modulus_experiment(o.alpha, o.beta, o.chi, o.paths, o.grid, o.h_lo,
                         o.h_hi, RngStream{o.mc.seed, 0}, o.mc.threads);
  CsvWriter csv;
  csv.columns = {"path_id", "stat"};
  for (std::size_t i = 0; i < r.stats.size(); ++i)
    csv.add_row({std::to_string(i), format_number(r.stats[i])});
  json results{{"stats", r.stats},
               {"median", r.median},
               {"c2", r.c2},
               {"d", r.d_const},
               {"ratio_median_to_d", r.ratio_median_to_d},
               {"within_factor3", r.within_factor3}};
  std::fprintf(stderr, "levyz modulus: median %.6g vs d %.6g (ratio %.3f)\n",
               r.median, r.d_const, r.ratio_median_to_d);
  emit(o.io, echo, "modulus", csv, results, json::object());
  return o.check && !r.within_factor3 ? 3 : 0;
}

// ---------------------------------------------------------------------
// integral-test: classify one test function.
// ---------------------------------------------------------------------

struct IntegralTestOpts {
  IoOpts io;
  std::string which = "kolmogorov";
  std::string family = "constant";
  std::string params = "1";
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 2.0;
  bool small_time = false;
  bool numeric = false;
};

inline bool parse_family(const std::string& name, TestFamily& out) {
  for (TestFamily f :
       {TestFamily::LogLogPower, TestFamily::LogLogPlusLogLogLog,
        TestFamily::PurePower, TestFamily::PowerOverLogPower,
        TestFamily::Constant}) {
    if (name == to_string(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

inline bool parse_params(const std::string& text, TestFunctionSpec& spec) {
  const std::size_t comma = text.find(',');
  try {
    std::size_t used = 0;
    spec.a = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma))
      return false;
    if (comma != std::string::npos) {
      const std::string rest = text.substr(comma + 1);
      spec.b = std::stod(rest, &used);
      if (used != rest.size()) return false;
    } else {
      spec.b = 0.0;
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

inline int run_integral_test(const IntegralTestOpts& o) {
  TestFunctionSpec spec;
  if (!parse_family(o.family, spec.family)) {
    std::cerr << "levyz: unknown --family '" << o.family << "'\n";
    return 1;
  }
  if (!parse_params(o.params, spec)) {
    std::cerr << "levyz: cannot parse --params '" << o.params
              << "' (expected 'a' or 'a,b')\n";
    return 1;
  }

  ConfigEcho echo;
  echo.add("which", o.which);
  echo.add("family", o.family);
  echo.add("a", spec.a);
  echo.add("b", spec.b);
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("small_time", o.small_time);
  echo.add("numeric", o.numeric);
  echo.add("format", o.io.format);

  Verdict verdict;
  json partials = json::array();
  if (o.numeric) {
    NumericOptions opts;
    opts.small_time = o.small_time;
    NumericReport rep;
    if (o.which == "kolmogorov")
      rep = numeric_classify_kolmogorov(spec, o.alpha, o.beta, o.chi, opts);
    else if (o.which == "breiman")
      rep = numeric_classify_breiman(spec, o.alpha, o.beta, o.chi, opts);
    else
      rep = numeric_classify_hirsch(spec, o.alpha, o.beta, opts);
    verdict = rep.verdict;
    partials = rep.partials;
  } else if (o.which == "kolmogorov") {
    verdict = classify_kolmogorov(spec, o.alpha, o.beta, o.chi, o.small_time);
  } else if (o.which == "breiman") {
    verdict = classify_breiman(spec, o.alpha, o.beta, o.chi, o.small_time);
  } else {
    verdict = classify_hirsch(spec, o.alpha, o.beta, o.small_time);
  }

  CsvWriter csv;
  csv.columns = {"which", "family", "a", "b", "small_time", "outcome",
                 "basis"};
  csv.add_row({o.which, o.family, format_number(spec.a),
               format_number(spec.b), o.small_time ? "true" : "false",
               to_string(verdict.outcome), to_string(verdict.basis)});
  json results{{"which", o.which},
               {"family", o.family},
               {"a", spec.a},
               {"b", spec.b},
               {"small_time", o.small_time},
               {"outcome", to_string(verdict.outcome)},
               {"basis", to_string(verdict.basis)}};
  json diagnostics = json::object();
  if (!partials.empty()) diagnostics["partials"] = std::move(partials);
  emit(o.io, echo, "integral-test", csv, results, diagnostics);
  return 0;
}

// ---------------------------------------------------------------------
// bochner-check: composed subordinator vs the directly scaled sampler.
// ---------------------------------------------------------------------

struct BochnerOpts {
  IoOpts io;
  McOpts mc;
  double alpha = 2.0;
  double beta = 0.5;
  double chi = 1.0;
  int n = 10000;
  std::vector<double> s;
};

inline int run_bochner(const BochnerOpts& o) {
  std::vector<double> s = o.s;
  fill_default(s, {0.5, 1.0, 2.0});
  ConfigEcho echo;
  echo.add("alpha", o.alpha);
  echo.add("beta", o.beta);
  echo.add("chi", o.chi);
  echo.add("n", o.n);
  echo.add("s", s);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  const BochnerCheckResult r = bochner_check(
      o.alpha, o.beta, o.chi, o.n, s, RngStream{o.mc.seed, 0}, o.mc.threads);
  CsvWriter csv;
  csv.columns = {"s", "mc", "exact", "sigma", "zscore"};
  json cells = json::array();
  for (const auto& c : r.cells) {
    csv.add_row({format_number(c.s), format_number(c.mc),
                 format_number(c.exact), format_number(c.sigma),
                 format_number(c.zscore)});
    cells.push_back(json{{"s", c.s},
                         {"mc", c.mc},
                         {"exact", c.exact},
                         {"sigma", c.sigma},
                         {"zscore", c.zscore}});
  }
  json results{{"cells", std::move(cells)},
               {"ks", ks_json(r.ks)},
               {"laplace_pass", r.laplace_pass},
               {"ks_pass", r.ks_pass},
               {"pass", r.pass}};
  std::fprintf(stderr, "levyz bochner-check: %s (ks p=%.4g)\n",
               r.pass ? "pass" : "FAIL", r.ks.p_value);
  emit(o.io, echo, "bochner-check", csv, results, json::object());
  return r.pass ? 0 : 3;
}

// ---------------------------------------------------------------------
// local-time-check: clock identity against the local-time oracle.
// ---------------------------------------------------------------------

struct LocalTimeOpts {
  IoOpts io;
  McOpts mc;
  double chi = 2.0;
  double nu = 0.0;
  int n = 10000;
  int oracle_grid = 16384;
};

inline int run_local_time(const LocalTimeOpts& o) {
  ConfigEcho echo;
  echo.add("chi", o.chi);
  echo.add("nu", o.nu);
  echo.add("n", o.n);
  echo.add("oracle_grid", o.oracle_grid);
  echo.add("seed", o.mc.seed);
  echo.add("format", o.io.format);

  const LocalTimeCheckResult r = local_time_check(
      o.chi, o.nu, o.n, o.oracle_grid, RngStream{o.mc.seed, 0}, o.mc.threads);
  CsvWriter csv;
  csv.columns = {"name", "value"};
  csv.add_row({"rho_literal", format_number(r.rho_literal)});
  csv.add_row({"rho_occupation", format_number(r.rho_occupation)});
  csv.add_row({"algebra_expected", format_number(r.algebra_expected)});
  csv.add_row({"ks_occupation_stat", format_number(r.ks_occupation.statistic)});
  csv.add_row({"ks_occupation_p", format_number(r.ks_occupation.p_value)});
  csv.add_row({"ks_literal_stat", format_number(r.ks_literal.statistic)});
  csv.add_row({"ks_literal_p", format_number(r.ks_literal.p_value)});
  csv.add_row({"corollary_literal", format_number(r.corollary_literal)});
  csv.add_row(
      {"corollary_composed_paper", format_number(r.corollary_composed_paper)});
  csv.add_row({"corollary_composed_consistent",
               format_number(r.corollary_composed_consistent)});
  csv.add_row({"pass", r.pass ? "true" : "false"});

  json results{{"rho_literal", r.rho_literal},
               {"rho_occupation", r.rho_occupation},
               {"algebra_expected", r.algebra_expected},
               {"algebra_ok", r.algebra_ok},
               {"ks_occupation", ks_json(r.ks_occupation)},
               {"ks_literal", ks_json(r.ks_literal)},
               {"corollary_literal", r.corollary_literal},
               {"corollary_composed_paper", r.corollary_composed_paper},
               {"corollary_composed_consistent",
                r.corollary_composed_consistent},
               {"pass", r.pass}};
  std::fprintf(stderr,
               "levyz local-time-check: %s (occupation ks p=%.4g, "
               "literal ks p=%.4g)\n",
               r.pass ? "pass" : "FAIL", r.ks_occupation.p_value,
               r.ks_literal.p_value);
  emit(o.io, echo, "local-time-check", csv, results, json::object());
  return r.pass ? 0 : 3;
}

}  // namespace detail

inline int run(int argc, char** argv) {
  CLI::App app{"levyz: inverse-subordinated Levy process toolkit"};
  app.require_subcommand(1);

  detail::MlOpts ml;
  CLI::App* sub_ml = app.add_subcommand(
      "ml", "Mittag-Leffler values; CSV schema: beta,z,value");
  detail::add_io(sub_ml, ml.io, "csv");
  detail::add_mc(sub_ml, ml.mc);
  sub_ml->add_option("--beta", ml.beta, "index in (0,1)")
      ->capture_default_str();
  sub_ml->add_option("--z", ml.z, "evaluation points (default 1)");
  sub_ml->add_option("--tolerance", ml.tolerance, "series/quadrature target")
      ->capture_default_str();
  sub_ml->add_option("--mc-paths", ml.mc_paths,
                     "paths for the Laplace-transform check (0 = off)")
      ->capture_default_str();
  sub_ml->add_option("--s", ml.s,
                     "Laplace arguments for the check (default 0.5 1 2)");
  sub_ml->add_option("--mc-ds", ml.mc_ds, "inner clock step for the check")
      ->capture_default_str();

  detail::SmallballOpts sb;
  CLI::App* sub_sb = app.add_subcommand(
      "smallball",
      "small-ball probabilities; CSV schema: "
      "u,analytic,mc_estimate,ci_halfwidth,grid,paths,seed");
  detail::add_io(sub_sb, sb.io, "csv");
  detail::add_mc(sub_sb, sb.mc);
  sub_sb->add_option("--alpha", sb.alpha, "driver index in (1,2], not 1")
      ->capture_default_str();
  sub_sb->add_option("--beta", sb.beta, "inner clock index in (0,1)")
      ->capture_default_str();
  sub_sb->add_option("--chi", sb.chi, "driver scale")->capture_default_str();
  sub_sb->add_option("--nu", sb.nu, "driver skewness")->capture_default_str();
  sub_sb->add_option("--u", sb.u, "ball radii (default 0.2 0.5 1)");
  sub_sb->add_option("--paths", sb.paths, "Monte Carlo paths")
      ->capture_default_str();
  sub_sb->add_option("--grid", sb.grid, "outer grid size (even)")
      ->capture_default_str();
  sub_sb->add_option("--level", sb.level, "confidence level")
      ->capture_default_str();
  sub_sb->add_flag("--analytic-only", sb.analytic_only,
                   "skip simulation, emit the series values only");

  detail::PathsOpts pa;
  CLI::App* sub_pa = app.add_subcommand(
      "paths", "sample paths; CSV schema: path_id,t,value");
  detail::add_io(sub_pa, pa.io, "csv");
  detail::add_mc(sub_pa, pa.mc);
  sub_pa->add_option("--kind", pa.kind, "which process to sample")
      ->check(CLI::IsMember({"z", "subordinator", "inverse"}))
      ->capture_default_str();
  sub_pa->add_option("--alpha", pa.alpha, "driver index")
      ->capture_default_str();
  sub_pa->add_option("--beta", pa.beta, "inner clock index")
      ->capture_default_str();
  sub_pa->add_option("--chi", pa.chi, "driver scale")->capture_default_str();
  sub_pa->add_option("--nu", pa.nu, "driver skewness")->capture_default_str();
  sub_pa->add_option("--scale-b", pa.scale_b, "inner clock scale")
      ->capture_default_str();
  sub_pa->add_option("--horizon", pa.horizon, "time horizon")
      ->capture_default_str();
  sub_pa->add_option("--grid", pa.grid, "points per path")
      ->capture_default_str();
  sub_pa->add_option("--paths", pa.paths, "number of paths")
      ->capture_default_str();

  detail::ConstantsOpts co;
  CLI::App* sub_co = app.add_subcommand(
      "constants", "derived constants; CSV schema: name,value");
  detail::add_io(sub_co, co.io, "json");
  sub_co->add_option("--alpha", co.alpha, "driver index")
      ->capture_default_str();
  sub_co->add_option("--beta", co.beta, "inner clock index")
      ->capture_default_str();
  sub_co->add_option("--chi", co.chi, "driver scale")->capture_default_str();
  sub_co->add_option("--nu", co.nu, "driver skewness")->capture_default_str();

  detail::LilOpts li;
  CLI::App* sub_li = app.add_subcommand(
      "lil", "iterated-logarithm statistics; CSV schema: path_id,stat");
  detail::add_io(sub_li, li.io, "csv");
  detail::add_mc(sub_li, li.mc);
  sub_li->add_option("--statistic", li.statistic, "limsup of Z or liminf of "
                                                  "the composed clock")
      ->check(CLI::IsMember({"limsup", "liminf"}))
      ->capture_default_str();
  sub_li->add_option("--alpha", li.alpha, "driver index")
      ->capture_default_str();
  sub_li->add_option("--beta", li.beta, "inner clock index")
      ->capture_default_str();
  sub_li->add_option("--chi", li.chi, "driver scale")->capture_default_str();
  sub_li->add_option("--paths", li.paths, "number of paths")
      ->capture_default_str();
  sub_li->add_option("--j-lo", li.j_lo, "lowest dyadic exponent (t = 2^j)")
      ->capture_default_str();
  sub_li->add_option("--j-hi", li.j_hi, "highest dyadic exponent")
      ->capture_default_str();
  sub_li->add_option("--ds", li.ds, "inner clock step (limsup only)")
      ->capture_default_str();
  sub_li->add_flag("--check", li.check,
                   "exit 3 when the envelope thresholds fail");

  detail::ModulusOpts mo;
  CLI::App* sub_mo = app.add_subcommand(
      "modulus", "modulus-of-continuity statistics; CSV schema: "
                 "path_id,stat");
  detail::add_io(sub_mo, mo.io, "csv");
  detail::add_mc(sub_mo, mo.mc);
  sub_mo->add_option("--alpha", mo.alpha, "driver index")
      ->capture_default_str();
  sub_mo->add_option("--beta", mo.beta, "inner clock index")
      ->capture_default_str();
  sub_mo->add_option("--chi", mo.chi, "driver scale")->capture_default_str();
  sub_mo->add_option("--paths", mo.paths, "number of paths")
      ->capture_default_str();
  sub_mo->add_option("--grid", mo.grid, "outer grid size")
      ->capture_default_str();
  sub_mo->add_option("--h-lo", mo.h_lo, "smallest lag exponent (h = 2^-p)")
      ->capture_default_str();
  sub_mo->add_option("--h-hi", mo.h_hi, "largest lag exponent")
      ->capture_default_str();
  sub_mo->add_flag("--check", mo.check,
                   "exit 3 unless the median is within a factor 3 of d");

  detail::IntegralTestOpts it;
  CLI::App* sub_it = app.add_subcommand(
      "integral-test", "classify one envelope test function; CSV schema: "
                       "which,family,a,b,small_time,outcome,basis");
  detail::add_io(sub_it, it.io, "json");
  sub_it->add_option("--which", it.which, "classifier")
      ->check(CLI::IsMember({"kolmogorov", "breiman", "hirsch"}))
      ->capture_default_str();
  sub_it->add_option("--family", it.family,
                     "loglog-power, loglog-plus-logloglog, pure-power, "
                     "power-over-log-power, or constant")
      ->capture_default_str();
  sub_it->add_option("--params", it.params, "'a' or 'a,b'")
      ->capture_default_str();
  sub_it->add_option("--alpha", it.alpha, "driver index")
      ->capture_default_str();
  sub_it->add_option("--beta", it.beta, "inner clock index")
      ->capture_default_str();
  sub_it->add_option("--chi", it.chi, "driver scale")->capture_default_str();
  sub_it->add_flag("--small-time", it.small_time,
                   "classify the t -> 0 version of the test");
  sub_it->add_flag("--numeric", it.numeric,
                   "force the numeric fallback and report partial sums");

  detail::BochnerOpts bo;
  CLI::App* sub_bo = app.add_subcommand(
      "bochner-check", "composed-subordinator distribution check; CSV "
                       "schema: s,mc,exact,sigma,zscore");
  detail::add_io(sub_bo, bo.io, "json");
  detail::add_mc(sub_bo, bo.mc);
  sub_bo->add_option("--alpha", bo.alpha, "outer composition index")
      ->capture_default_str();
  sub_bo->add_option("--beta", bo.beta, "inner clock index")
      ->capture_default_str();
  sub_bo->add_option("--chi", bo.chi, "driver scale")->capture_default_str();
  sub_bo->add_option("--n", bo.n, "number of draws")->capture_default_str();
  sub_bo->add_option("--s", bo.s,
                     "Laplace arguments for the check (default 0.5 1 2)");

  detail::LocalTimeOpts lt;
  CLI::App* sub_lt = app.add_subcommand(
      "local-time-check", "clock-identity check against the local-time "
                          "oracle; CSV schema: name,value");
  detail::add_io(sub_lt, lt.io, "json");
  detail::add_mc(sub_lt, lt.mc);
  sub_lt->add_option("--chi", lt.chi, "driver scale")->capture_default_str();
  sub_lt->add_option("--nu", lt.nu, "driver skewness")->capture_default_str();
  sub_lt->add_option("--n", lt.n, "number of samples")->capture_default_str();
  sub_lt->add_option("--oracle-grid", lt.oracle_grid,
                     "grid size for the local-time oracle")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const char* name = "";
  try {
    if (sub_ml->parsed()) {
      name = "ml";
      code = detail::run_ml(ml);
    } else if (sub_sb->parsed()) {
      name = "smallball";
      code = detail::run_smallball(sb);
    } else if (sub_pa->parsed()) {
      name = "paths";
      code = detail::run_paths(pa);
    } else if (sub_co->parsed()) {
      name = "constants";
      code = detail::run_constants(co);
    } else if (sub_li->parsed()) {
      name = "lil";
      code = detail::run_lil(li);
    } else if (sub_mo->parsed()) {
      name = "modulus";
      code = detail::run_modulus(mo);
    } else if (sub_it->parsed()) {
      name = "integral-test";
      code = detail::run_integral_test(it);
    } else if (sub_bo->parsed()) {
      name = "bochner-check";
      code = detail::run_bochner(bo);
    } else if (sub_lt->parsed()) {
      name = "local-time-check";
      code = detail::run_local_time(lt);
    }
  } catch (const std::exception& e) {
    std::cerr << "levyz: error: " << e.what() << "\n";
    return 2;
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  std::fprintf(stderr, "levyz %s: %.3f s\n", name, dt.count());
  return code;
}

}  // namespace levyz::cli
