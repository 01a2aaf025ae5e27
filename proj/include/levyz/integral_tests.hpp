#pragma once

// =====================================================================
// Convergence classification of the upper-function (Kolmogorov), liminf
// refinement (Breiman), and lower-function (Hirsch) integral tests over
// a catalog of envelope families.
//
// Family realizations differ per test so each family straddles that
// test's critical boundary:
//   Kolmogorov f(t):
//     LogLogPower          (a loglog t)^{(alpha-beta)/alpha}
//     LogLogPlusLogLogLog  (a loglog t + b logloglog t)^{(alpha-beta)/alpha}
//     PurePower            t^p
//     PowerOverLogPower    t^p / |log t|^q
//     Constant             c
//   Breiman phi(t): the reciprocal envelopes
//     (c loglog t)^{-1/lambda}, (a loglog + b logloglog)^{-1/lambda},
//     t^{-p}, t^{-p} |log t|^q, c
//   Hirsch phi(t): perturbations of the critical power t^{beta/alpha}
//     t^{beta/alpha} (loglog t)^{-a},
//     t^{beta/alpha} / (|log t|^a (loglog t)^b),
//     t^p, t^p / |log t|^q, c
//
// Every inner logarithm enters through |log t|, so the t -> 1/t
// substitution maps each family to itself with power signs flipped;
// small-time classification reuses the large-time casework through that
// reflection (Hirsch carries its own small-time measure t^{theta-1} dt).
//
// The numeric fallback integrates over doubling horizons [t0, 2^k t0]
// and inspects the trailing five doublings: sustained partial-sum growth
// by a factor >= 1.01 per doubling reads as divergence, increment decay
// by a factor <= 0.97 per doubling (or underflow to zero) as
// convergence, anything else as Inconclusive.  Boundary and
// log-rate cases deliberately land in Inconclusive: no finite-horizon
// ratio trend can resolve them, and a wrong answer is worse than none.
// =====================================================================

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levyz/asymptotics.hpp"
#include "levyz/errors.hpp"

namespace levyz {

enum class TestFamily {
  LogLogPower,
  LogLogPlusLogLogLog,
  PurePower,
  PowerOverLogPower,
  Constant
};

// a holds the first parameter (a, p, or c); b holds the second (b or q).
struct TestFunctionSpec {
  TestFamily family = TestFamily::Constant;
  double a = 1.0;
  double b = 0.0;

  void validate() const {
    switch (family) {
      case TestFamily::LogLogPower:
        require(a > 0.0, "DomainError: LogLogPower needs a > 0");
        break;
      case TestFamily::LogLogPlusLogLogLog:
        require(a > 0.0, "DomainError: LogLogPlusLogLogLog needs a > 0");
        require(b >= 0.0, "DomainError: LogLogPlusLogLogLog needs b >= 0");
        break;
      case TestFamily::PurePower:
      case TestFamily::PowerOverLogPower:
        break;
      case TestFamily::Constant:
        require(a > 0.0, "DomainError: Constant needs c > 0");
        break;
    }
  }
};

enum class TestOutcome { Converges, Diverges, Inconclusive };
enum class VerdictBasis { Analytic, Numeric };

struct Verdict {
  TestOutcome outcome = TestOutcome::Inconclusive;
  VerdictBasis basis = VerdictBasis::Analytic;
};

inline const char* to_string(TestOutcome o) {
  switch (o) {
    case TestOutcome::Converges: return "Converges";
    case TestOutcome::Diverges: return "Diverges";
    default: return "Inconclusive";
  }
}

inline const char* to_string(VerdictBasis b) {
  return b == VerdictBasis::Analytic ? "Analytic" : "Numeric";
}

inline const char* to_string(TestFamily f) {
  switch (f) {
    case TestFamily::LogLogPower: return "loglog-power";
    case TestFamily::LogLogPlusLogLogLog: return "loglog-plus-logloglog";
    case TestFamily::PurePower: return "pure-power";
    case TestFamily::PowerOverLogPower: return "power-over-log-power";
    default: return "constant";
  }
}

namespace detail {

constexpr double kBoundaryTol = 1e-9;

// |log t| and log|log t|, defined away from the unit band |log t| <= 1.
inline double abs_log(double t) {
  require(t > 0.0, "DomainError: t must be positive");
  return std::fabs(std::log(t));
}

inline double loglog(double t) {
  const double l = abs_log(t);
  require(l > 1.0, "DomainError: need |log t| > 1 for nested logarithms");
  return std::log(l);
}

// Raw envelope values.  Positivity is checked by the caller.
inline double kolmogorov_f(const TestFunctionSpec& f, double t, double alpha,
                           double beta) {
  switch (f.family) {
    case TestFamily::LogLogPower:
      return std::pow(f.a * loglog(t), (alpha - beta) / alpha);
    case TestFamily::LogLogPlusLogLogLog: {
      const double ll = loglog(t);
      require(ll > 0.0, "DomainError: need loglog t > 0 for logloglog");
      const double arg = f.a * ll + f.b * std::log(ll);
      require(arg > 0.0, "DomainError: envelope argument nonpositive");
      return std::pow(arg, (alpha - beta) / alpha);
    }
    case TestFamily::PurePower:
      return std::pow(t, f.a);
    case TestFamily::PowerOverLogPower:
      return std::pow(t, f.a) * std::pow(abs_log(t), -f.b);
    default:
      return f.a;
  }
}

inline double breiman_phi(const TestFunctionSpec& phi, double t,
                          double lambda) {
  switch (phi.family) {
    case TestFamily::LogLogPower:
      return std::pow(phi.a * loglog(t), -1.0 / lambda);
    case TestFamily::LogLogPlusLogLogLog: {
      const double ll = loglog(t);
      require(ll > 0.0, "DomainError: need loglog t > 0 for logloglog");
      const double arg = phi.a * ll + phi.b * std::log(ll);
      require(arg > 0.0, "DomainError: envelope argument nonpositive");
      return std::pow(arg, -1.0 / lambda);
    }
    case TestFamily::PurePower:
      return std::pow(t, -phi.a);
    case TestFamily::PowerOverLogPower:
      return std::pow(t, -phi.a) * std::pow(abs_log(t), phi.b);
    default:
      return phi.a;
  }
}

inline double hirsch_phi(const TestFunctionSpec& phi, double t, double theta) {
  switch (phi.family) {
    case TestFamily::LogLogPower:
      return std::pow(t, theta) * std::pow(loglog(t), -phi.a);
    case TestFamily::LogLogPlusLogLogLog:
      return std::pow(t, theta) * std::pow(abs_log(t), -phi.a) *
             std::pow(loglog(t), -phi.b);
    case TestFamily::PurePower:
      return std::pow(t, phi.a);
    case TestFamily::PowerOverLogPower:
      return std::pow(t, phi.a) * std::pow(abs_log(t), -phi.b);
    default:
      return phi.a;
  }
}

inline bool near(double x, double y) { return std::fabs(x - y) <= kBoundaryTol; }

}  // namespace detail

// f(t)^{1/(alpha-beta)} exp(-mu f(t)^{alpha/(alpha-beta)}) / t.
// Defined for t with |log t| > 1 (both tails), so the small-time variant
// evaluates the same function at t < 1/e.
inline double kolmogorov_integrand(const TestFunctionSpec& f, double t,
                                   double alpha, double beta, double mu) {
  f.validate();
  require(mu > 0.0, "DomainError: mu must be positive");
  require(alpha > beta, "DomainError: need alpha > beta");
  const double v = detail::kolmogorov_f(f, t, alpha, beta);
  require(v > 0.0, "DomainError: test function must be positive");
  const double inner = mu * std::pow(v, alpha / (alpha - beta));
  return std::pow(v, 1.0 / (alpha - beta)) * std::exp(-inner) / t;
}

// phi(t)^{-lambda/2} exp(-mu phi(t)^{-lambda}) / t.
inline double breiman_integrand(const TestFunctionSpec& phi, double t,
                                double mu, double lambda) {
  phi.validate();
  require(mu > 0.0, "DomainError: mu must be positive");
  require(lambda > 0.0, "DomainError: lambda must be positive");
  const double w = detail::breiman_phi(phi, t, lambda);
  require(w > 0.0, "DomainError: test function must be positive");
  return std::pow(w, -lambda / 2.0) * std::exp(-mu * std::pow(w, -lambda)) / t;
}

// phi(t) t^{-(1+theta)} with theta = beta/alpha.
inline double hirsch_integrand(const TestFunctionSpec& phi, double t,
                               double alpha, double beta) {
  phi.validate();
  const double theta = beta / alpha;
  const double w = detail::hirsch_phi(phi, t, theta);
  require(w > 0.0, "DomainError: test function must be positive");
  return w * std::pow(t, -(1.0 + theta));
}

namespace detail {

// Large-time analytic casework after the y = log t reduction.  Each case
// is one comparison against the test's critical exponent; boundaries
// resolve to Diverges for Kolmogorov/Breiman upper families and to the
// stated side for Hirsch.
inline std::optional<TestOutcome> analytic_kolmogorov(
    const TestFunctionSpec& f, double alpha, double beta, double mu) {
  const double tol = kBoundaryTol;
  switch (f.family) {
    case TestFamily::LogLogPower:
      // integrand ~ (a log y)^{1/alpha} y^{-mu a} dy
      return mu * f.a > 1.0 + tol ? TestOutcome::Converges
                                  : TestOutcome::Diverges;
    case TestFamily::LogLogPlusLogLogLog: {
      const double x = mu * f.a;
      if (x > 1.0 + tol) return TestOutcome::Converges;
      if (x < 1.0 - tol) return TestOutcome::Diverges;
      // critical first slot: integrand ~ (log y)^{1/alpha - mu b} dy / y
      return mu * f.b > 1.0 + 1.0 / alpha + tol ? TestOutcome::Converges
                                                : TestOutcome::Diverges;
    }
    case TestFamily::PurePower:
      if (near(f.a, 0.0)) return TestOutcome::Diverges;
      // p > 0: the exponential factor wins; p < 0: integrand ~ t^{p/(alpha-beta)-1}
      return TestOutcome::Converges;
    case TestFamily::PowerOverLogPower: {
      if (!near(f.a, 0.0)) return TestOutcome::Converges;
      if (near(f.b, 0.0)) return TestOutcome::Diverges;
      if (f.b < 0.0) return TestOutcome::Converges;
      // f = |log t|^{-q}: integrand ~ y^{-q/(alpha-beta)} dy
      return f.b > (alpha - beta) * (1.0 + tol) ? TestOutcome::Converges
                                                : TestOutcome::Diverges;
    }
    case TestFamily::Constant:
      return TestOutcome::Diverges;
  }
  return std::nullopt;
}

inline std::optional<TestOutcome> analytic_breiman(const TestFunctionSpec& phi,
                                                   double mu, double lambda) {
  const double tol = kBoundaryTol;
  switch (phi.family) {
    case TestFamily::LogLogPower:
      // integrand ~ (c log y)^{1/2} y^{-mu c} dy
      return mu * phi.a > 1.0 + tol ? TestOutcome::Converges
                                    : TestOutcome::Diverges;
    case TestFamily::LogLogPlusLogLogLog: {
      const double x = mu * phi.a;
      if (x > 1.0 + tol) return TestOutcome::Converges;
      if (x < 1.0 - tol) return TestOutcome::Diverges;
      // critical first slot: integrand ~ (log y)^{1/2 - mu b} dy / y
      return mu * phi.b > 1.5 + tol ? TestOutcome::Converges
                                    : TestOutcome::Diverges;
    }
    case TestFamily::PurePower:
      if (near(phi.a, 0.0)) return TestOutcome::Diverges;
      return TestOutcome::Converges;
    case TestFamily::PowerOverLogPower: {
      if (!near(phi.a, 0.0)) return TestOutcome::Converges;
      if (near(phi.b, 0.0)) return TestOutcome::Diverges;
      if (phi.b < 0.0) return TestOutcome::Converges;
      // phi = |log t|^q growing: integrand ~ y^{-q lambda/2} dy
      return phi.b * lambda / 2.0 > 1.0 + tol ? TestOutcome::Converges
                                              : TestOutcome::Diverges;
    }
    case TestFamily::Constant:
      return TestOutcome::Diverges;
  }
  return std::nullopt;
}

inline std::optional<TestOutcome> analytic_hirsch(const TestFunctionSpec& phi,
                                                  double theta,
                                                  bool small_time) {
  const double tol = kBoundaryTol;
  switch (phi.family) {
    case TestFamily::LogLogPower:
      // measure dt/t (loglog t)^{-a}: diverges for every a
      return TestOutcome::Diverges;
    case TestFamily::LogLogPlusLogLogLog: {
      // measure dt / (t |log t|^a (loglog t)^b): y-integral dy/(y^a (log y)^b)
      if (phi.a > 1.0 + tol) return TestOutcome::Converges;
      if (phi.a < 1.0 - tol) return TestOutcome::Diverges;
      return phi.b > 1.0 + tol ? TestOutcome::Converges
                               : TestOutcome::Diverges;
    }
    case TestFamily::PurePower: {
      if (near(phi.a, theta)) return TestOutcome::Diverges;
      const bool conv = small_time ? phi.a > theta : phi.a < theta;
      return conv ? TestOutcome::Converges : TestOutcome::Diverges;
    }
    case TestFamily::PowerOverLogPower: {
      if (!near(phi.a, theta)) {
        const bool conv = small_time ? phi.a > theta : phi.a < theta;
        return conv ? TestOutcome::Converges : TestOutcome::Diverges;
      }
      // critical power: integral of dt/(t |log t|^q)
      return phi.b > 1.0 + tol ? TestOutcome::Converges
                               : TestOutcome::Diverges;
    }
    case TestFamily::Constant:
      return small_time ? TestOutcome::Diverges : TestOutcome::Converges;
  }
  return std::nullopt;
}

// Under t -> 1/t, |log t| and loglog families are fixed and power signs
// flip; Kolmogorov and Breiman carry the reflection-invariant measure
// dt/t, so their small-time verdict is the large-time verdict of the
// reflected spec.
inline TestFunctionSpec reflect(const TestFunctionSpec& s) {
  TestFunctionSpec r = s;
  if (s.family == TestFamily::PurePower ||
      s.family == TestFamily::PowerOverLogPower)
    r.a = -s.a;
  return r;
}

}  // namespace detail

struct NumericOptions {
  int doublings = 60;
  int window = 5;
  double grow_delta = 0.01;
  double shrink_ratio = 0.97;
  int points_per_segment = 64;
  bool small_time = false;
};

struct NumericReport {
  Verdict verdict;
  std::vector<double> partials;
};

namespace detail {

// Partial integrals over doubling horizons [t0, 2^k t0], computed in
// y = |log t| with composite Simpson per doubling segment.
template <typename Integrand>
NumericReport numeric_classify(Integrand&& g_of_t, double y0,
                               const NumericOptions& opts) {
  require(opts.doublings >= opts.window + 1 && opts.window >= 2,
          "DomainError: need more doublings than the trend window");
  require(opts.points_per_segment >= 2 &&
              opts.points_per_segment % 2 == 0,
          "DomainError: points_per_segment must be even");
  const double ln2 = std::log(2.0);
  auto g_of_y = [&](double y) {
    const double t = opts.small_time ? std::exp(-y) : std::exp(y);
    return g_of_t(t) * t;
  };
  std::vector<double> increments;
  std::vector<double> partials;
  double total = 0.0;
  for (int k = 1; k <= opts.doublings; ++k) {
    const double lo = y0 + (k - 1) * ln2;
    const double h = ln2 / opts.points_per_segment;
    double sum = g_of_y(lo) + g_of_y(lo + ln2);
    for (int j = 1; j < opts.points_per_segment; ++j)
      sum += g_of_y(lo + j * h) * (j % 2 == 1 ? 4.0 : 2.0);
    const double seg = sum * h / 3.0;
    increments.push_back(seg);
    total += seg;
    partials.push_back(total);
  }
  const std::size_t n = partials.size();
  bool grows = true;
  bool shrinks = true;
  for (std::size_t k = n - opts.window; k < n; ++k) {
    const double prev_total = partials[k - 1];
    const double r = prev_total > 0.0
                         ? partials[k] / prev_total
                         : (increments[k] > 0.0 ? 2.0 : 1.0);
    if (r < 1.0 + opts.grow_delta) grows = false;
    const double q = increments[k - 1] > 0.0
                         ? increments[k] / increments[k - 1]
                         : (increments[k] > 0.0 ? 2.0 : 0.0);
    if (q > opts.shrink_ratio) shrinks = false;
  }
  NumericReport rep;
  rep.partials = std::move(partials);
  rep.verdict.basis = VerdictBasis::Numeric;
  if (grows == shrinks)
    rep.verdict.outcome = TestOutcome::Inconclusive;
  else
    rep.verdict.outcome =
        grows ? TestOutcome::Diverges : TestOutcome::Converges;
  return rep;
}

inline double numeric_y0(const TestFunctionSpec& s, bool nested_logloglog) {
  // Start one level higher where logloglog must be defined and positive.
  return s.family == TestFamily::LogLogPlusLogLogLog && nested_logloglog
             ? std::exp(1.0)
             : 2.0;
}

}  // namespace detail

inline NumericReport numeric_classify_kolmogorov(
    const TestFunctionSpec& f, double alpha, double beta, double chi,
    const NumericOptions& opts = {}) {
  f.validate();
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  const double y0 = detail::numeric_y0(f, true);
  return detail::numeric_classify(
      [&](double t) { return kolmogorov_integrand(f, t, alpha, beta, dc.mu); },
      y0, opts);
}

inline NumericReport numeric_classify_breiman(const TestFunctionSpec& phi,
                                              double alpha, double beta,
                                              double chi,
                                              const NumericOptions& opts = {}) {
  phi.validate();
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  const double y0 = detail::numeric_y0(phi, true);
  return detail::numeric_classify(
      [&](double t) { return breiman_integrand(phi, t, dc.mu, dc.lambda); },
      y0, opts);
}

inline NumericReport numeric_classify_hirsch(const TestFunctionSpec& phi,
                                             double alpha, double beta,
                                             const NumericOptions& opts = {}) {
  phi.validate();
  require(alpha > 0.0 && beta > 0.0 && beta < alpha,
          "DomainError: need 0 < beta < alpha");
  return detail::numeric_classify(
      [&](double t) { return hirsch_integrand(phi, t, alpha, beta); },
      detail::numeric_y0(phi, false), opts);
}

inline Verdict classify_kolmogorov(const TestFunctionSpec& f, double alpha,
                                   double beta, double chi,
                                   bool small_time = false) {
  f.validate();
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  const TestFunctionSpec spec = small_time ? detail::reflect(f) : f;
  if (const auto out = detail::analytic_kolmogorov(spec, alpha, beta, dc.mu))
    return {*out, VerdictBasis::Analytic};
  NumericOptions opts;
  opts.small_time = small_time;
  return numeric_classify_kolmogorov(f, alpha, beta, chi, opts).verdict;
}

inline Verdict classify_breiman(const TestFunctionSpec& phi, double alpha,
                                double beta, double chi,
                                bool small_time = false) {
  phi.validate();
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  const TestFunctionSpec spec = small_time ? detail::reflect(phi) : phi;
  if (const auto out = detail::analytic_breiman(spec, dc.mu, dc.lambda))
    return {*out, VerdictBasis::Analytic};
  NumericOptions opts;
  opts.small_time = small_time;
  return numeric_classify_breiman(phi, alpha, beta, chi, opts).verdict;
}

inline Verdict classify_hirsch(const TestFunctionSpec& phi, double alpha,
                               double beta, bool small_time = false) {
  phi.validate();
  require(alpha > 0.0 && beta > 0.0 && beta < alpha,
          "DomainError: need 0 < beta < alpha");
  if (const auto out =
          detail::analytic_hirsch(phi, beta / alpha, small_time))
    return {*out, VerdictBasis::Analytic};
  NumericOptions opts;
  opts.small_time = small_time;
  return numeric_classify_hirsch(phi, alpha, beta, opts).verdict;
}

// Cross-validates the growth constants against the classifier boundaries:
// the Kolmogorov critical parameter a* = 1/mu must map onto
// kappa_consistent = (a*)^{(alpha-beta)/alpha}, and the Breiman critical
// parameter c* = 1/mu onto c_liminf = (c*)^{-1/lambda}.
struct ConsistencyReport {
  double a_star = 0.0;
  double kappa_from_kolmogorov = 0.0;
  double kappa_consistent = 0.0;
  double kappa_paper = 0.0;
  double c_star = 0.0;
  double c_liminf_from_breiman = 0.0;
  double c_liminf = 0.0;
  bool kappa_matches = false;
  bool c_liminf_matches = false;
  bool paper_constant_differs = false;
  std::string note;
};

inline ConsistencyReport consistency_check(double alpha, double beta,
                                           double chi) {
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  ConsistencyReport r;
  r.a_star = 1.0 / dc.mu;
  r.kappa_from_kolmogorov = std::pow(r.a_star, (alpha - beta) / alpha);
  r.kappa_consistent = dc.kappa_consistent;
  r.kappa_paper = dc.kappa_paper;
  r.c_star = 1.0 / dc.mu;
  r.c_liminf_from_breiman = std::pow(r.c_star, -1.0 / dc.lambda);
  r.c_liminf = dc.c_liminf;
  const auto close = [](double x, double y) {
    return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x),
                                                 std::fabs(y)});
  };
  r.kappa_matches = close(r.kappa_from_kolmogorov, r.kappa_consistent);
  r.c_liminf_matches = close(r.c_liminf_from_breiman, r.c_liminf);
  r.paper_constant_differs = !close(r.kappa_paper, r.kappa_consistent);
  if (!r.kappa_matches)
    r.note = "kolmogorov critical parameter does not reproduce "
             "kappa_consistent";
  else if (!r.c_liminf_matches)
    r.note = "breiman critical parameter does not reproduce c_liminf";
  else if (r.paper_constant_differs)
    r.note = "stated limsup constant kappa_paper differs from the "
             "classifier-consistent value kappa_consistent; both reported";
  else
    r.note = "all constants consistent";
  return r;
}

}  // namespace levyz
