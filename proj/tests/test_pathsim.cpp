#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "levyz/pathsim.hpp"
#include "levyz/stats.hpp"
#include "oracles.hpp"

using namespace levyz;

TEST_CASE("subordinator paths start at zero and never decrease",
          "[pathsim]") {
  Philox g(100, 0);
  const GridPath d =
      simulate_subordinator_path(SubordinatorParams{0.7, 2.0}, 3.0, 257, g);
  REQUIRE(d.size() == 257);
  REQUIRE(d.values.front() == 0.0);
  REQUIRE(d.times.front() == 0.0);
  REQUIRE(d.times.back() == Catch::Approx(3.0).epsilon(1e-12));
  for (std::size_t i = 1; i < d.size(); ++i)
    REQUIRE(d.values[i] >= d.values[i - 1]);
}

TEST_CASE("inverse of a handcrafted clock is the first-passage time",
          "[pathsim]") {
  GridPath d;
  d.times = {0.0, 1.0, 2.0};
  d.values = {0.0, 2.0, 5.0};
  d.kind = PathKind::RightContinuousStep;
  const GridPath e = inverse_path(d, {0.0, 1.0, 1.9, 2.0, 4.9});
  REQUIRE(e.values == std::vector<double>{1.0, 1.0, 1.0, 2.0, 2.0});
  REQUIRE_THROWS_WITH(inverse_path(d, {5.0}),
                      Catch::Matchers::ContainsSubstring("QueryBeyondRange"));
  REQUIRE_THROWS(inverse_path(d, {1.0, 1.0}));
}

TEST_CASE("composed path variance matches the inverse-clock mean",
          "[pathsim]") {
  CompositionSpec spec;
  spec.driver = validate_params(2.0, 0.0, 2.0);
  spec.inner = SubordinatorParams{0.5, 1.0};
  spec.horizon = 1.0;
  spec.grid_size = 256;
  const int n = 4000;
  double acc = 0.0;
  double acc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Philox g(4242, static_cast<std::uint64_t>(i));
    const GridPath z = compose_z(spec, g);
    const double zt = z.values.back();
    acc += zt * zt;
    acc2 += zt * zt * zt * zt;
  }
  const double m2 = acc / n;
  const double sigma = std::sqrt((acc2 / n - m2 * m2) / n);
  // E[Z(1)^2] = E[E(1)] = 1/Gamma(1.5) for the standard driver.
  const double expected = 1.0 / std::tgamma(1.5);
  REQUIRE(std::fabs(m2 - expected) < 5.0 * sigma + 0.01);
}

TEST_CASE("inverse path is nondecreasing and spans the horizon",
          "[pathsim]") {
  Philox g(9, 1);
  const GridPath e =
      simulate_inverse_path(SubordinatorParams{0.5, 1.0}, 2.0, 128, g);
  REQUIRE(e.size() == 128);
  REQUIRE(e.times.front() == 0.0);
  REQUIRE(e.times.back() == 2.0);
  for (std::size_t i = 1; i < e.size(); ++i)
    REQUIRE(e.values[i] >= e.values[i - 1]);
}

TEST_CASE("bochner draws have the composed laplace transform", "[pathsim]") {
  const double alpha = 2.0;
  const double beta = 0.5;
  const double chi = 1.0;
  const DerivedConstants dc = derive_constants(alpha, beta, chi);
  Philox g(1357, 0);
  const int n = 40000;
  for (double s : {0.5, 1.0, 2.0}) {
    double acc = 0.0;
    double acc2 = 0.0;
    Philox gg = g;
    for (int i = 0; i < n; ++i) {
      const double e = std::exp(-s * bochner_sample(beta, alpha, chi, 1.0, gg));
      acc += e;
      acc2 += e * e;
    }
    const double mean = acc / n;
    const double sigma = std::sqrt((acc2 / n - mean * mean) / n);
    const double exact = std::exp(-dc.b * std::pow(s, dc.theta));
    REQUIRE(std::fabs(mean - exact) < 5.0 * sigma);
  }
}

TEST_CASE("local time clock pairs beta one half with the stone constant",
          "[pathsim]") {
  const StableParams y = validate_params(2.0, 0.0, 2.0);
  const LocalTimeClock c = local_time_clock(2.0, y);
  REQUIRE(c.beta == Catch::Approx(0.5).epsilon(1e-14));
  REQUIRE(c.rho == Catch::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("local time oracle matches the half-normal law", "[pathsim]") {
  const int n = 4000;
  std::vector<double> l(n);
  for (int i = 0; i < n; ++i) {
    Philox g(8080, static_cast<std::uint64_t>(i));
    l[static_cast<std::size_t>(i)] =
        levy_local_time_oracle(1.0, 4096, g).values.back();
  }
  const KSResult ks = ks_one_sample(l, [](double x) {
    return x <= 0.0 ? 0.0 : 2.0 * oracles::normal_cdf(x) - 1.0;
  });
  REQUIRE(ks.p_value > 0.001);
}
