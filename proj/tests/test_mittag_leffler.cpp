#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levyz/mittag_leffler.hpp"
#include "oracles.hpp"

using namespace levyz;

TEST_CASE("beta one half reduces to the scaled complementary error function",
          "[ml]") {
  for (double z :
       {0.01, 0.1, 0.5, 1.0, 1.7, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 50.0,
        100.0, 1000.0, 1e6}) {
    const double got = ml_neg(0.5, z);
    const double want = oracles::erfcx(z);
    REQUIRE(std::fabs(got - want) <= 1e-10 * want);
  }
}

TEST_CASE("acceptance grid for the erfc identity", "[ml]") {
  // E_{1/2}(-z) = exp(z^2) erfc(z).
  for (double z : {0.1, 1.0, 5.0, 20.0, 50.0}) {
    const double got = ml_neg(0.5, z);
    const double want = oracles::erfcx(z);
    REQUIRE(std::fabs(got - want) / want <= 1e-8);
  }
}

TEST_CASE("value at zero is one and the function decreases", "[ml]") {
  for (double beta : {0.3, 0.5, 0.7, 0.9}) {
    REQUIRE(ml_neg(beta, 0.0) == 1.0);
    double prev = 1.0;
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
      const double v = ml_neg(beta, z);
      REQUIRE(v > 0.0);
      REQUIRE(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("series and integral branches agree at the crossover", "[ml]") {
  for (double beta : {0.3, 0.5, 0.7, 0.9}) {
    MLConfig cfg;
    const double crossover = 0.5 * std::pow(12.0, beta);
    for (double z : {0.8 * crossover, crossover, 1.2 * crossover}) {
      const double s = detail::ml_neg_series(beta, z, cfg);
      const double i = detail::ml_neg_integral(beta, z, cfg);
      REQUIRE(std::fabs(s - i) <= 1e-10 * std::max(s, i));
    }
  }
}

TEST_CASE("tail asymptotic z E_beta(-z) Gamma(1-beta) -> 1", "[ml]") {
  for (double beta : {0.3, 0.5, 0.7}) {
    const double g = std::tgamma(1.0 - beta);
    double prev_err = 1.0;
    for (double z : {1e4, 1e5, 1e6}) {
      const double err = std::fabs(z * ml_neg(beta, z) * g - 1.0);
      REQUIRE(err < prev_err);
      prev_err = err;
    }
    REQUIRE(prev_err <= 1e-3);
  }
}

TEST_CASE("tail constant is the reciprocal reflection gamma", "[ml]") {
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double want = 1.0 / std::tgamma(1.0 - beta);
    REQUIRE(ml_tail_constant(beta) == Catch::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("laplace transform of the inverse clock is scaled mittag-leffler",
          "[ml]") {
  for (double beta : {0.3, 0.5, 0.7}) {
    for (double s : {0.5, 1.0, 2.0}) {
      for (double t : {0.5, 1.0, 4.0}) {
        const double want = ml_neg(beta, s * std::pow(t, beta));
        REQUIRE(laplace_E(beta, s, t) ==
                Catch::Approx(want).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("domain validation", "[ml]") {
  REQUIRE_THROWS(ml_neg(0.0, 1.0));
  REQUIRE_THROWS(ml_neg(1.5, 1.0));
  REQUIRE_THROWS(ml_neg(0.5, -1.0));
  REQUIRE(ml_neg(1.0, 1.0) == std::exp(-1.0));
  MLConfig bad;
  bad.tolerance = 0.0;
  REQUIRE_THROWS(bad.validate());
}
