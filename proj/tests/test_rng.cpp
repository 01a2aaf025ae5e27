#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "levyz/rng.hpp"
#include "levyz/special.hpp"
#include "levyz/stats.hpp"
#include "oracles.hpp"

using namespace levyz;

TEST_CASE("same seed and stream reproduce the sequence", "[rng]") {
  Philox a(42, 7);
  Philox b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams diverge immediately", "[rng]") {
  Philox a(42, 0);
  Philox b(42, 1);
  int equal = 0;
  for (int i = 0; i < 256; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  REQUIRE(equal == 0);
}

TEST_CASE("different seeds diverge immediately", "[rng]") {
  Philox a(1, 0);
  Philox b(2, 0);
  int equal = 0;
  for (int i = 0; i < 256; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  REQUIRE(equal == 0);
}

TEST_CASE("uniform draws live strictly inside (0,1)", "[rng]") {
  Philox g(9001, 0);
  double mn = 1.0;
  double mx = 0.0;
  double mean = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = g.next_double();
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    mean += u;
  }
  mean /= n;
  REQUIRE(mn > 0.0);
  REQUIRE(mx < 1.0);
  REQUIRE(std::fabs(mean - 0.5) < 0.005);
}

TEST_CASE("uniform draws pass a KS test", "[rng]") {
  Philox g(123, 5);
  std::vector<double> u(20000);
  for (auto& x : u) x = g.next_double();
  const KSResult ks = ks_one_sample(u, [](double x) { return x; });
  REQUIRE(ks.p_value > 0.001);
}

TEST_CASE("gaussian draws pass a KS test against the normal cdf", "[rng]") {
  Philox g(321, 2);
  std::vector<double> x(20000);
  for (auto& v : x) v = g.next_gaussian();
  const KSResult ks =
      ks_one_sample(x, [](double t) { return oracles::normal_cdf(t); });
  REQUIRE(ks.p_value > 0.001);
  double mean = 0.0;
  double var = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size()) - 1.0;
  REQUIRE(std::fabs(mean) < 0.03);
  REQUIRE(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("exponential draws are positive with unit mean", "[rng]") {
  Philox g(77, 0);
  double mean = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double e = g.next_exponential();
    REQUIRE(e > 0.0);
    mean += e;
  }
  mean /= n;
  REQUIRE(std::fabs(mean - 1.0) < 0.02);
}
