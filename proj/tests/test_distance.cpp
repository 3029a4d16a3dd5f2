#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <rskrates/distance.hpp>

#include "helpers.hpp"

using namespace rskrates;

using rskrates::EmpiricalSample;
using rskrates::RateFit;
using rskrates::Rng;
using rskrates::dkw_band;
using rskrates::ks_two_sample;
using rskrates::rate_fit;
using rskrates::wasserstein_p;

TEST_CASE("EmpiricalSample sorts and rejects empty input", "[distance]") {
  REQUIRE_THROWS_AS(EmpiricalSample({}), std::invalid_argument);
  EmpiricalSample s({3.0, 1.0, 2.0});
  REQUIRE(s.values() == std::vector<double>{1.0, 2.0, 3.0});
  REQUIRE(s.n_samples() == 3);
}

TEST_CASE("two-sample KS on hand-checked cases", "[distance]") {
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 2.0}), EmpiricalSample({1.5, 2.5})) == 0.5);
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 2.0}), EmpiricalSample({1.0, 2.0})) == 0.0);
  REQUIRE(ks_two_sample(EmpiricalSample({1.0}), EmpiricalSample({2.0})) == 1.0);
  // ties consumed at the pooled point before the gap is measured
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 1.0, 2.0, 2.0}), EmpiricalSample({1.0, 2.0})) ==
          0.0);
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 1.0, 3.0}), EmpiricalSample({1.0, 2.0, 3.0})) ==
          Catch::Approx(1.0 / 3.0).margin(1e-15));
}

TEST_CASE("KS is symmetric and bounded by 1", "[distance]") {
  Rng rng(88);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> a(20), b(30);
    for (double& v : a) v = rng.next_gaussian();
    for (double& v : b) v = rng.next_gaussian() + 0.3;
    EmpiricalSample sa(a), sb(b);
    double d1 = ks_two_sample(sa, sb);
    REQUIRE(d1 == ks_two_sample(sb, sa));
    REQUIRE(d1 >= 0.0);
    REQUIRE(d1 <= 1.0);
  }
}

TEST_CASE("DKW band frozen values and guards", "[distance]") {
  // delta = 2/e^2 makes log(2/delta) = 2, so the band is exactly 1 at n = 1.
  REQUIRE(dkw_band(1, 2.0 / (2.71828182845904523536 * 2.71828182845904523536)) ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE(dkw_band(200000, 1e-3) == Catch::Approx(0.004359157733881076).epsilon(1e-14));
  REQUIRE_THROWS_AS(dkw_band(0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(dkw_band(10, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(dkw_band(10, 1.0), std::invalid_argument);
}

TEST_CASE("wasserstein_p hand values, ordering, and triangle inequality", "[distance]") {
  EmpiricalSample a({0.0, 1.0}), b({1.0, 2.0});
  REQUIRE(wasserstein_p(a, b, 1.0) == 1.0);
  REQUIRE(wasserstein_p(a, b, 2.0) == 1.0);
  REQUIRE(wasserstein_p(a, a, 1.0) == 0.0);
  REQUIRE_THROWS_AS(wasserstein_p(a, EmpiricalSample({1.0}), 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(wasserstein_p(a, b, 0.5), std::invalid_argument);

  Rng rng(4096);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(40), y(40), z(40);
    for (int i = 0; i < 40; ++i) {
      x[i] = rng.next_gaussian();
      y[i] = 0.5 * rng.next_gaussian() + 1.0;
      z[i] = 2.0 * rng.next_gaussian() - 0.5;
    }
    EmpiricalSample sx(x), sy(y), sz(z);
    double w1 = wasserstein_p(sx, sy, 1.0);
    double w2 = wasserstein_p(sx, sy, 2.0);
    double w3 = wasserstein_p(sx, sy, 3.0);
    REQUIRE(w1 <= w2 + 1e-12);  // Jensen: W_p nondecreasing in p
    REQUIRE(w2 <= w3 + 1e-12);
    REQUIRE(wasserstein_p(sx, sz, 1.0) <=
            wasserstein_p(sx, sy, 1.0) + wasserstein_p(sy, sz, 1.0) + 1e-12);
  }
}

TEST_CASE("rate_fit recovers exact power laws", "[distance]") {
  std::vector<std::pair<double, double>> half;
  for (double n : {10.0, 100.0, 1000.0, 30000.0}) half.emplace_back(n, 1.0 / std::sqrt(n));
  RateFit f = rate_fit(half);
  REQUIRE(f.slope == Catch::Approx(-0.5).margin(1e-12));

  std::vector<std::pair<double, double>> lin;
  for (double n : {10.0, 100.0, 1000.0}) lin.emplace_back(n, 7.0 / n);
  REQUIRE(rate_fit(lin).slope == Catch::Approx(-1.0).margin(1e-12));

  // c_hat = max d sqrt(n) / (log n)^2 over the points
  std::vector<std::pair<double, double>> pts{{100.0, 0.1}, {10000.0, 0.02}};
  double c1 = 0.1 * 10.0 / std::pow(std::log(100.0), 2);
  double c2 = 0.02 * 100.0 / std::pow(std::log(10000.0), 2);
  REQUIRE(rate_fit(pts).c_hat == Catch::Approx(std::max(c1, c2)).margin(1e-14));
}

TEST_CASE("rate_fit guards degenerate inputs", "[distance]") {
  REQUIRE_THROWS_AS(rate_fit({{100.0, 0.1}}), std::invalid_argument);
  REQUIRE_THROWS_AS(rate_fit({{100.0, 0.1}, {100.0, 0.2}}), std::invalid_argument);
  REQUIRE_THROWS_AS(rate_fit({{100.0, 0.1}, {200.0, 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(rate_fit({{1.0, 0.1}, {200.0, 0.05}}), std::invalid_argument);
}
