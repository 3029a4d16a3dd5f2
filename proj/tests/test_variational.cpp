#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <rskrates/rsk.hpp>
#include <rskrates/variational.hpp>

#include "helpers.hpp"

using namespace rskrates;

using rskrates::CountProcess;
using rskrates::Distribution;
using rskrates::GapReport;
using rskrates::Rng;
using rskrates::Word;

TEST_CASE("full-lattice maximum equals the centered LI statistic", "[variational]") {
  Rng rng(424242);
  for (int rep = 0; rep < 400; ++rep) {
    int m = 2 + static_cast<int>(rng.next_u64() % 5);
    Distribution d = (rep % 5 == 0) ? Distribution::uniform(m) : testutil::random_dist(rng, m);
    int n = 1 + static_cast<int>(rng.next_u64() % 300);
    Word w = testutil::random_word(rng, d, n);
    CountProcess c(w, m);
    double lhs = max_z_full(c, d);
    double rhs = (li_dp(w, m) - n * d.p_max()) / std::sqrt(double(n));
    REQUIRE(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("lattice maxima agree with exhaustive enumeration", "[variational]") {
  Rng rng(31337);
  for (int rep = 0; rep < 150; ++rep) {
    int m = 2 + static_cast<int>(rng.next_u64() % 2);
    Distribution d = (rep % 4 == 0) ? Distribution::uniform(m) : testutil::random_dist(rng, m);
    int n = 1 + static_cast<int>(rng.next_u64() % 8);
    Word w = testutil::random_word(rng, d, n);
    CountProcess c(w, m);
    REQUIRE(std::abs(max_z_full(c, d) - max_z_enumerated(c, d, false)) <= 1e-12);
    REQUIRE(std::abs(max_z_restricted(c, d) - max_z_enumerated(c, d, true)) <= 1e-12);
  }
}

TEST_CASE("restricted maximum never exceeds the full maximum", "[variational]") {
  Rng rng(777);
  for (int rep = 0; rep < 200; ++rep) {
    int m = 2 + static_cast<int>(rng.next_u64() % 4);
    Distribution d = testutil::random_dist(rng, m);
    int n = 1 + static_cast<int>(rng.next_u64() % 100);
    Word w = testutil::random_word(rng, d, n);
    CountProcess c(w, m);
    REQUIRE(max_z_restricted(c, d) <= max_z_full(c, d));
  }
}

TEST_CASE("unique-maximum restriction collapses to one window", "[variational]") {
  // With a single maximal letter every other window is empty, so the
  // restricted maximum is just the centered count of that letter.
  Distribution d({0.7, 0.3});
  Word w{1, 2, 2, 1, 1, 2, 1};
  CountProcess c(w, 2);
  double expect = (4 - 7 * 0.7) / std::sqrt(7.0);
  REQUIRE(max_z_restricted(c, d) == Catch::Approx(expect).margin(1e-15));
}

TEST_CASE("event_a_n guards and an engineered violation", "[variational]") {
  Distribution uni({0.5, 0.5});
  Word w = sample_word(uni, 100, 3);
  CountProcess c(w, 2);
  REQUIRE_THROWS_AS(event_a_n(c, uni, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(event_a_n(c, uni, 1.0, 50), std::invalid_argument);  // n over cap
  REQUIRE(event_a_n(c, uni, 1.0));  // generous bound at n = 100

  // Word of all letter-2 under p = (0.99, 0.01): deviation n(1-p_2) = 1980
  // dwarfs (sigma_2 sqrt(n) + 1) * 9 log n ~ 372.
  Distribution skew({0.99, 0.01});
  Word bad(2000, 2);
  CountProcess cb(bad, 2);
  REQUIRE(!event_a_n(cb, skew, 1.0));
}

TEST_CASE("gap_report certifies nonnegative gaps under the stated bound", "[variational]") {
  Distribution d({0.6, 0.4});
  REQUIRE_THROWS_WITH(gap_report(CountProcess(Word{1, 2}, 2), Distribution::uniform(2), 1.0),
                      Catch::Matchers::ContainsSubstring("vacuous"));
  Rng rng(2718);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 50 + static_cast<int>(rng.next_u64() % 400);
    Word w = testutil::random_word(rng, d, n);
    CountProcess c(w, 2);
    GapReport r = gap_report(c, d, 1.0);
    REQUIRE(r.a == 9.0);
    REQUIRE(r.gap >= 0.0);
    REQUIRE(r.bound > 0.0);
    REQUIRE(r.within == (r.gap <= r.bound));
  }
}

TEST_CASE("gap precondition flag follows a log n <= 2 sqrt(n) delta", "[variational]") {
  Distribution d({0.6, 0.4});
  Word w = sample_word(d, 100, 9);
  GapReport r = gap_report(CountProcess(w, 2), d, 1.0);
  // a log n = 9 log 100 = 41.4 > 2 sqrt(100) * 0.2 = 4
  REQUIRE(!r.precondition_ok);

  Distribution wide({0.9, 0.1});
  Word w2 = sample_word(wide, 2000, 9);
  GapReport r2 = gap_report(CountProcess(w2, 2), wide, 1.0);
  // a log n = 68.4 <= 2 sqrt(2000) * 0.8 = 71.6
  REQUIRE(r2.precondition_ok);
}
