#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsk.hpp"
#include "words.hpp"

namespace rskrates {

// Centering constant for the LCI statistic; supplied by the caller (its
// variational formula is outside this library's scope). A self-consistent
// estimate is mean(LCI_n)/n at the largest simulated n.
struct LciConfig {
  double e_max;
  explicit LciConfig(double e) : e_max(e) {
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("LciConfig: e_max outside (0,1]");
  }
};

// Longest weakly increasing common subsequence, O(n_x n_y) DP.
// dp[j] = best LCIS of (prefix of x processed so far, y[0..j]) ending exactly
// at y[j]; `best` carries max dp[j'] over j' < j with y[j'] <= x[i], taken
// from values before this row's updates so no x position is used twice.
inline int lcis_dp(const Word& x, const Word& y) {
  if (y.empty() || x.empty()) return 0;
  std::vector<int> dp(y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    int best = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      int old = dp[j];
      if (y[j] == x[i]) dp[j] = std::max(dp[j], best + 1);
      if (y[j] <= x[i]) best = std::max(best, old);
    }
  }
  return *std::max_element(dp.begin(), dp.end());
}

// Exhaustive over subsequences of x: weakly increasing and (greedily checked)
// a subsequence of y. Oracle only.
inline int lcis_bruteforce(const Word& x, const Word& y) {
  int nx = static_cast<int>(x.size());
  if (nx > 14) throw std::invalid_argument("lcis_bruteforce: n_x > 14");
  int best = 0;
  std::vector<int> pick;
  for (std::uint32_t mask = 0; mask < (1u << nx); ++mask) {
    pick.clear();
    bool ok = true;
    int last = 0;
    for (int i = 0; i < nx && ok; ++i) {
      if (mask & (1u << i)) {
        if (x[i] < last) ok = false;
        last = x[i];
        pick.push_back(x[i]);
      }
    }
    if (!ok || static_cast<int>(pick.size()) <= best) continue;
    std::size_t at = 0;
    for (std::size_t j = 0; j < y.size() && at < pick.size(); ++j)
      if (y[j] == pick[at]) ++at;
    if (at == pick.size()) best = static_cast<int>(pick.size());
  }
  return best;
}

// (LCI_n - n e_max) / sqrt(n).
inline double centered_lci(const Word& x, const Word& y, const LciConfig& cfg) {
  if (x.size() != y.size()) throw std::invalid_argument("centered_lci: lengths differ");
  int n = static_cast<int>(x.size());
  if (n < 1) throw std::invalid_argument("centered_lci: need n >= 1");
  return (lcis_dp(x, y) - n * cfg.e_max) / std::sqrt(double(n));
}

}  // namespace rskrates
