#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "words.hpp"

namespace rskrates {

namespace detail {

constexpr long long kNegInf = -(1LL << 60);

// Max over 0 = k_0 <= k_1 <= ... <= k_r = n of the window-count sum
// sum_j (N^{i_j}_{k_j} - N^{i_j}_{k_{j-1}}) for the given letter subset,
// taken in index order. Prefix-max DP over the count matrix, O(r n).
inline long long max_window_sum(const CountProcess& counts,
                                const std::vector<int>& letters) {
  int n = counts.n();
  std::vector<long long> dp(static_cast<std::size_t>(n) + 1, kNegInf);
  dp[0] = 0;
  for (int letter : letters) {
    const int* row = counts.row(letter);
    long long run = kNegInf;
    for (int g = 0; g <= n; ++g) {
      run = std::max(run, dp[g] - row[g]);
      dp[g] = row[g] + run;
    }
  }
  return dp[n];
}

}  // namespace detail

// max over the full composition lattice of Z_n = (LI_n - n p_max)/sqrt(n),
// computed by the window-sum DP on the count matrix (not the letter DP).
inline double max_z_full(const CountProcess& counts, const Distribution& dist) {
  if (counts.n() < 1) throw std::invalid_argument("max_z_full: need n >= 1");
  if (counts.m() != dist.m()) throw std::invalid_argument("max_z_full: alphabet mismatch");
  std::vector<int> all(dist.m());
  for (int i = 0; i < dist.m(); ++i) all[i] = i + 1;
  long long best = detail::max_window_sum(counts, all);
  int n = counts.n();
  return (best - n * dist.p_max()) / std::sqrt(double(n));
}

// Same maximum restricted to compositions whose windows vanish on every
// letter with p_i < p_max; the drift term is zero on that sublattice.
inline double max_z_restricted(const CountProcess& counts, const Distribution& dist) {
  if (counts.n() < 1) throw std::invalid_argument("max_z_restricted: need n >= 1");
  if (counts.m() != dist.m())
    throw std::invalid_argument("max_z_restricted: alphabet mismatch");
  long long best = detail::max_window_sum(counts, dist.argmax_set());
  int n = counts.n();
  return (best - n * dist.p_max()) / std::sqrt(double(n));
}

// Enumerates every composition 0 = k_0 <= ... <= k_m = n (restricted variant:
// zero-length windows on non-maximal letters) and reports the largest z_n.
// Exponential; test/acceptance scaffolding for small n only.
inline double max_z_enumerated(const CountProcess& counts, const Distribution& dist,
                               bool restricted) {
  int n = counts.n();
  int m = dist.m();
  if (n < 1) throw std::invalid_argument("max_z_enumerated: need n >= 1");
  double best = -1e300;
  std::vector<int> split(static_cast<std::size_t>(m) + 1, 0);
  split[m] = n;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      bool last_free = !restricted || dist.p(m) == dist.p_max();
      if (!last_free && split[m - 1] != n) return;  // letter m's window must be empty
      best = std::max(best, z_n(counts, dist, Composition(m, split)));
      return;
    }
    bool free_letter =
        !restricted || dist.p(i) == dist.p_max();  // window may have positive length
    int lo = split[i - 1];
    int hi = free_letter ? n : lo;
    for (int k = lo; k <= hi; ++k) {
      split[i] = k;
      rec(i + 1);
    }
  };
  rec(1);
  return best;
}

// Bernstein-type uniform deviation event: true iff every window of every
// letter satisfies |N^i_{j+l} - N^i_j - p_i l| <= (sigma_i sqrt(l) + 1) a log n
// with a = 6 + 3 alpha. Exact O(m n^2) scan; n is capped to keep that sane.
inline bool event_a_n(const CountProcess& counts, const Distribution& dist, double alpha,
                      int n_cap = 2000) {
  int n = counts.n();
  if (n < 2) throw std::invalid_argument("event_a_n: need n >= 2");
  if (n > n_cap) throw std::invalid_argument("event_a_n: n exceeds cap");
  if (!(alpha >= 1.0)) throw std::invalid_argument("event_a_n: alpha must be >= 1");
  if (counts.m() != dist.m()) throw std::invalid_argument("event_a_n: alphabet mismatch");
  double a = 6.0 + 3.0 * alpha;
  double alog = a * std::log(double(n));
  for (int i = 1; i <= dist.m(); ++i) {
    const int* row = counts.row(i);
    double p = dist.p(i);
    double s = dist.sigma(i);
    for (int l = 1; l <= n; ++l) {
      double bound = (s * std::sqrt(double(l)) + 1.0) * alog;
      double drift = p * l;
      int lo_allowed = static_cast<int>(std::ceil(drift - bound));
      int hi_allowed = static_cast<int>(std::floor(drift + bound));
      for (int j = 0; j + l <= n; ++j) {
        int d = row[j + l] - row[j];
        if (d < lo_allowed || d > hi_allowed) return false;
      }
    }
  }
  return true;
}

// Gap certificate between the full and restricted lattice maxima, with the
// (a log n)^2 / (4 delta sqrt(n p_max)) + a m log n / sqrt(n p_max) bound.
struct GapReport {
  double gap = 0.0;
  double bound = 0.0;
  double a = 0.0;
  bool precondition_ok = false;  // a log n <= 2 sqrt(n) delta
  bool within = false;           // gap <= bound (non-binding if !precondition_ok)
};

inline GapReport gap_report(const CountProcess& counts, const Distribution& dist,
                            double alpha) {
  if (dist.k_mult() == dist.m())
    throw std::invalid_argument("gap lemma vacuous: Delta = 0");
  int n = counts.n();
  if (n < 2) throw std::invalid_argument("gap_report: need n >= 2");
  if (!(alpha >= 1.0)) throw std::invalid_argument("gap_report: alpha must be >= 1");
  GapReport r;
  r.a = 6.0 + 3.0 * alpha;
  double full = max_z_full(counts, dist);
  double restricted = max_z_restricted(counts, dist);
  double sqnp = std::sqrt(n * dist.p_max());
  r.gap = (full - restricted) / std::sqrt(dist.p_max());
  double alog = r.a * std::log(double(n));
  r.bound = alog * alog / (4.0 * dist.delta() * sqnp) + r.a * dist.m() * std::log(double(n)) / sqnp;
  r.precondition_ok = alog <= 2.0 * std::sqrt(double(n)) * dist.delta();
  r.within = r.gap <= r.bound;
  return r;
}

}  // namespace rskrates
