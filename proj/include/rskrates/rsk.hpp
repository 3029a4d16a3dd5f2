#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "words.hpp"

namespace rskrates {

// Row lengths R_1 >= R_2 >= ... > 0 of the insertion tableau shape.
struct YoungShape {
  std::vector<int> rows;
};

// Incremental row insertion for words. Each tableau row is weakly increasing,
// so it is fully described by its letter counts; bumping the leftmost entry
// strictly greater than x means decrementing the smallest letter above x.
// A word on m letters never fills more than m rows.
class RowInsertion {
 public:
  explicit RowInsertion(int m) : m_(m), cnt_(static_cast<std::size_t>(m) * (m + 1), 0), len_(m, 0) {
    if (m < 1) throw std::invalid_argument("RowInsertion: m must be >= 1");
  }

  void insert(int x) {
    if (x < 1 || x > m_) throw std::invalid_argument("RowInsertion: letter out of range");
    int v = x;
    for (int r = 0; r < m_; ++r) {
      int* row = &cnt_[static_cast<std::size_t>(r) * (m_ + 1)];
      int bump = 0;
      for (int c = v + 1; c <= m_; ++c) {
        if (row[c] > 0) {
          bump = c;
          break;
        }
      }
      if (bump == 0) {
        ++row[v];
        ++len_[r];
        return;
      }
      --row[bump];
      ++row[v];
      v = bump;
    }
    throw std::logic_error("RowInsertion: bump cascade exceeded m rows");
  }

  // Nonempty row lengths, weakly decreasing by construction.
  std::vector<int> shape() const {
    std::vector<int> rows;
    for (int r = 0; r < m_ && len_[r] > 0; ++r) rows.push_back(len_[r]);
    return rows;
  }

  const std::vector<int>& row_lengths() const { return len_; }

 private:
  int m_;
  std::vector<int> cnt_;
  std::vector<int> len_;
};

inline YoungShape rsk_shape(const Word& w) {
  int m = 0;
  for (int x : w) m = std::max(m, x);
  if (m == 0) return YoungShape{};
  RowInsertion ins(m);
  for (int x : w) ins.insert(x);
  return YoungShape{ins.shape()};
}

// Longest weakly increasing subsequence in O(n m): dp[c] is the longest such
// subsequence ending exactly with letter c+1.
inline int li_dp(const Word& w, int m) {
  if (m < 1) throw std::invalid_argument("li_dp: m must be >= 1");
  std::vector<int> dp(m, 0);
  for (int x : w) {
    if (x < 1 || x > m) throw std::invalid_argument("li_dp: letter out of range");
    int best = 0;
    for (int c = 0; c < x; ++c) best = std::max(best, dp[c]);
    dp[x - 1] = best + 1;
  }
  int ans = 0;
  for (int c = 0; c < m; ++c) ans = std::max(ans, dp[c]);
  return ans;
}

// Exhaustive check over all 2^n subsequences; differential-test oracle only.
inline int li_bruteforce(const Word& w) {
  int n = static_cast<int>(w.size());
  if (n > 22) throw std::invalid_argument("li_bruteforce: n > 22");
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int cnt = 0, last = 0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (mask & (1u << i)) {
        if (w[i] < last) ok = false;
        last = w[i];
        ++cnt;
      }
    }
    if (ok) best = std::max(best, cnt);
  }
  return best;
}

namespace detail {

struct GreeneSearch {
  const Word& w;
  int n, k;
  int best = 0;
  std::vector<int> last;  // last letter of each subsequence class, 0 = empty

  GreeneSearch(const Word& word, int classes)
      : w(word), n(static_cast<int>(word.size())), k(classes), last(classes, 0) {}

  void dfs(int pos, int count) {
    if (count + (n - pos) <= best) return;
    if (pos == n) {
      best = std::max(best, count);
      return;
    }
    int x = w[pos];
    for (int c = 0; c < k; ++c) {
      bool dup = false;
      for (int c2 = 0; c2 < c; ++c2)
        if (last[c2] == last[c]) {
          dup = true;  // identical class state; one branch suffices
          break;
        }
      if (dup || last[c] > x) continue;
      int saved = last[c];
      last[c] = x;
      dfs(pos + 1, count + 1);
      last[c] = saved;
    }
    dfs(pos + 1, count);
  }
};

}  // namespace detail

// Maximum total size of a union of k disjoint weakly increasing subsequences,
// by exhaustive assignment search. Equals R_1 + ... + R_k of the shape.
inline int greene_oracle(const Word& w, int k) {
  int n = static_cast<int>(w.size());
  if (n > 10) throw std::invalid_argument("greene_oracle: n > 10");
  if (k < 1) throw std::invalid_argument("greene_oracle: k must be >= 1");
  detail::GreeneSearch search(w, k);
  search.dfs(0, 0);
  return search.best;
}

// Cumulative row sums V_k = R_1 + ... + R_k and the centered statistics
// T_k = (V_k - k n / m) / sqrt(n / m), evaluated as (m V_k - k n)/sqrt(n m)
// so T_m is exactly zero in floating point.
struct ShapeStats {
  int n = 0, m = 0;
  std::vector<double> V;
  std::vector<double> T;
};

inline ShapeStats cumulative_shape_stats(const YoungShape& shape, int n, int m) {
  if (m < 1) throw std::invalid_argument("cumulative_shape_stats: m must be >= 1");
  if (static_cast<int>(shape.rows.size()) > m)
    throw std::invalid_argument("cumulative_shape_stats: more rows than letters");
  long long total = 0;
  int prev = shape.rows.empty() ? 0 : shape.rows[0];
  for (int r : shape.rows) {
    if (r <= 0 || r > prev)
      throw std::invalid_argument("cumulative_shape_stats: rows must be weakly decreasing and positive");
    prev = r;
    total += r;
  }
  if (total != n) throw std::invalid_argument("cumulative_shape_stats: rows do not sum to n");
  ShapeStats s;
  s.n = n;
  s.m = m;
  s.V.resize(m);
  s.T.resize(m);
  double denom = std::sqrt(double(n) * m);
  long long vk = 0;
  for (int k = 1; k <= m; ++k) {
    if (k <= static_cast<int>(shape.rows.size())) vk += shape.rows[k - 1];
    s.V[k - 1] = double(vk);
    s.T[k - 1] = n == 0 ? 0.0 : double(static_cast<long long>(m) * vk - static_cast<long long>(k) * n) / denom;
  }
  return s;
}

// (LI_n - n p_max) / sqrt(n p_max).
inline double centered_li(const Word& w, const Distribution& dist) {
  int n = static_cast<int>(w.size());
  if (n < 1) throw std::invalid_argument("centered_li: need n >= 1");
  int li = li_dp(w, dist.m());
  return (li - n * dist.p_max()) / std::sqrt(n * dist.p_max());
}

}  // namespace rskrates
