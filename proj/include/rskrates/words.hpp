#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace rskrates {

// Letters are 1-based integers in [1..m].
using Word = std::vector<int>;

// Probability vector over the alphabet plus everything derived from it:
// sigma_i = sqrt(p_i (1-p_i)), the maximum p_max with its multiplicity
// k_mult, the runner-up p_2nd and the gap delta = p_max - p_2nd.
// Zero-probability letters are rejected so every sigma_i > 0.
class Distribution {
 public:
  explicit Distribution(std::vector<double> p) : p_(std::move(p)) {
    m_ = static_cast<int>(p_.size());
    if (m_ < 2) throw std::invalid_argument("Distribution: need at least 2 letters");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v > 0.0)) throw std::invalid_argument("Distribution: every p_i must be > 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("Distribution: probabilities must sum to 1");
    sigma_.resize(m_);
    cum_.resize(m_);
    double c = 0.0;
    for (int i = 0; i < m_; ++i) {
      sigma_[i] = std::sqrt(p_[i] * (1.0 - p_[i]));
      c += p_[i];
      cum_[i] = c;
    }
    cum_[m_ - 1] = 1.0;  // top cut pinned so classify() is total on [0,1)
    p_max_ = *std::max_element(p_.begin(), p_.end());
    for (int i = 0; i < m_; ++i)
      if (p_[i] == p_max_) argmax_.push_back(i + 1);
    k_mult_ = static_cast<int>(argmax_.size());
    p_2nd_ = p_max_;
    if (k_mult_ < m_) {
      p_2nd_ = 0.0;
      for (int i = 0; i < m_; ++i)
        if (p_[i] != p_max_) p_2nd_ = std::max(p_2nd_, p_[i]);
    }
    delta_ = p_max_ - p_2nd_;  // 0 exactly when all p_i tie
  }

  static Distribution uniform(int m) {
    if (m < 2) throw std::invalid_argument("Distribution::uniform: need m >= 2");
    return Distribution(std::vector<double>(m, 1.0 / m));
  }

  int m() const { return m_; }
  double p(int letter) const { return p_[letter - 1]; }
  double sigma(int letter) const { return sigma_[letter - 1]; }
  double cum(int letter) const { return cum_[letter - 1]; }
  double p_max() const { return p_max_; }
  double p_2nd() const { return p_2nd_; }
  double delta() const { return delta_; }
  int k_mult() const { return k_mult_; }
  const std::vector<int>& argmax_set() const { return argmax_; }
  const std::vector<double>& probs() const { return p_; }

  // Letter for a uniform variate: min { k : u < p_1 + ... + p_k }.
  // Half-open cut intervals; ties at cut points go to the next letter.
  int classify(double u) const {
    for (int i = 0; i < m_ - 1; ++i)
      if (u < cum_[i]) return i + 1;
    return m_;
  }

 private:
  std::vector<double> p_, sigma_, cum_;
  std::vector<int> argmax_;
  int m_ = 0, k_mult_ = 0;
  double p_max_ = 0, p_2nd_ = 0, delta_ = 0;
};

inline Word sample_word(const Distribution& dist, int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_word: n must be >= 0");
  Rng rng(seed);
  Word w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = dist.classify(rng.next_unit());
  return w;
}

// Both words read the same uniforms, so they agree letter-by-letter except
// where a variate lands between the two distributions' cut points.
inline std::pair<Word, Word> sample_word_coupled(const Distribution& da,
                                                 const Distribution& db, int n,
                                                 std::uint64_t seed) {
  if (da.m() != db.m())
    throw std::invalid_argument("sample_word_coupled: alphabet sizes differ");
  if (n < 0) throw std::invalid_argument("sample_word_coupled: n must be >= 0");
  Rng rng(seed);
  Word wa(static_cast<std::size_t>(n)), wb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double u = rng.next_unit();
    wa[i] = da.classify(u);
    wb[i] = db.classify(u);
  }
  return {std::move(wa), std::move(wb)};
}

// Prefix-count matrix: count(i, j) = number of letters i among the first j.
// Column 0 is zero; each column differs from the previous in exactly one row.
class CountProcess {
 public:
  CountProcess(const Word& w, int m) : n_(static_cast<int>(w.size())), m_(m) {
    if (m < 1) throw std::invalid_argument("CountProcess: m must be >= 1");
    for (int x : w)
      if (x < 1 || x > m) throw std::invalid_argument("CountProcess: letter out of range");
    counts_.assign(static_cast<std::size_t>(m) * (n_ + 1), 0);
    for (int i = 0; i < m; ++i) {
      int* row = &counts_[static_cast<std::size_t>(i) * (n_ + 1)];
      int run = 0;
      for (int j = 1; j <= n_; ++j) {
        run += (w[j - 1] == i + 1) ? 1 : 0;
        row[j] = run;
      }
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int count(int letter, int j) const {
    return counts_[static_cast<std::size_t>(letter - 1) * (n_ + 1) + j];
  }
  const int* row(int letter) const {
    return &counts_[static_cast<std::size_t>(letter - 1) * (n_ + 1)];
  }

 private:
  int n_, m_;
  std::vector<int> counts_;
};

// Lattice point of the composition simplex, stored as its split points
// 0 = k_0 <= k_1 <= ... <= k_m = n; window i is (k_{i-1}, k_i].
class Composition {
 public:
  Composition(int m, std::vector<int> split) : m_(m), split_(std::move(split)) {
    if (m < 1 || split_.size() != static_cast<std::size_t>(m) + 1)
      throw std::invalid_argument("Composition: split must have m+1 entries");
    if (split_[0] != 0) throw std::invalid_argument("Composition: k_0 must be 0");
    for (int i = 1; i <= m; ++i)
      if (split_[i] < split_[i - 1])
        throw std::invalid_argument("Composition: split points must be nondecreasing");
  }

  int m() const { return m_; }
  int n() const { return split_[m_]; }
  int k(int i) const { return split_[i]; }  // i in [0..m]
  const std::vector<int>& split() const { return split_; }

 private:
  int m_;
  std::vector<int> split_;
};

// Centered, sigma-normalized prefix count at continuous time t:
// (N^i_{floor(tn)} - p_i floor(tn)) / (sigma_i sqrt(n)).
inline double b_tilde(const CountProcess& counts, const Distribution& dist, int i,
                      double t) {
  if (counts.n() < 1) throw std::invalid_argument("b_tilde: need n >= 1");
  if (i < 1 || i > dist.m()) throw std::invalid_argument("b_tilde: letter out of range");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("b_tilde: t outside [0,1]");
  int n = counts.n();
  int idx = static_cast<int>(std::floor(t * n));
  if (idx > n) idx = n;
  return (counts.count(i, idx) - dist.p(i) * idx) / (dist.sigma(i) * std::sqrt(double(n)));
}

// Centered window counts (N^i_{k_i} - N^i_{k_{i-1}} - p_i (k_i - k_{i-1})) / sqrt(n).
inline std::vector<double> v_tilde(const CountProcess& counts, const Distribution& dist,
                                   const Composition& comp) {
  if (comp.m() != dist.m() || comp.n() != counts.n())
    throw std::invalid_argument("v_tilde: composition does not match counts");
  int n = counts.n();
  double sq = std::sqrt(double(n));
  std::vector<double> v(dist.m());
  for (int i = 1; i <= dist.m(); ++i) {
    int len = comp.k(i) - comp.k(i - 1);
    v[i - 1] = (counts.count(i, comp.k(i)) - counts.count(i, comp.k(i - 1)) -
                dist.p(i) * len) /
               sq;
  }
  return v;
}

// Z_n(lambda) = sum_i [ sqrt(n) (p_i - p_max) lambda_i + V~_i(lambda) ].
// Algebraically this collapses to (window-count sum - n p_max)/sqrt(n); the
// explicit form is kept so the drift and fluctuation terms stay testable.
inline double z_n(const CountProcess& counts, const Distribution& dist,
                  const Composition& comp) {
  std::vector<double> v = v_tilde(counts, dist, comp);
  int n = counts.n();
  double sq = std::sqrt(double(n));
  double total = 0.0;
  for (int i = 1; i <= dist.m(); ++i) {
    double lambda_i = double(comp.k(i) - comp.k(i - 1)) / n;
    total += sq * (dist.p(i) - dist.p_max()) * lambda_i + v[i - 1];
  }
  return total;
}

}  // namespace rskrates
