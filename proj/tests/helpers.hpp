#pragma once

#include <cmath>
#include <vector>

#include <rskrates/rng.hpp>
#include <rskrates/words.hpp>

namespace testutil {

// Uniform on (0,1]; keeps -log finite.
inline double unit_open(rskrates::Rng& rng) {
  return static_cast<double>((rng.next_u64() >> 11) + 1) * 0x1.0p-53;
}

// Dirichlet(1,...,1) point of the simplex; every coordinate strictly positive.
inline rskrates::Distribution random_dist(rskrates::Rng& rng, int m) {
  std::vector<double> p(m);
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    p[i] = 1e-12 - std::log(unit_open(rng));
    s += p[i];
  }
  for (double& v : p) v /= s;
  return rskrates::Distribution(p);
}

inline rskrates::Word random_word(rskrates::Rng& rng, const rskrates::Distribution& dist,
                                  int n) {
  rskrates::Word w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = dist.classify(rng.next_unit());
  return w;
}

// Uniform letters, no Distribution needed.
inline rskrates::Word random_uniform_word(rskrates::Rng& rng, int m, int n) {
  rskrates::Word w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    w[i] = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
  return w;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

inline double var_of(const std::vector<double>& v) {
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / double(v.size());
}

}  // namespace testutil
