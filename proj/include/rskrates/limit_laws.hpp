#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hermitian.hpp"
#include "rng.hpp"
#include "words.hpp"

namespace rskrates {

// GUE draw normalized so the top eigenvalue sits near 2 sqrt(m): diagonal
// entries N(0,1) real, off-diagonal real and imaginary parts each N(0,1/2).
// Fill order is fixed (diagonal first, then rows of the upper triangle), so
// a seed pins the matrix bit-for-bit.
inline HermitianMatrix sample_gue(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_gue: m must be >= 1");
  Rng rng(seed);
  HermitianMatrix h(m);
  for (int i = 0; i < m; ++i) h(i, i) = rng.next_gaussian();
  const double inv_sqrt2 = 0.70710678118654752440;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double re = rng.next_gaussian() * inv_sqrt2;
      double im = rng.next_gaussian() * inv_sqrt2;
      h(i, j) = {re, im};
      h(j, i) = {re, -im};
    }
  }
  return h;
}

inline HermitianMatrix traceless(const HermitianMatrix& h) {
  int m = h.m();
  double tr = 0.0;
  for (int i = 0; i < m; ++i) tr += std::real(h(i, i));
  HermitianMatrix out = h;
  for (int i = 0; i < m; ++i) out(i, i) = h(i, i) - tr / m;
  return out;
}

// J_{k,m}: sum of the top k eigenvalues of a traceless m x m GUE draw.
inline double sample_J_km(int m, int k, std::uint64_t seed) {
  if (k < 1 || k > m) throw std::invalid_argument("sample_J_km: need 1 <= k <= m");
  Spectrum s = eigenvalues_hermitian(traceless(sample_gue(m, seed)));
  return s.partial[k - 1];
}

// J_k for a general distribution: J_{1,k_mult} plus an independent
// sqrt((1 - k_mult p_max)/k_mult) Gaussian. The Gaussian coefficient is
// pinned to zero for uniform distributions (k_mult p_max = 1 exactly).
inline double sample_J_k(const Distribution& dist, std::uint64_t seed) {
  int k = dist.k_mult();
  double base = 0.0;
  if (k > 1) base = sample_J_km(k, 1, derive_seed(seed, "J_k.gue", 0));
  double var_num = (k == dist.m()) ? 0.0 : std::max(0.0, 1.0 - k * dist.p_max());
  if (var_num == 0.0) return base;
  Rng rng(derive_seed(seed, "J_k.gauss", 0));
  return base + std::sqrt(var_num / k) * rng.next_gaussian();
}

// Covariance of the sigma-normalized letter indicators: unit diagonal,
// Sigma_ij = -p_i p_j / (sigma_i sigma_j). Singular with null vector sigma,
// so the sampling factor comes from the spectral decomposition: eigenvalues
// in [-1e-10, 0) clamp to zero, anything lower is rejected.
struct CovarianceFactor {
  int m = 0;
  std::vector<double> sigma_matrix;  // row-major m x m
  std::vector<double> factor;        // row-major m x m, factor * factor^T = Sigma
};

inline CovarianceFactor build_covariance_factor(const Distribution& dist) {
  int m = dist.m();
  CovarianceFactor cf;
  cf.m = m;
  cf.sigma_matrix.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      double v = (i == j) ? 1.0 : -dist.p(i) * dist.p(j) / (dist.sigma(i) * dist.sigma(j));
      cf.sigma_matrix[static_cast<std::size_t>(i - 1) * m + (j - 1)] = v;
    }
  }
  HermitianMatrix h(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = cf.sigma_matrix[static_cast<std::size_t>(i) * m + j];
  EigenDecomposition eig = eigen_hermitian(h, true);
  std::vector<double> w(m);
  for (int k = 0; k < m; ++k) {
    double lam = eig.spectrum.values[k];
    if (lam < -1e-10)
      throw std::runtime_error("build_covariance_factor: covariance is not PSD");
    w[k] = lam < 0.0 ? 0.0 : lam;
  }
  cf.factor.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      cf.factor[static_cast<std::size_t>(i) * m + k] =
          std::real(eig.vectors[static_cast<std::size_t>(i) * m + k]) * std::sqrt(w[k]);
  // F F^T must reproduce Sigma; a bad factorization is a hard error here.
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k)
        acc += cf.factor[static_cast<std::size_t>(i) * m + k] *
               cf.factor[static_cast<std::size_t>(j) * m + k];
      worst = std::max(worst, std::abs(acc - cf.sigma_matrix[static_cast<std::size_t>(i) * m + j]));
    }
  }
  if (worst > 1e-9)
    throw std::runtime_error("build_covariance_factor: factorization residual above 1e-9");
  return cf;
}

// One draw of the discretized Brownian composition functional: m correlated
// paths on a G-point grid (increments sqrt(1/G) F xi), then the prefix-max DP
// over split points restricted to maximal letters, divided by sqrt(p_max).
// The split points are grid-valued, so the max is biased low by O(G^{-1/2})
// up to logs; refinement in G is checked statistically, not per path.
inline double sample_limit_brownian(const Distribution& dist, const CovarianceFactor& cf,
                                    int grid_G, std::uint64_t seed) {
  if (grid_G < 2) throw std::invalid_argument("sample_limit_brownian: need G >= 2");
  if (cf.m != dist.m()) throw std::invalid_argument("sample_limit_brownian: factor mismatch");
  int m = dist.m();
  Rng rng(seed);
  const int G = grid_G;
  std::vector<double> b(static_cast<std::size_t>(m) * (G + 1), 0.0);
  std::vector<double> xi(m);
  double step = std::sqrt(1.0 / G);
  for (int g = 1; g <= G; ++g) {
    for (int j = 0; j < m; ++j) xi[j] = rng.next_gaussian();
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      const double* frow = &cf.factor[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < m; ++j) acc += frow[j] * xi[j];
      b[static_cast<std::size_t>(i) * (G + 1) + g] =
          b[static_cast<std::size_t>(i) * (G + 1) + g - 1] + step * acc;
    }
  }
  const double neg_inf = -1e300;
  std::vector<double> dp(static_cast<std::size_t>(G) + 1, neg_inf);
  dp[0] = 0.0;  // t_0 = 0 is pinned; only interior split points float
  for (int letter : dist.argmax_set()) {
    const double* brow = &b[static_cast<std::size_t>(letter - 1) * (G + 1)];
    double s = dist.sigma(letter);
    double run = neg_inf;
    for (int g = 0; g <= G; ++g) {
      double f = s * brow[g];
      run = std::max(run, dp[g] - f);
      dp[g] = f + run;
    }
  }
  return dp[G] / std::sqrt(dist.p_max());
}

inline double sample_limit_brownian(const Distribution& dist, int grid_G,
                                    std::uint64_t seed) {
  return sample_limit_brownian(dist, build_covariance_factor(dist), grid_G, seed);
}

// min{ sqrt(k / (2 pi (1 - k p))), k^{3k} (2 pi e^2)^{k/2} sqrt(e/pi) }.
// At k p = 1 the first branch is +inf and the second is returned.
inline double density_bound(int k, double p_max) {
  if (k < 1) throw std::invalid_argument("density_bound: k must be >= 1");
  if (!(p_max > 0.0)) throw std::invalid_argument("density_bound: p_max must be > 0");
  if (k * p_max > 1.0) throw std::invalid_argument("density_bound: k * p_max > 1");
  const double pi = 3.14159265358979323846;
  const double e = 2.71828182845904523536;
  double first = std::sqrt(k / (2.0 * pi * (1.0 - k * p_max)));
  double second = std::pow(double(k), 3.0 * k) * std::pow(2.0 * pi * e * e, 0.5 * k) *
                  std::sqrt(e / pi);
  return std::min(first, second);
}

// One scaled top-eigenvalue draw (lambda_max(GUE_mref) - 2 sqrt(mref)) mref^{1/6},
// sampled through the tridiagonal route so large reference dimensions stay cheap.
inline double sample_tw_reference(int m_ref, std::uint64_t seed) {
  if (m_ref < 50) throw std::invalid_argument("sample_tw_reference: need m_ref >= 50");
  Rng rng(seed);
  double lam = gue_lambda_max_tridiag(m_ref, rng);
  return (lam - 2.0 * std::sqrt(double(m_ref))) * std::pow(double(m_ref), 1.0 / 6.0);
}

inline double tw_scale(double x, int k) {
  if (k < 1) throw std::invalid_argument("tw_scale: k must be >= 1");
  return (x - 2.0 * std::sqrt(double(k))) * std::pow(double(k), 1.0 / 6.0);
}

}  // namespace rskrates
