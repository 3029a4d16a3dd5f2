#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace rskrates {

class HermitianMatrix {
 public:
  explicit HermitianMatrix(int m)
      : m_(m), a_(static_cast<std::size_t>(m) * m, std::complex<double>(0.0, 0.0)) {
    if (m < 1) throw std::invalid_argument("HermitianMatrix: m must be >= 1");
  }

  int m() const { return m_; }
  std::complex<double>& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * m_ + j]; }
  const std::complex<double>& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * m_ + j];
  }

 private:
  int m_;
  std::vector<std::complex<double>> a_;
};

// Ordered spectrum plus its partial-sum image.
struct Spectrum {
  std::vector<double> values;   // sorted descending
  std::vector<double> partial;  // partial[k] = values[0] + ... + values[k]
};

struct EigenDecomposition {
  Spectrum spectrum;
  // Column k of `vectors` (entry i at vectors[i*m + k]) is the unit
  // eigenvector for spectrum.values[k]; empty unless requested.
  std::vector<std::complex<double>> vectors;
  int m = 0;
};

namespace detail {

inline double hermitian_asymmetry(const HermitianMatrix& h) {
  double worst = 0.0;
  for (int i = 0; i < h.m(); ++i)
    for (int j = i; j < h.m(); ++j)
      worst = std::max(worst, std::abs(h(i, j) - std::conj(h(j, i))));
  return worst;
}

}  // namespace detail

// Cyclic complex Jacobi rotations. Each rotation zeroes one off-diagonal
// entry exactly; a sweep visits every pair once. Convergence target is
// off-diagonal Frobenius mass <= 1e-12 * ||H||_F, hard capped at 100 sweeps.
inline EigenDecomposition eigen_hermitian(const HermitianMatrix& h, bool with_vectors) {
  const int m = h.m();
  if (m > 2048) throw std::invalid_argument("eigen_hermitian: m > 2048");
  if (detail::hermitian_asymmetry(h) > 1e-10)
    throw std::invalid_argument("eigen_hermitian: input is not Hermitian");

  std::vector<std::complex<double>> w(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i) * m + j] = h(i, j);
  // Symmetrize once so the iteration sees an exactly Hermitian matrix.
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i) * m + i] = std::real(w[static_cast<std::size_t>(i) * m + i]);
    for (int j = i + 1; j < m; ++j) {
      std::complex<double> avg =
          0.5 * (w[static_cast<std::size_t>(i) * m + j] +
                 std::conj(w[static_cast<std::size_t>(j) * m + i]));
      w[static_cast<std::size_t>(i) * m + j] = avg;
      w[static_cast<std::size_t>(j) * m + i] = std::conj(avg);
    }
  }

  std::vector<std::complex<double>> v;
  if (with_vectors) {
    v.assign(static_cast<std::size_t>(m) * m, std::complex<double>(0.0, 0.0));
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * m + i] = 1.0;
  }

  double norm_sq = 0.0;
  for (const auto& z : w) norm_sq += std::norm(z);
  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) s += 2.0 * std::norm(w[static_cast<std::size_t>(i) * m + j]);
    return s;
  };

  bool converged = norm_sq == 0.0 || m == 1;
  if (!converged) {
    const double thr_sq = 1e-24 * norm_sq;         // (1e-12 ||H||_F)^2
    const double skip = 1e-12 * std::sqrt(norm_sq) / m;
    for (int sweep = 0; sweep < 100; ++sweep) {
      if (off_mass() <= thr_sq) {
        converged = true;
        break;
      }
      for (int p = 0; p < m - 1; ++p) {
        for (int q = p + 1; q < m; ++q) {
          std::complex<double>* wp = &w[static_cast<std::size_t>(p) * m];
          std::complex<double>* wq = &w[static_cast<std::size_t>(q) * m];
          std::complex<double> alpha = wp[q];
          double r = std::abs(alpha);
          if (r <= skip) continue;
          std::complex<double> u = alpha / r;      // phase of the pivot
          std::complex<double> ubar = std::conj(u);
          double app = std::real(wp[p]);
          double aqq = std::real(wq[q]);
          double theta = (aqq - app) / (2.0 * r);
          double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          double c = 1.0 / std::sqrt(t * t + 1.0);
          double s = t * c;
          for (int k = 0; k < m; ++k) {
            if (k == p || k == q) continue;
            std::complex<double> wpk = wp[k];
            std::complex<double> wqk = wq[k];
            std::complex<double> np = c * wpk - s * (u * wqk);
            std::complex<double> nq = s * (ubar * wpk) + c * wqk;
            wp[k] = np;
            wq[k] = nq;
            w[static_cast<std::size_t>(k) * m + p] = std::conj(np);
            w[static_cast<std::size_t>(k) * m + q] = std::conj(nq);
          }
          wp[p] = app - t * r;
          wq[q] = aqq + t * r;
          wp[q] = 0.0;
          wq[p] = 0.0;
          if (with_vectors) {
            for (int k = 0; k < m; ++k) {
              std::complex<double> vkp = v[static_cast<std::size_t>(k) * m + p];
              std::complex<double> vkq = v[static_cast<std::size_t>(k) * m + q];
              v[static_cast<std::size_t>(k) * m + p] = c * vkp - s * (ubar * vkq);
              v[static_cast<std::size_t>(k) * m + q] = s * (u * vkp) + c * vkq;
            }
          }
        }
      }
    }
    if (!converged && off_mass() <= thr_sq) converged = true;
    if (!converged) throw std::runtime_error("eigen_hermitian: no convergence in 100 sweeps");
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(m);
  for (int i = 0; i < m; ++i) diag[i] = std::real(w[static_cast<std::size_t>(i) * m + i]);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] > diag[b]; });

  EigenDecomposition out;
  out.m = m;
  out.spectrum.values.resize(m);
  out.spectrum.partial.resize(m);
  double run = 0.0;
  for (int k = 0; k < m; ++k) {
    out.spectrum.values[k] = diag[order[k]];
    run += diag[order[k]];
    out.spectrum.partial[k] = run;
  }
  if (with_vectors) {
    out.vectors.assign(static_cast<std::size_t>(m) * m, std::complex<double>(0.0, 0.0));
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        out.vectors[static_cast<std::size_t>(i) * m + k] =
            v[static_cast<std::size_t>(i) * m + order[k]];
  }
  return out;
}

inline Spectrum eigenvalues_hermitian(const HermitianMatrix& h) {
  return eigen_hermitian(h, false).spectrum;
}

// Marsaglia-Tsang squeeze for Gamma(a, 1), a >= 1.
inline double sample_gamma(double a, Rng& rng) {
  if (!(a >= 1.0)) throw std::invalid_argument("sample_gamma: need shape >= 1");
  double d = a - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, vlin;
    do {
      x = rng.next_gaussian();
      vlin = 1.0 + c * x;
    } while (vlin <= 0.0);
    double v = vlin * vlin * vlin;
    double u = rng.next_unit();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

inline double sample_chi_sq(double k, Rng& rng) {
  if (!(k >= 2.0)) throw std::invalid_argument("sample_chi_sq: need k >= 2");
  return 2.0 * sample_gamma(0.5 * k, rng);
}

// Largest eigenvalue of one GUE draw (diagonal variance 1, off-diagonal
// complex variance 1) through its spectrum-equivalent real tridiagonal form:
// diagonal N(0,1), off-diagonal chi_{2(m-1)}, ..., chi_2 all divided by
// sqrt(2). Bisection on the Sturm/LDL sign count inside the Gershgorin
// interval; costs O(m log(1/eps)) instead of a dense solve.
inline double gue_lambda_max_tridiag(int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("gue_lambda_max_tridiag: m must be >= 1");
  std::vector<double> d(m);
  for (int i = 0; i < m; ++i) d[i] = rng.next_gaussian();
  if (m == 1) return d[0];
  std::vector<double> e(m - 1);
  for (int j = 0; j + 1 < m; ++j)
    e[j] = std::sqrt(sample_chi_sq(2.0 * (m - 1 - j), rng)) * 0.70710678118654752440;

  double lo = d[0], hi = d[0];
  for (int i = 0; i < m; ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < m ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= 1e-6 * scale;
  hi += 1e-6 * scale;

  auto count_below = [&](double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0.0) ++cnt;
    for (int i = 1; i < m; ++i) {
      if (q == 0.0) q = -1e-300;
      q = d[i] - x - e[i - 1] * e[i - 1] / q;
      if (q < 0.0) ++cnt;
    }
    return cnt;
  };

  for (int it = 0; it < 200 && hi - lo > 1e-13 * scale; ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= m)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rskrates
