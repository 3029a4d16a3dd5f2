#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rskrates {

// Sorted sample vector; the unit every distance below operates on.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("EmpiricalSample: empty sample");
    std::sort(values_.begin(), values_.end());
  }

  const std::vector<double>& values() const { return values_; }
  int n_samples() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

// Exact sup over the pooled grid of |ECDF_a - ECDF_b|, both evaluated
// right-continuously: all ties at a pooled point are consumed before the
// difference is taken. Single merge pass over the two sorted vectors.
inline double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  const std::vector<double>& x = a.values();
  const std::vector<double>& y = b.values();
  std::size_t i = 0, j = 0;
  double na = double(x.size()), nb = double(y.size());
  double best = 0.0;
  while (i < x.size() || j < y.size()) {
    double t;
    if (i < x.size() && j < y.size())
      t = std::min(x[i], y[j]);
    else if (i < x.size())
      t = x[i];
    else
      t = y[j];
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    best = std::max(best, std::abs(double(i) / na - double(j) / nb));
  }
  return best;
}

// Distribution-free ECDF confidence radius sqrt(log(2/delta) / (2 n)).
inline double dkw_band(int n_samples, double delta) {
  if (n_samples < 1) throw std::invalid_argument("dkw_band: need n_samples >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("dkw_band: delta outside (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * n_samples));
}

// One-dimensional W_p via the optimal quantile coupling of equal-size
// samples: mean of |a_(i) - b_(i)|^p over sorted order, to the 1/p.
inline double wasserstein_p(const EmpiricalSample& a, const EmpiricalSample& b, double p) {
  if (a.n_samples() != b.n_samples())
    throw std::invalid_argument("wasserstein_p: sample sizes differ");
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_p: need p >= 1");
  const std::vector<double>& x = a.values();
  const std::vector<double>& y = b.values();
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
    return acc / double(x.size());
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - y[i];
      acc += d * d;
    }
    return std::sqrt(acc / double(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i] - y[i]), p);
  return std::pow(acc / double(x.size()), 1.0 / p);
}

// Least-squares slope of log distance against log n, plus the
// (log n)^2-normalized constant c_hat = max d sqrt(n) / (log n)^2.
struct RateFit {
  std::vector<std::pair<double, double>> points;  // (n, distance)
  double slope = 0.0;
  double c_hat = 0.0;
};

inline RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("rate_fit: need at least 2 points");
  double sx = 0, sy = 0;
  for (auto& [n, d] : points) {
    if (!(n > 1.0)) throw std::invalid_argument("rate_fit: need n > 1");
    if (!(d > 0.0)) throw std::invalid_argument("rate_fit: distances must be > 0");
    sx += std::log(n);
    sy += std::log(d);
  }
  double mx = sx / points.size(), my = sy / points.size();
  double sxx = 0, sxy = 0;
  for (auto& [n, d] : points) {
    double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(d) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("rate_fit: need at least 2 distinct n");
  RateFit fit;
  fit.points = points;
  fit.slope = sxy / sxx;
  fit.c_hat = 0.0;
  for (auto& [n, d] : points) {
    double ln = std::log(n);
    fit.c_hat = std::max(fit.c_hat, d * std::sqrt(n) / (ln * ln));
  }
  return fit;
}

}  // namespace rskrates
