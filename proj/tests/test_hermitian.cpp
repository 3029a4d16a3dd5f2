#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <rskrates/distance.hpp>
#include <rskrates/hermitian.hpp>
#include <rskrates/limit_laws.hpp>

#include "helpers.hpp"

using namespace rskrates;

using rskrates::EigenDecomposition;
using rskrates::EmpiricalSample;
using rskrates::HermitianMatrix;
using rskrates::Rng;
using rskrates::Spectrum;
using rskrates::eigen_hermitian;
using rskrates::eigenvalues_hermitian;
using rskrates::gue_lambda_max_tridiag;
using rskrates::sample_chi_sq;
using rskrates::sample_gamma;

TEST_CASE("eigenvalues of hand-checked matrices", "[hermitian]") {
  HermitianMatrix sx(2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  Spectrum s = eigenvalues_hermitian(sx);
  REQUIRE(s.values[0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(s.values[1] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(s.partial[0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(s.partial[1] == Catch::Approx(0.0).margin(1e-12));

  HermitianMatrix d(2);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  Spectrum sd = eigenvalues_hermitian(d);
  REQUIRE(sd.values[0] == 2.0);
  REQUIRE(sd.values[1] == -1.0);

  HermitianMatrix id(3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1.0;
  Spectrum si = eigenvalues_hermitian(id);
  for (int i = 0; i < 3; ++i) REQUIRE(si.values[i] == 1.0);

  // [[1, i], [-i, 1]] has eigenvalues 2 and 0
  HermitianMatrix c(2);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(0, 1) = {0.0, 1.0};
  c(1, 0) = {0.0, -1.0};
  Spectrum sc = eigenvalues_hermitian(c);
  REQUIRE(sc.values[0] == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(sc.values[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("2x2 closed form matches the solver on random input", "[hermitian]") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    double a = 3.0 * rng.next_gaussian();
    double b = 3.0 * rng.next_gaussian();
    std::complex<double> c(rng.next_gaussian(), rng.next_gaussian());
    HermitianMatrix h(2);
    h(0, 0) = a;
    h(1, 1) = b;
    h(0, 1) = c;
    h(1, 0) = std::conj(c);
    double mid = 0.5 * (a + b);
    double rad = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(c));
    Spectrum s = eigenvalues_hermitian(h);
    REQUIRE(s.values[0] == Catch::Approx(mid + rad).margin(1e-10));
    REQUIRE(s.values[1] == Catch::Approx(mid - rad).margin(1e-10));
  }
}

TEST_CASE("random Hermitian matrices: residuals, order, trace", "[hermitian]") {
  Rng rng(555);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 6;
    HermitianMatrix h(m);
    double trace = 0.0;
    for (int i = 0; i < m; ++i) {
      double di = rng.next_gaussian();
      h(i, i) = di;
      trace += di;
      for (int j = i + 1; j < m; ++j) {
        std::complex<double> v(rng.next_gaussian(), rng.next_gaussian());
        h(i, j) = v;
        h(j, i) = std::conj(v);
      }
    }
    EigenDecomposition eig = eigen_hermitian(h, true);
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      sum += eig.spectrum.values[k];
      if (k > 0) REQUIRE(eig.spectrum.values[k] <= eig.spectrum.values[k - 1]);
      // residual || H v - lambda v ||
      double res = 0.0, norm = 0.0;
      for (int i = 0; i < m; ++i) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < m; ++j) acc += h(i, j) * eig.vectors[std::size_t(j) * m + k];
        acc -= eig.spectrum.values[k] * eig.vectors[std::size_t(i) * m + k];
        res += std::norm(acc);
        norm += std::norm(eig.vectors[std::size_t(i) * m + k]);
      }
      REQUIRE(std::sqrt(res) <= 1e-9);
      REQUIRE(std::sqrt(norm) == Catch::Approx(1.0).margin(1e-10));
    }
    REQUIRE(sum == Catch::Approx(trace).margin(1e-9));
  }
}

TEST_CASE("asymmetric input is rejected", "[hermitian]") {
  HermitianMatrix h(2);
  h(0, 1) = {1.0, 0.0};
  h(1, 0) = {0.5, 0.0};
  REQUIRE_THROWS_AS(eigenvalues_hermitian(h), std::invalid_argument);
}

TEST_CASE("gamma and chi-square samplers hit their moments", "[hermitian]") {
  Rng rng(31415);
  const int n = 20000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = sample_gamma(2.5, rng);
    s += g;
    s2 += g * g;
  }
  double mean = s / n, var = s2 / n - mean * mean;
  REQUIRE(std::abs(mean - 2.5) < 0.05);
  REQUIRE(std::abs(var - 2.5) < 0.15);

  double c = 0.0;
  for (int i = 0; i < n; ++i) c += sample_chi_sq(3.0, rng);
  REQUIRE(std::abs(c / n - 3.0) < 0.08);
  REQUIRE_THROWS_AS(sample_chi_sq(1.0, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(sample_gamma(0.5, rng), std::invalid_argument);
}

TEST_CASE("tridiagonal and dense routes draw the same top-eigenvalue law", "[hermitian]") {
  const int m = 8, N = 4000;
  std::vector<double> tri(N), dense(N);
  for (int i = 0; i < N; ++i) {
    Rng rng(rskrates::derive_seed(101, "tri", i));
    tri[i] = gue_lambda_max_tridiag(m, rng);
    Spectrum s = eigenvalues_hermitian(
        rskrates::sample_gue(m, rskrates::derive_seed(101, "dense", i)));
    dense[i] = s.values[0];
  }
  double ks = rskrates::ks_two_sample(EmpiricalSample(tri), EmpiricalSample(dense));
  REQUIRE(ks <= 0.05);
}

TEST_CASE("top eigenvalue scales like 2 sqrt(m)", "[hermitian]") {
  const int m = 200, N = 50;
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    Rng rng(rskrates::derive_seed(7, "scale", i));
    s += gue_lambda_max_tridiag(m, rng) / std::sqrt(double(m));
  }
  double mean = s / N;
  REQUIRE(mean >= 1.85);
  REQUIRE(mean <= 2.05);
}
