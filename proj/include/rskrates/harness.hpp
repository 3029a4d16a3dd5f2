#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "distance.hpp"
#include "lci.hpp"
#include "limit_laws.hpp"
#include "rng.hpp"
#include "rsk.hpp"
#include "variational.hpp"
#include "words.hpp"

namespace rskrates {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind {
  identity,
  shape_vs_gue,
  rate,
  gap,
  event_an,
  couple_demo,
  tw_regime,
  limit_sample,
  wp,
  lci,
};

inline const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::identity: return "identity";
    case ExperimentKind::shape_vs_gue: return "shape-vs-gue";
    case ExperimentKind::rate: return "rate";
    case ExperimentKind::gap: return "gap";
    case ExperimentKind::event_an: return "event-an";
    case ExperimentKind::couple_demo: return "couple-demo";
    case ExperimentKind::tw_regime: return "tw-regime";
    case ExperimentKind::limit_sample: return "limit-sample";
    case ExperimentKind::wp: return "wp";
    case ExperimentKind::lci: return "lci";
  }
  return "?";
}

inline ExperimentKind experiment_from_string(const std::string& s) {
  for (ExperimentKind k :
       {ExperimentKind::identity, ExperimentKind::shape_vs_gue, ExperimentKind::rate,
        ExperimentKind::gap, ExperimentKind::event_an, ExperimentKind::couple_demo,
        ExperimentKind::tw_regime, ExperimentKind::limit_sample, ExperimentKind::wp,
        ExperimentKind::lci})
    if (s == to_string(k)) return k;
  throw std::invalid_argument(
      "unknown experiment '" + s +
      "' (expected identity, shape-vs-gue, rate, gap, event-an, couple-demo, "
      "tw-regime, limit-sample, wp, lci)");
}

// For tw-regime the n_grid entries are GUE dimensions, not word lengths.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::rate;
  std::vector<double> dist{0.5, 0.5};
  std::vector<long long> n_grid{100, 1000};
  long long n_samples = 1000;
  double alpha = 1.0;
  int grid_G = 2000;
  int m_ref = 200;
  std::uint64_t seed = 20240817;
  int workers = 1;      // runtime-only; never part of the report provenance
  std::string out = "rsk_rates_out";  // runtime-only
};

struct ReportRow {
  long long n = 0;
  int m = 0;
  std::string statistic;
  double value = 0.0;
  double mc_band = 0.0;
  std::uint64_t seed = 0;
};

struct ReportCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;  // echo; workers/out are excluded from serialization
  std::string version = kVersion;
  std::vector<ReportRow> rows;
  std::vector<ReportCheck> checks;
  double slope = std::nan("");
  double c_hat = std::nan("");
  bool pass = false;
};

namespace detail {

inline bool eq_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace detail

inline bool operator==(const ReportRow& a, const ReportRow& b) {
  return a.n == b.n && a.m == b.m && a.statistic == b.statistic &&
         detail::eq_double(a.value, b.value) && detail::eq_double(a.mc_band, b.mc_band) &&
         a.seed == b.seed;
}

inline bool operator==(const ReportCheck& a, const ReportCheck& b) {
  return a.name == b.name && a.pass == b.pass && detail::eq_double(a.value, b.value) &&
         detail::eq_double(a.threshold, b.threshold);
}

// Equality on the serialized surface: the config echo (minus runtime-only
// fields), rows, checks and summary.
inline bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
  return a.config.experiment == b.config.experiment && a.config.dist == b.config.dist &&
         a.config.n_grid == b.config.n_grid && a.config.n_samples == b.config.n_samples &&
         detail::eq_double(a.config.alpha, b.config.alpha) &&
         a.config.grid_G == b.config.grid_G && a.config.m_ref == b.config.m_ref &&
         a.config.seed == b.config.seed && a.version == b.version && a.rows == b.rows &&
         a.checks == b.checks && detail::eq_double(a.slope, b.slope) &&
         detail::eq_double(a.c_hat, b.c_hat) && a.pass == b.pass;
}

inline std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> bad;
  int m = static_cast<int>(cfg.dist.size());
  bool dist_ok = true;
  try {
    Distribution d(cfg.dist);
    (void)d;
  } catch (const std::exception& e) {
    bad.push_back(std::string("dist: ") + e.what());
    dist_ok = false;
  }
  if (cfg.n_grid.empty()) bad.push_back("n_grid: must be nonempty");
  for (long long n : cfg.n_grid)
    if (n < 1) {
      bad.push_back("n_grid: entries must be >= 1");
      break;
    }
  if (cfg.n_samples < 1) bad.push_back("n_samples: must be >= 1");
  if (!(cfg.alpha >= 1.0)) bad.push_back("alpha: must be >= 1");
  if (cfg.grid_G < 2) bad.push_back("grid_G: must be >= 2");
  if (cfg.m_ref < 50) bad.push_back("m_ref: must be >= 50");
  if (cfg.workers < 1) bad.push_back("workers: must be >= 1");

  auto ascending = [&]() {
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
      if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) return false;
    return true;
  };
  switch (cfg.experiment) {
    case ExperimentKind::rate:
      if (cfg.n_grid.size() < 2 || !ascending())
        bad.push_back("n_grid: rate needs >= 2 strictly ascending word lengths");
      for (long long n : cfg.n_grid)
        if (n < 2) {
          bad.push_back("n_grid: rate needs n >= 2 (log-log fit)");
          break;
        }
      break;
    case ExperimentKind::shape_vs_gue:
      if (dist_ok && m >= 2) {
        Distribution d(cfg.dist);
        if (d.k_mult() != d.m())
          bad.push_back("dist: shape-vs-gue requires the uniform distribution");
      }
      break;
    case ExperimentKind::gap:
      if (dist_ok && m >= 2) {
        Distribution d(cfg.dist);
        if (d.k_mult() == d.m()) bad.push_back("dist: gap lemma vacuous: Delta = 0");
      }
      for (long long n : cfg.n_grid)
        if (n < 2) {
          bad.push_back("n_grid: gap needs n >= 2");
          break;
        }
      break;
    case ExperimentKind::event_an:
      for (long long n : cfg.n_grid)
        if (n < 2 || n > 2000) {
          bad.push_back("n_grid: event-an needs 2 <= n <= 2000 (exact O(m n^2) scan)");
          break;
        }
      break;
    case ExperimentKind::couple_demo:
      if (m != 2) bad.push_back("dist: couple-demo requires a binary alphabet");
      break;
    case ExperimentKind::tw_regime:
      if (cfg.n_grid.size() < 2 || !ascending())
        bad.push_back("n_grid: tw-regime needs >= 2 strictly ascending GUE dimensions");
      break;
    case ExperimentKind::lci:
      if (cfg.n_grid.size() < 2 || !ascending())
        bad.push_back("n_grid: lci needs >= 2 strictly ascending word lengths");
      break;
    default:
      break;
  }
  return bad;
}

namespace detail {

// Deterministic parallel map: sample i writes only slot i and derives its own
// seed from i, so results are independent of scheduling and worker count.
template <class F>
void parallel_for_indexed(long long count, int workers, F&& body) {
  if (count <= 0) return;
  if (workers < 1) workers = 1;
  if (workers > count) workers = static_cast<int>(count);
  if (workers == 1) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err = nullptr;
  std::mutex err_mu;
  const long long chunk = 16;
  auto work = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      long long start = next.fetch_add(chunk);
      if (start >= count) return;
      long long end = std::min(count, start + chunk);
      for (long long i = start; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Fused draw-and-scan longest weakly increasing subsequence; identical in
// value to li_dp(sample_word(dist, n, seed), m) for every seed.
inline int sampled_li(const Distribution& dist, long long n, std::uint64_t seed) {
  Rng rng(seed);
  int m = dist.m();
  std::vector<int> dp(m, 0);
  for (long long i = 0; i < n; ++i) {
    int x = dist.classify(rng.next_unit());
    int best = 0;
    for (int c = 0; c < x; ++c) best = std::max(best, dp[c]);
    dp[x - 1] = best + 1;
  }
  int ans = 0;
  for (int c = 0; c < m; ++c) ans = std::max(ans, dp[c]);
  return ans;
}

// Fused draw-and-insert cumulative row sums V_1..V_m of the insertion shape.
inline std::vector<long long> sampled_shape_V(const Distribution& dist, long long n,
                                              std::uint64_t seed) {
  Rng rng(seed);
  int m = dist.m();
  RowInsertion ins(m);
  for (long long i = 0; i < n; ++i) ins.insert(dist.classify(rng.next_unit()));
  std::vector<long long> v(m, 0);
  long long run = 0;
  for (int k = 0; k < m; ++k) {
    run += ins.row_lengths()[k];
    v[k] = run;
  }
  return v;
}

inline double t_stat(long long v_k, int k, long long n, int m) {
  return double(m * v_k - static_cast<long long>(k) * n) / std::sqrt(double(n) * m);
}

inline double centered_li_value(int li, long long n, double p_max) {
  return (li - n * p_max) / std::sqrt(double(n) * p_max);
}

struct RowSink {
  std::vector<ReportRow>& rows;
  int m;
  std::uint64_t seed;
  void add(long long n, std::string statistic, double value, double band) {
    rows.push_back(ReportRow{n, m, std::move(statistic), value, band, seed});
  }
};

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  {
    std::vector<std::string> bad = validate_config(cfg);
    if (!bad.empty()) {
      std::string msg = "invalid config:";
      for (const std::string& b : bad) msg += "\n  - " + b;
      throw std::invalid_argument(msg);
    }
  }
  Distribution dist(cfg.dist);
  const int m = dist.m();
  const long long N = cfg.n_samples;
  const std::uint64_t master = cfg.seed;
  const double band1 = dkw_band(static_cast<int>(N), 1e-3);

  ExperimentReport rep;
  rep.config = cfg;
  detail::RowSink sink{rep.rows, m, master};
  auto check = [&](std::string name, bool pass, double value, double threshold) {
    rep.checks.push_back(ReportCheck{std::move(name), pass, value, threshold});
  };

  switch (cfg.experiment) {
    case ExperimentKind::identity: {
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        std::vector<double> diff(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          std::uint64_t s = derive_seed(master, "identity.words", pt * N + i);
          Word w = sample_word(dist, static_cast<int>(n), s);
          CountProcess counts(w, m);
          double lhs = max_z_full(counts, dist);
          double rhs = (li_dp(w, m) - n * dist.p_max()) / std::sqrt(double(n));
          diff[i] = std::abs(lhs - rhs);
        });
        double worst = 0.0;
        for (double d : diff) worst = std::max(worst, d);
        sink.add(n, "max_abs_identity_diff", worst, 0.0);
        check("identity_exact_n" + std::to_string(n), worst <= 1e-9, worst, 1e-9);
      }
      break;
    }

    case ExperimentKind::shape_vs_gue: {
      // Shared limit batch: one spectrum per draw yields every J_{k,m}.
      std::vector<std::vector<double>> jk(m - 1, std::vector<double>(N));
      detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
        Spectrum s = eigenvalues_hermitian(
            traceless(sample_gue(m, derive_seed(master, "shape.gue", i))));
        for (int k = 1; k < m; ++k) jk[k - 1][i] = s.partial[k - 1];
      });
      std::vector<EmpiricalSample> jsamp;
      jsamp.reserve(m - 1);
      for (int k = 1; k < m; ++k) jsamp.emplace_back(jk[k - 1]);

      std::vector<double> last_ks(m - 1, 0.0);
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        std::vector<std::vector<double>> tk(m - 1, std::vector<double>(N));
        std::vector<double> tmabs(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          std::vector<long long> v = detail::sampled_shape_V(
              dist, n, derive_seed(master, "shape.words", pt * N + i));
          for (int k = 1; k < m; ++k) tk[k - 1][i] = detail::t_stat(v[k - 1], k, n, m);
          tmabs[i] = std::abs(detail::t_stat(v[m - 1], m, n, m));
        });
        double tm_worst = 0.0;
        for (double d : tmabs) tm_worst = std::max(tm_worst, d);
        for (int k = 1; k < m; ++k) {
          double ks = ks_two_sample(EmpiricalSample(tk[k - 1]), jsamp[k - 1]);
          last_ks[k - 1] = ks;
          sink.add(n, "ks_t_vs_j_k" + std::to_string(k), ks, 2.0 * band1);
        }
        sink.add(n, "t_m_max_abs", tm_worst, 0.0);
        check("t_m_zero_n" + std::to_string(n), tm_worst <= 1e-9, tm_worst, 1e-9);
      }
      for (int k = 1; k < m; ++k)
        check("ks_final_k" + std::to_string(k), last_ks[k - 1] <= 0.03, last_ks[k - 1], 0.03);
      break;
    }

    case ExperimentKind::rate: {
      std::vector<double> limit(N);
      detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
        limit[i] = sample_J_k(dist, derive_seed(master, "rate.limit", i));
      });
      EmpiricalSample lim(limit);
      std::vector<std::pair<double, double>> points;
      std::vector<double> cvals;
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        std::vector<double> z(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          int li = detail::sampled_li(dist, n, derive_seed(master, "rate.words", pt * N + i));
          z[i] = detail::centered_li_value(li, n, dist.p_max());
        });
        double ks = ks_two_sample(EmpiricalSample(z), lim);
        sink.add(n, "ks_vs_limit", ks, 2.0 * band1);
        // 1/(2N) is the ECDF resolution; flooring keeps the log-log fit total.
        double d = std::max(ks, 0.5 / double(N));
        points.emplace_back(double(n), d);
        double ln = std::log(double(n));
        cvals.push_back(d * std::sqrt(double(n)) / (ln * ln));
      }
      RateFit fit = rate_fit(points);
      rep.slope = fit.slope;
      rep.c_hat = fit.c_hat;
      check("slope_le_-0.25", fit.slope <= -0.25, fit.slope, -0.25);
      double c_prev = cvals[cvals.size() - 2];
      double c_last = cvals.back();
      check("c_hat_last_le_2x_prev", c_last <= 2.0 * c_prev, c_last, 2.0 * c_prev);
      break;
    }

    case ExperimentKind::gap: {
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        std::vector<double> gap(N);
        std::vector<unsigned char> over(N);
        std::atomic<bool> precondition_ok{true};
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          Word w = sample_word(dist, static_cast<int>(n),
                               derive_seed(master, "gap.words", pt * N + i));
          CountProcess counts(w, m);
          GapReport r = gap_report(counts, dist, cfg.alpha);
          gap[i] = r.gap;
          over[i] = r.within ? 0 : 1;
          if (!r.precondition_ok) precondition_ok.store(false, std::memory_order_relaxed);
        });
        double gmin = gap[0], gmax = gap[0];
        long long overs = 0;
        for (long long i = 0; i < N; ++i) {
          gmin = std::min(gmin, gap[i]);
          gmax = std::max(gmax, gap[i]);
          overs += over[i];
        }
        double a = 6.0 + 3.0 * cfg.alpha;
        double alog = a * std::log(double(n));
        double sqnp = std::sqrt(double(n) * dist.p_max());
        double bound = alog * alog / (4.0 * dist.delta() * sqnp) +
                       a * m * std::log(double(n)) / sqnp;
        double frac = double(overs) / double(N);
        sink.add(n, "gap_min", gmin, 0.0);
        sink.add(n, "gap_max", gmax, 0.0);
        sink.add(n, "frac_over_bound", frac, band1);
        sink.add(n, "bound", bound, 0.0);
        sink.add(n, "precondition_ok", precondition_ok.load() ? 1.0 : 0.0, 0.0);
        check("gap_nonnegative_n" + std::to_string(n), gmin >= 0.0, gmin, 0.0);
        check("frac_over_bound_n" + std::to_string(n), frac <= 0.01, frac, 0.01);
      }
      break;
    }

    case ExperimentKind::event_an: {
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        std::vector<unsigned char> fail(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          Word w = sample_word(dist, static_cast<int>(n),
                               derive_seed(master, "an.words", pt * N + i));
          CountProcess counts(w, m);
          fail[i] = event_a_n(counts, dist, cfg.alpha) ? 0 : 1;
        });
        long long failures = 0;
        for (long long i = 0; i < N; ++i) failures += fail[i];
        double budget =
            std::max(3.0, 5.0 * double(N) * 2.0 * m / std::pow(double(n), cfg.alpha));
        sink.add(n, "an_failures", double(failures), band1);
        sink.add(n, "an_budget", budget, 0.0);
        check("an_failures_n" + std::to_string(n), double(failures) <= budget,
              double(failures), budget);
      }
      break;
    }

    case ExperimentKind::couple_demo: {
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        double eps = std::ldexp(1.0, -static_cast<int>(std::min<long long>(n, 1074)));
        Distribution db({dist.p(1) + eps, dist.p(2) - eps});
        std::vector<double> za(N), zb_shared(N), zb_own(N);
        std::vector<unsigned char> mism(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          auto [wa, wb] = sample_word_coupled(dist, db, static_cast<int>(n),
                                              derive_seed(master, "couple.words", pt * N + i));
          int lia = li_dp(wa, 2);
          int lib = li_dp(wb, 2);
          double sq = std::sqrt(double(n));
          za[i] = (lia - n * dist.p_max()) / sq;
          zb_shared[i] = (lib - n * dist.p_max()) / sq;  // case-a centering for both
          zb_own[i] = (lib - n * db.p_max()) / sq;
          mism[i] = (wa == wb) ? 0 : 1;
        });
        long long mismatches = 0;
        for (long long i = 0; i < N; ++i) mismatches += mism[i];
        double ks_shared = ks_two_sample(EmpiricalSample(za), EmpiricalSample(zb_shared));
        double ks_own = ks_two_sample(EmpiricalSample(za), EmpiricalSample(zb_own));
        sink.add(n, "mismatched_pairs", double(mismatches), 0.0);
        sink.add(n, "ks_z_shared_standardization", ks_shared, 2.0 * band1);
        sink.add(n, "ks_z_per_case", ks_own, 2.0 * band1);
        double mismatch_budget = std::max(3.0, std::ceil(5.0 * double(N) * double(n) * eps));
        check("mismatches_n" + std::to_string(n), double(mismatches) <= mismatch_budget,
              double(mismatches), mismatch_budget);
        double ks_budget = 2.0 * (2.0 * band1);  // twice the combined DKW band
        check("ks_shared_n" + std::to_string(n), ks_shared <= ks_budget, ks_shared, ks_budget);
      }
      break;
    }

    case ExperimentKind::tw_regime: {
      const long long Nref = 5 * N;
      std::vector<double> ref(Nref);
      detail::parallel_for_indexed(Nref, cfg.workers, [&](long long i) {
        ref[i] = sample_tw_reference(cfg.m_ref, derive_seed(master, "tw.reference", i));
      });
      EmpiricalSample refs(ref);
      double band_ref = dkw_band(static_cast<int>(Nref), 1e-3);
      std::vector<double> ks_by_pt;
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        int mdim = static_cast<int>(cfg.n_grid[pt]);
        std::vector<double> scaled(N);
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          double j1m = sample_J_km(mdim, 1, derive_seed(master, "tw.gue", pt * N + i));
          scaled[i] = tw_scale(j1m, mdim);
        });
        double ks = ks_two_sample(EmpiricalSample(scaled), refs);
        ks_by_pt.push_back(ks);
        double mean = 0.0;
        for (double v : scaled) mean += v;
        mean /= double(N);
        sink.add(mdim, "ks_vs_tw_reference", ks, band1 + band_ref);
        sink.add(mdim, "tw_mean", mean, 0.0);
      }
      for (std::size_t j = 1; j < ks_by_pt.size(); ++j)
        check("ks_decreasing_step" + std::to_string(j), ks_by_pt[j] < ks_by_pt[j - 1],
              ks_by_pt[j] - ks_by_pt[j - 1], 0.0);
      break;
    }

    case ExperimentKind::limit_sample: {
      CovarianceFactor cf = build_covariance_factor(dist);
      std::vector<double> a(N), b(N);
      detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
        a[i] = sample_J_k(dist, derive_seed(master, "limit.jk", i));
        b[i] = sample_limit_brownian(dist, cf, cfg.grid_G,
                                     derive_seed(master, "limit.brownian", i));
      });
      double mean_a = 0.0, mean_b = 0.0;
      for (long long i = 0; i < N; ++i) {
        mean_a += a[i];
        mean_b += b[i];
      }
      mean_a /= double(N);
      mean_b /= double(N);
      double ks = ks_two_sample(EmpiricalSample(a), EmpiricalSample(b));
      sink.add(cfg.grid_G, "ks_jk_vs_brownian", ks, 2.0 * band1);
      sink.add(cfg.grid_G, "jk_mean", mean_a, 0.0);
      sink.add(cfg.grid_G, "brownian_mean", mean_b, 0.0);
      check("ks_jk_vs_brownian", ks <= 0.03, ks, 0.03);
      break;
    }

    case ExperimentKind::wp: {
      long long n = cfg.n_grid.back();
      std::vector<double> t(N), j(N);
      detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
        int li = detail::sampled_li(dist, n, derive_seed(master, "wp.words", i));
        t[i] = detail::centered_li_value(li, n, dist.p_max());
        j[i] = sample_J_k(dist, derive_seed(master, "wp.limit", i));
      });
      EmpiricalSample ts(t), js(j);
      double w1 = wasserstein_p(ts, js, 1.0);
      double w1_self = wasserstein_p(ts, ts, 1.0);
      sink.add(n, "w1_t_vs_limit", w1, band1);
      sink.add(n, "w1_self", w1_self, 0.0);
      check("w1_le_0.05", w1 <= 0.05, w1, 0.05);
      check("w1_self_zero", w1_self == 0.0, w1_self, 0.0);
      break;
    }

    case ExperimentKind::lci: {
      std::vector<std::vector<int>> lc(cfg.n_grid.size(), std::vector<int>(N));
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        detail::parallel_for_indexed(N, cfg.workers, [&](long long i) {
          Word x = sample_word(dist, static_cast<int>(n),
                               derive_seed(master, "lci.x", pt * N + i));
          Word y = sample_word(dist, static_cast<int>(n),
                               derive_seed(master, "lci.y", pt * N + i));
          lc[pt][i] = lcis_dp(x, y);
        });
      }
      long long n_last = cfg.n_grid.back();
      double mean_last = 0.0;
      for (int v : lc.back()) mean_last += v;
      mean_last /= double(N);
      double e_hat = mean_last / double(n_last);
      if (!(e_hat > 0.0))
        throw std::runtime_error("lci: estimated e_max is zero; alphabet too sparse");
      sink.add(n_last, "e_max_hat", e_hat, 0.0);
      std::vector<std::vector<double>> z(cfg.n_grid.size());
      for (std::size_t pt = 0; pt < cfg.n_grid.size(); ++pt) {
        long long n = cfg.n_grid[pt];
        z[pt].resize(N);
        for (long long i = 0; i < N; ++i)
          z[pt][i] = (lc[pt][i] - n * e_hat) / std::sqrt(double(n));
      }
      std::vector<double> ks_by_pt;
      for (std::size_t pt = 0; pt + 1 < cfg.n_grid.size(); ++pt) {
        double ks = ks_two_sample(EmpiricalSample(z[pt]), EmpiricalSample(z[pt + 1]));
        ks_by_pt.push_back(ks);
        sink.add(cfg.n_grid[pt + 1], "ks_z_consecutive", ks, 2.0 * band1);
      }
      for (std::size_t j = 1; j < ks_by_pt.size(); ++j)
        check("ks_cauchy_decreasing_step" + std::to_string(j), ks_by_pt[j] < ks_by_pt[j - 1],
              ks_by_pt[j] - ks_by_pt[j - 1], 0.0);
      break;
    }
  }

  rep.pass = true;
  for (const ReportCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

// ---- emission ----

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline std::string to_csv(const ExperimentReport& r) {
  std::string s = "experiment,n,m,statistic,value,mc_band,seed\n";
  const char* name = to_string(r.config.experiment);
  for (const ReportRow& row : r.rows) {
    s += name;
    s += ',';
    s += std::to_string(row.n);
    s += ',';
    s += std::to_string(row.m);
    s += ',';
    s += row.statistic;
    s += ',';
    s += detail::fmt17(row.value);
    s += ',';
    s += detail::fmt17(row.mc_band);
    s += ',';
    s += std::to_string(row.seed);
    s += '\n';
  }
  return s;
}

inline nlohmann::json config_echo_json(const ExperimentConfig& c) {
  return nlohmann::json{{"experiment", to_string(c.experiment)},
                        {"dist", c.dist},
                        {"n_grid", c.n_grid},
                        {"n_samples", c.n_samples},
                        {"alpha", c.alpha},
                        {"grid_G", c.grid_G},
                        {"m_ref", c.m_ref},
                        {"seed", c.seed}};
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : r.rows)
    rows.push_back(nlohmann::json{{"n", row.n},
                                  {"m", row.m},
                                  {"statistic", row.statistic},
                                  {"value", row.value},
                                  {"mc_band", row.mc_band},
                                  {"seed", row.seed}});
  nlohmann::json checks = nlohmann::json::array();
  for (const ReportCheck& c : r.checks)
    checks.push_back(nlohmann::json{
        {"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold}});
  nlohmann::json summary{{"pass", r.pass}, {"checks", checks}};
  if (std::isfinite(r.slope)) summary["slope"] = r.slope;
  if (std::isfinite(r.c_hat)) summary["c_hat"] = r.c_hat;
  return nlohmann::json{{"experiment", to_string(r.config.experiment)},
                        {"provenance",
                         {{"config", config_echo_json(r.config)},
                          {"seed", r.config.seed},
                          {"version", r.version}}},
                        {"rows", rows},
                        {"summary", summary}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  const nlohmann::json& cfg = j.at("provenance").at("config");
  r.config.experiment = experiment_from_string(cfg.at("experiment").get<std::string>());
  r.config.dist = cfg.at("dist").get<std::vector<double>>();
  r.config.n_grid = cfg.at("n_grid").get<std::vector<long long>>();
  r.config.n_samples = cfg.at("n_samples").get<long long>();
  r.config.alpha = cfg.at("alpha").get<double>();
  r.config.grid_G = cfg.at("grid_G").get<int>();
  r.config.m_ref = cfg.at("m_ref").get<int>();
  r.config.seed = cfg.at("seed").get<std::uint64_t>();
  r.version = j.at("provenance").at("version").get<std::string>();
  for (const nlohmann::json& row : j.at("rows"))
    r.rows.push_back(ReportRow{row.at("n").get<long long>(), row.at("m").get<int>(),
                               row.at("statistic").get<std::string>(),
                               row.at("value").get<double>(), row.at("mc_band").get<double>(),
                               row.at("seed").get<std::uint64_t>()});
  const nlohmann::json& summary = j.at("summary");
  for (const nlohmann::json& c : summary.at("checks"))
    r.checks.push_back(ReportCheck{c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                                   c.at("value").get<double>(),
                                   c.at("threshold").get<double>()});
  r.slope = summary.contains("slope") ? summary.at("slope").get<double>() : std::nan("");
  r.c_hat = summary.contains("c_hat") ? summary.at("c_hat").get<double>() : std::nan("");
  r.pass = summary.at("pass").get<bool>();
  return r;
}

enum class EmitFormat { csv, json };

inline void emit(const ExperimentReport& r, EmitFormat format, const std::string& path) {
  if (r.rows.empty()) throw std::runtime_error("emit: no rows");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  if (format == EmitFormat::csv)
    f << to_csv(r);
  else
    f << report_to_json(r).dump(2) << '\n';
  if (!f.good()) throw std::runtime_error("emit: write to '" + path + "' failed");
}

}  // namespace rskrates
