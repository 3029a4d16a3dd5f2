#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rskrates/harness.hpp>

namespace {

struct FileConfig {
  rskrates::ExperimentConfig cfg;
  bool has_experiment = false;
  bool has_workers = false;
};

FileConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(f);
  FileConfig out;
  rskrates::ExperimentConfig& c = out.cfg;
  if (j.contains("experiment")) {
    c.experiment = rskrates::experiment_from_string(j.at("experiment").get<std::string>());
    out.has_experiment = true;
  }
  if (j.contains("dist")) c.dist = j.at("dist").get<std::vector<double>>();
  if (j.contains("n_grid")) c.n_grid = j.at("n_grid").get<std::vector<long long>>();
  if (j.contains("n_samples")) c.n_samples = j.at("n_samples").get<long long>();
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("grid_G")) c.grid_G = j.at("grid_G").get<int>();
  if (j.contains("m_ref")) c.m_ref = j.at("m_ref").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) {
    c.workers = j.at("workers").get<int>();
    out.has_workers = true;
  }
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  return out;
}

std::string brief(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo harness for RSK shape statistics of random words"};

  std::string experiment;
  app.add_option("experiment", experiment,
                 "one of: identity shape-vs-gue rate gap event-an couple-demo "
                 "tw-regime limit-sample wp lci");
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags override it");
  std::vector<double> dist;
  auto* odist =
      app.add_option("--dist", dist, "letter probabilities, e.g. 0.5,0.3,0.2")->delimiter(',');
  std::vector<long long> ngrid;
  auto* ongrid =
      app.add_option("--n", ngrid, "word lengths (tw-regime: GUE dimensions)")->delimiter(',');
  long long samples = 0;
  auto* osamples = app.add_option("--samples", samples, "Monte Carlo sample count per point");
  double alpha = 0.0;
  auto* oalpha = app.add_option("--alpha", alpha, "tail exponent (>= 1)");
  int grid_G = 0;
  auto* ogrid_G = app.add_option("--grid", grid_G, "time grid size for the Brownian sampler");
  int m_ref = 0;
  auto* om_ref = app.add_option("--mref", m_ref, "reference GUE dimension (>= 50)");
  std::uint64_t seed = 0;
  auto* oseed = app.add_option("--seed", seed, "master seed");
  int workers = 0;
  auto* oworkers = app.add_option("--workers", workers, "worker threads (default 1)");
  std::string out;
  auto* oout = app.add_option("--out", out, "output path prefix");
  std::string format = "csv";
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    rskrates::ExperimentConfig cfg;
    bool have_experiment = false;
    bool file_workers = false;
    if (!config_path.empty()) {
      FileConfig fc = load_config_file(config_path);
      cfg = fc.cfg;
      have_experiment = fc.has_experiment;
      file_workers = fc.has_workers;
    }
    if (!experiment.empty()) {
      cfg.experiment = rskrates::experiment_from_string(experiment);
      have_experiment = true;
    }
    if (!have_experiment)
      throw std::invalid_argument("no experiment selected (positional argument or --config)");
    if (odist->count()) cfg.dist = dist;
    if (ongrid->count()) cfg.n_grid = ngrid;
    if (osamples->count()) cfg.n_samples = samples;
    if (oalpha->count()) cfg.alpha = alpha;
    if (ogrid_G->count()) cfg.grid_G = grid_G;
    if (om_ref->count()) cfg.m_ref = m_ref;
    if (oseed->count()) cfg.seed = seed;
    if (oout->count()) cfg.out = out;
    if (oworkers->count()) {
      cfg.workers = workers;
    } else if (!file_workers) {
      if (const char* env = std::getenv("RSK_RATES_WORKERS")) {
        cfg.workers = std::atoi(env);
        if (cfg.workers < 1)
          throw std::invalid_argument("RSK_RATES_WORKERS: must be a positive integer");
      }
    }

    rskrates::ExperimentReport rep = rskrates::run_experiment(cfg);
    std::string path = cfg.out + (format == "csv" ? ".csv" : ".json");
    rskrates::emit(rep,
                   format == "csv" ? rskrates::EmitFormat::csv : rskrates::EmitFormat::json,
                   path);

    for (const rskrates::ReportCheck& c : rep.checks)
      std::cout << "[check] " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
                << " (value=" << brief(c.value) << ", threshold=" << brief(c.threshold)
                << ")\n";
    if (std::isfinite(rep.slope))
      std::cout << "[summary] slope=" << brief(rep.slope) << " c_hat=" << brief(rep.c_hat)
                << "\n";
    std::cout << "[result] " << (rep.pass ? "PASS" : "FAIL") << " wrote " << path << "\n";
    return rep.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
