#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/evolve.hpp"
#include "nlslab/ground_state.hpp"

namespace nls {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Initial data recipe for `evolve`: either a snapshot on disk or a built-in
// Gaussian.
struct InitialData {
  std::string kind = "gaussian";  // gaussian | snapshot
  std::string path;
  double amplitude = 0.1;
  std::vector<double> widths;  // empty: 1 per axis
};

struct SweepSpec {
  std::string parameter;  // omega | lambda
  std::vector<double> values;
  std::string command;  // ground | evolve | instability
  int max_workers = 0;  // 0: hardware concurrency
};

// One experiment: a command plus everything it needs, loadable from a JSON
// file with CLI overrides applied on top. The resolved form is echoed into
// every output directory.
struct ExperimentConfig {
  std::string command;  // ground | evolve | instability | verify | sweep
  int n_dims = 2;
  std::vector<int> points{256, 256};
  std::vector<double> half_lengths{16.0, 16.0};
  double p = 5.0;
  double omega = 1.0;
  GroundStateOptions ground;
  EvolveOptions evolve;
  InitialData initial;
  double lambda = 1.2;
  double slack = 1.1;
  int verify_fields = 20;
  int verify_lemma_fields = 50;
  SweepSpec sweep;
  std::string output_dir = "out";
  std::uint64_t seed = 20240915;

  ModelParams params() const { return ModelParams(n_dims, p, omega); }
  void validate() const;           // throws ConfigError with a precise message
  std::string resolved_json() const;
};

ExperimentConfig load_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace nls
