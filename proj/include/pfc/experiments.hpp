#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pfc {

// =============================================================================
// Reproducible experiment harness
// =============================================================================
//
// Each experiment is a pure function of its config: identical configs yield
// byte-identical CSV output. Iteration traces are run to the full budget
// (early stopping is disabled) so every curve covers the same range.

struct ExperimentConfig {
  std::string experiment = "static";  // newton-shapes | spectrum-effect | static | dynamic
  int n = 50;
  std::uint64_t seed = 1;
  // static experiment: which weight scheme files to emit (all|maxdegree|metropolis|laplacian)
  std::string scheme = "all";
  // Laplacian step size; 0 selects the automatic value: 0.9/d_max of the
  // generated graph for static topologies, 0.9/(n-1) for the Markov switch
  // model (valid for every possible realization)
  double gamma = 0.0;
  std::vector<int> k_list;
  double newton_a = 0.0;  // left endpoint of the Hermite filter
  std::vector<double> q_list;
  int trials = 100;
  double tol = 1e-6;  // relative error target reported in summaries
  int max_iters = 0;  // 0 selects the per-experiment default (60 static, 100 dynamic)
  int samples = 1000;  // Monte Carlo draws for mean weight matrices
};

// Fills in the per-experiment defaults for k_list / q_list / max_iters.
ExperimentConfig default_config(const std::string& experiment);

void validate_config(const ExperimentConfig& cfg);

// Applies `key = value` lines ('#' starts a comment) over `base`.
ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& text);

using CsvFile = std::pair<std::string, std::string>;  // file name, file content

std::vector<CsvFile> newton_shapes_csv(const ExperimentConfig& cfg);
std::vector<CsvFile> spectrum_effect_csv(const ExperimentConfig& cfg);
std::vector<CsvFile> static_convergence_csv(const ExperimentConfig& cfg);
std::vector<CsvFile> dynamic_convergence_csv(const ExperimentConfig& cfg);

// dispatches on cfg.experiment
std::vector<CsvFile> run_experiment(const ExperimentConfig& cfg);

void write_files(const std::vector<CsvFile>& files, const std::string& dir);

}  // namespace pfc
