#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pfc/experiments.hpp"
#include "pfc/filter.hpp"
#include "pfc/optimize.hpp"
#include "pfc/rng.hpp"
#include "pfc/spectral.hpp"
#include "pfc/weights.hpp"

using namespace pfc;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

const std::string& content_of(const std::vector<CsvFile>& files, const std::string& name) {
  for (const auto& [file_name, content] : files)
    if (file_name == name) return content;
  throw std::runtime_error("missing file " + name);
}

}  // namespace

TEST_CASE("newton shapes table") {
  ExperimentConfig cfg = default_config("newton-shapes");
  cfg.k_list = {2, 5};
  const auto files = newton_shapes_csv(cfg);
  const auto rows = parse_csv(content_of(files, "newton_shapes.csv"));
  REQUIRE(rows.size() == 1 + 2 * 201);
  CHECK(rows[0] == std::vector<std::string>{"k", "lambda", "p"});

  const auto k5 = oracle::shifted_power_coeffs(5, 0.0);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const int k = std::stoi(rows[r][0]);
    const double lambda = std::stod(rows[r][1]);
    const double p = std::stod(rows[r][2]);
    if (lambda == 1.0) CHECK(p == doctest::Approx(1.0).epsilon(1e-14));
    if (k == 2 && lambda == 0.5) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));
    if (k == 5) {
      double expected = 0.0, power = 1.0;
      for (double c : k5) {
        expected += c * power;
        power *= lambda;
      }
      CHECK(std::fabs(p - expected) < 1e-12);
    }
  }
}

TEST_CASE("spectrum effect table") {
  const ExperimentConfig cfg = default_config("spectrum-effect");
  const auto files = spectrum_effect_csv(cfg);
  const auto rows = parse_csv(content_of(files, "spectrum_effect.csv"));
  REQUIRE(rows.size() == static_cast<std::size_t>(cfg.n) + 1);
  CHECK(rows[0] == std::vector<std::string>{"index", "eigenvalue_before", "eigenvalue_after"});

  std::vector<double> before, after;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    before.push_back(std::stod(rows[r][1]));
    after.push_back(std::stod(rows[r][2]));
  }
  CHECK(before[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(after[0] == doctest::Approx(1.0).epsilon(1e-9));

  double before_radius = 0.0, after_radius = 0.0;
  for (std::size_t i = 1; i < before.size(); ++i) {
    before_radius = std::max(before_radius, std::fabs(before[i]));
    after_radius = std::max(after_radius, std::fabs(after[i]));
  }
  CHECK(after_radius < before_radius);  // the filter widens the spectral gap

  // the after column is the filtered before column, reported as a multiset
  const Graph g = generate_rgg(cfg.n, Rng::derive(cfg.seed, 1));
  const WeightMatrix w = max_degree_weights(g);
  const MinimaxSolution sol = optimal_filter_static(w, 4);
  std::vector<double> expected = apply_to_spectrum(sol.filter, before);
  std::sort(expected.rbegin(), expected.rend());
  for (std::size_t i = 0; i < after.size(); ++i) CHECK(std::fabs(after[i] - expected[i]) <= 1e-8);
}

TEST_CASE("static experiment shares the initial state across methods") {
  ExperimentConfig cfg = default_config("static");
  cfg.n = 25;
  cfg.max_iters = 30;
  cfg.k_list = {2, 4};
  const auto files = static_convergence_csv(cfg);

  for (const char* name : {"static_laplacian.csv", "static_maxdegree.csv",
                           "static_metropolis.csv"}) {
    const auto rows = parse_csv(content_of(files, name));
    CHECK(rows[0] == std::vector<std::string>{"method", "k", "iteration", "error"});
    std::map<std::string, double> first_error;
    std::size_t data_rows = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      ++data_rows;
      if (rows[r][2] == "0") first_error[rows[r][0] + "/" + rows[r][1]] = std::stod(rows[r][3]);
    }
    // standard, sea, and two degrees each of newton/optimal
    CHECK(first_error.size() == 6);
    CHECK(data_rows == 6 * 31);
    const double reference = first_error.begin()->second;
    CHECK(reference > 0.0);
    for (const auto& [method, value] : first_error) CHECK(value == reference);
  }

  const auto summary = parse_csv(content_of(files, "summary.csv"));
  CHECK(summary[0] ==
        std::vector<std::string>{"scheme", "method", "k", "iterations_to_tol", "step_factor"});
  CHECK(summary.size() == 1 + 3 * 6);
}

TEST_CASE("dynamic experiment table shapes and medians") {
  ExperimentConfig cfg = default_config("dynamic");
  cfg.n = 16;
  cfg.trials = 3;
  cfg.k_list = {1};
  cfg.q_list = {0.1};
  cfg.max_iters = 20;
  cfg.samples = 50;
  const auto files = dynamic_convergence_csv(cfg);

  const auto rows = parse_csv(content_of(files, "dynamic.csv"));
  CHECK(rows[0] ==
        std::vector<std::string>{"method", "k", "q", "trial", "iteration", "error"});
  CHECK(rows.size() == 1 + 3 * 3 * 21);  // methods x trials x iterations

  const auto medians = parse_csv(content_of(files, "dynamic_median.csv"));
  CHECK(medians[0] ==
        std::vector<std::string>{"method", "k", "q", "iteration", "median_error"});
  CHECK(medians.size() == 1 + 3 * 21);

  // median at iteration 0 must be the middle of the three trial values
  std::vector<double> standard_zero;
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r][0] == "standard" && rows[r][4] == "0") standard_zero.push_back(std::stod(rows[r][5]));
  REQUIRE(standard_zero.size() == 3);
  std::sort(standard_zero.begin(), standard_zero.end());
  for (std::size_t r = 1; r < medians.size(); ++r)
    if (medians[r][0] == "standard" && medians[r][3] == "0")
      CHECK(std::stod(medians[r][4]) == doctest::Approx(standard_zero[1]));

  const auto summary = parse_csv(content_of(files, "summary.csv"));
  CHECK(summary[0] == std::vector<std::string>{"method", "k", "q", "iterations_to_tol",
                                               "median_final_error"});
  CHECK(summary.size() == 1 + 3);
}

TEST_CASE("experiments are byte-deterministic") {
  ExperimentConfig stat = default_config("static");
  stat.n = 20;
  stat.max_iters = 15;
  stat.k_list = {2};
  CHECK(run_experiment(stat) == run_experiment(stat));

  ExperimentConfig dyn = default_config("dynamic");
  dyn.n = 12;
  dyn.trials = 2;
  dyn.k_list = {1};
  dyn.q_list = {0.5};
  dyn.max_iters = 10;
  dyn.samples = 20;
  CHECK(run_experiment(dyn) == run_experiment(dyn));
}

TEST_CASE("config files override defaults, flags aside") {
  ExperimentConfig cfg = default_config("dynamic");
  cfg = apply_config_file(std::move(cfg),
                          "# comment\n"
                          "n = 32\n"
                          "seed = 9\n"
                          "k_list = 1,3\n"
                          "q_list = 0.2,0.4\n"
                          "tol = 1e-4  # inline comment\n"
                          "trials = 7\n");
  CHECK(cfg.n == 32);
  CHECK(cfg.seed == 9);
  CHECK(cfg.k_list == std::vector<int>{1, 3});
  CHECK(cfg.q_list == std::vector<double>{0.2, 0.4});
  CHECK(cfg.tol == doctest::Approx(1e-4));
  CHECK(cfg.trials == 7);
  CHECK(cfg.max_iters == 100);  // untouched default

  CHECK_THROWS_AS(apply_config_file(default_config("static"), "bogus_key = 1\n"),
                  std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = default_config("dynamic");
  cfg.q_list = {1.2};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = default_config("static");
  cfg.trials = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = default_config("static");
  cfg.tol = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  CHECK_THROWS_AS(default_config("nonsense"), std::invalid_argument);
}
