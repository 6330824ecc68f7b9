#include "pfc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "pfc/engine.hpp"
#include "pfc/filter.hpp"
#include "pfc/graph.hpp"
#include "pfc/io.hpp"
#include "pfc/optimize.hpp"
#include "pfc/rng.hpp"
#include "pfc/spectral.hpp"
#include "pfc/weights.hpp"

namespace pfc {

namespace {

// seed streams; experiments derive every generator from these fixed lanes
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kInitialValuesStream = 2;
constexpr std::uint64_t kMeanWeightStream = 3;
constexpr std::uint64_t kTrialBase = 1000;

// effectively disables the stopping rule so traces cover the full budget
constexpr double kNoStop = 1e-300;

std::vector<double> uniform_initial_values(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform01();
  return x;
}

double auto_gamma_static(const Graph& g, double configured) {
  if (configured > 0.0) return configured;
  const auto d = degrees(g);
  const int dmax = *std::max_element(d.begin(), d.end());
  return 0.9 / dmax;
}

double auto_gamma_markov(int n, double configured) {
  if (configured > 0.0) return configured;
  return 0.9 / (n - 1);  // below 1/d_max for every possible realization
}

std::string trace_rows(const std::string& prefix, const ConsensusTrace& trace, int budget) {
  std::string out;
  for (int t = 0; t <= budget; ++t) {
    // a run that hit an exact fixed point is constant afterwards
    const double err =
        t < static_cast<int>(trace.errors.size()) ? trace.errors[t] : trace.errors.back();
    out += prefix + std::to_string(t) + "," + format_g17(err) + "\n";
  }
  return out;
}

double error_at(const ConsensusTrace& trace, int t) {
  return t < static_cast<int>(trace.errors.size()) ? trace.errors[t] : trace.errors.back();
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string summary_row(const std::string& prefix, const ConvergenceStats& stats) {
  const int iters = stats.iterations_to_tol ? *stats.iterations_to_tol : -1;
  return prefix + std::to_string(iters) + "," + format_g17(stats.step_factor) + "\n";
}

}  // namespace

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "newton-shapes") {
    cfg.k_list = {2, 4, 6};
  } else if (experiment == "spectrum-effect") {
    cfg.k_list = {4};
  } else if (experiment == "static") {
    cfg.k_list = {2, 4, 6};
    cfg.max_iters = 60;
  } else if (experiment == "dynamic") {
    cfg.k_list = {1, 2};
    cfg.q_list = {1.0, 0.1, 0.3, 0.8};
    cfg.max_iters = 100;
  } else {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be positive");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (cfg.max_iters < 0) throw std::invalid_argument("config: max_iters must be nonnegative");
  if (cfg.samples < 1) throw std::invalid_argument("config: samples must be positive");
  for (int k : cfg.k_list)
    if (k < 0) throw std::invalid_argument("config: degrees must be nonnegative");
  for (double q : cfg.q_list)
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("config: q values must lie in [0,1]");
  if (cfg.gamma < 0.0) throw std::invalid_argument("config: gamma must be nonnegative");
}

ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto parse_int_list = [](const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
  };
  auto parse_double_list = [](const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    if (key == "experiment") base.experiment = value;
    else if (key == "n") base.n = std::stoi(value);
    else if (key == "seed") base.seed = std::stoull(value);
    else if (key == "scheme") base.scheme = value;
    else if (key == "gamma") base.gamma = std::stod(value);
    else if (key == "k_list") base.k_list = parse_int_list(value);
    else if (key == "a") base.newton_a = std::stod(value);
    else if (key == "q_list") base.q_list = parse_double_list(value);
    else if (key == "trials") base.trials = std::stoi(value);
    else if (key == "tol") base.tol = std::stod(value);
    else if (key == "max_iters") base.max_iters = std::stoi(value);
    else if (key == "samples") base.samples = std::stoi(value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return base;
}

std::vector<CsvFile> newton_shapes_csv(const ExperimentConfig& cfg) {
  validate_config(cfg);
  std::string csv = "k,lambda,p\n";
  for (int k : cfg.k_list) {
    const PolynomialFilter f = newton_filter(k, cfg.newton_a);
    for (int i = 0; i <= 200; ++i) {
      const double lambda = static_cast<double>(i) / 200.0;
      csv += std::to_string(k) + "," + format_g17(lambda) + "," + format_g17(eval(f, lambda)) +
             "\n";
    }
  }
  return {{"newton_shapes.csv", csv}};
}

std::vector<CsvFile> spectrum_effect_csv(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.k_list.empty()) throw std::invalid_argument("spectrum-effect: k_list is empty");
  const Graph g = generate_rgg(cfg.n, Rng::derive(cfg.seed, kGraphStream));
  const WeightMatrix w = max_degree_weights(g);
  const SpectralDecomposition dec = eig_sym(w.entries);
  const MinimaxSolution sol = optimal_filter_static(w, cfg.k_list.front());
  std::vector<double> after = apply_to_spectrum(sol.filter, dec.eigenvalues);
  std::sort(after.rbegin(), after.rend());
  std::string csv = "index,eigenvalue_before,eigenvalue_after\n";
  for (int i = 0; i < static_cast<int>(dec.eigenvalues.size()); ++i)
    csv += std::to_string(i + 1) + "," + format_g17(dec.eigenvalues[i]) + "," +
           format_g17(after[i]) + "\n";
  return {{"spectrum_effect.csv", csv}};
}

std::vector<CsvFile> static_convergence_csv(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const int budget = cfg.max_iters > 0 ? cfg.max_iters : 60;
  const Graph g = generate_rgg(cfg.n, Rng::derive(cfg.seed, kGraphStream));
  const std::vector<double> x0 =
      uniform_initial_values(cfg.n, Rng::derive(cfg.seed, kInitialValuesStream));

  std::vector<WeightSchemeKind> kinds;
  if (cfg.scheme == "all") {
    kinds = {WeightSchemeKind::Laplacian, WeightSchemeKind::MaxDegree,
             WeightSchemeKind::Metropolis};
  } else {
    kinds = {weight_scheme_from_string(cfg.scheme)};
  }

  RunConfig rc;
  rc.max_iters = budget;
  rc.tol = kNoStop;

  std::vector<CsvFile> files;
  std::string summary = "scheme,method,k,iterations_to_tol,step_factor\n";
  for (WeightSchemeKind kind : kinds) {
    WeightScheme scheme{kind, 0.0};
    if (kind == WeightSchemeKind::Laplacian) scheme.gamma = auto_gamma_static(g, cfg.gamma);
    const WeightMatrix w = build_weights(g, scheme);
    const std::string scheme_name = to_string(kind);

    std::string csv = "method,k,iteration,error\n";
    auto record = [&](const std::string& method, int k, const ConsensusTrace& trace) {
      csv += trace_rows(method + "," + std::to_string(k) + ",", trace, budget);
      summary += scheme_name + "," + method + "," + std::to_string(k) + "," +
                 summary_row("", convergence_stats(trace, cfg.tol));
    };

    record("standard", 0, run_standard(w, x0, rc));
    record("sea", 0, run_sea(w, x0, rc));
    for (int k : cfg.k_list) {
      record("newton", k, run_filtered(w, newton_filter(k, cfg.newton_a), x0, rc));
      const MinimaxSolution sol = optimal_filter_static(w, k);
      record("optimal", k, run_filtered(w, sol.filter, x0, rc));
    }
    files.emplace_back("static_" + scheme_name + ".csv", csv);
  }
  files.emplace_back("summary.csv", summary);
  return files;
}

std::vector<CsvFile> dynamic_convergence_csv(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.q_list.empty()) throw std::invalid_argument("dynamic: q_list is empty");
  const int budget = cfg.max_iters > 0 ? cfg.max_iters : 100;
  const WeightScheme scheme{WeightSchemeKind::Laplacian, auto_gamma_markov(cfg.n, cfg.gamma)};
  const RggParams generator{cfg.n, std::nullopt};

  // filters are designed offline, once, on the generator ensemble's mean
  // weight matrix; topology realizations then change underneath them
  std::vector<PolynomialFilter> newton_filters, optimal_filters;
  for (int k : cfg.k_list) {
    newton_filters.push_back(newton_filter(k, cfg.newton_a));
    const DynamicModel model = make_markov_switch(1.0, generator);
    optimal_filters.push_back(
        optimal_filter_dynamic(model, scheme, k, cfg.samples, Rng::derive(cfg.seed, kMeanWeightStream))
            .filter);
  }

  struct MethodRef {
    std::string name;
    int k;
    const PolynomialFilter* filter;  // null: standard iteration
  };
  std::vector<MethodRef> methods{{"standard", 0, nullptr}};
  for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
    methods.push_back({"newton", cfg.k_list[i], &newton_filters[i]});
    methods.push_back({"optimal", cfg.k_list[i], &optimal_filters[i]});
  }

  std::string csv = "method,k,q,trial,iteration,error\n";
  std::string medians = "method,k,q,iteration,median_error\n";
  std::string summary = "method,k,q,iterations_to_tol,median_final_error\n";

  for (std::size_t qi = 0; qi < cfg.q_list.size(); ++qi) {
    const double q = cfg.q_list[qi];
    // errors[method][trial] -> trace
    std::vector<std::vector<ConsensusTrace>> traces(methods.size());

    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t trial_seed =
          Rng::derive(cfg.seed, kTrialBase + qi * static_cast<std::uint64_t>(cfg.trials) + trial);
      const Graph g0 = generate_rgg(cfg.n, Rng::derive(trial_seed, kGraphStream));
      const std::vector<double> x0 =
          uniform_initial_values(cfg.n, Rng::derive(trial_seed, kInitialValuesStream));
      const DynamicTopology topology{make_markov_switch(q, generator), g0, scheme};
      RunConfig rc;
      rc.max_iters = budget;
      rc.tol = kNoStop;
      rc.seed = Rng::derive(trial_seed, kTrialBase);  // shared topology stream per method

      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        ConsensusTrace trace = methods[mi].filter == nullptr
                                   ? run_standard(topology, x0, rc)
                                   : run_filtered(topology, *methods[mi].filter, x0, rc);
        const std::string prefix = methods[mi].name + "," + std::to_string(methods[mi].k) + "," +
                                   format_g17(q) + "," + std::to_string(trial) + ",";
        csv += trace_rows(prefix, trace, budget);
        traces[mi].push_back(std::move(trace));
      }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      ConsensusTrace median_trace;
      median_trace.errors.resize(budget + 1);
      for (int t = 0; t <= budget; ++t) {
        std::vector<double> values;
        values.reserve(traces[mi].size());
        for (const ConsensusTrace& trace : traces[mi]) values.push_back(error_at(trace, t));
        median_trace.errors[t] = median_of(std::move(values));
        medians += methods[mi].name + "," + std::to_string(methods[mi].k) + "," + format_g17(q) +
                   "," + std::to_string(t) + "," + format_g17(median_trace.errors[t]) + "\n";
      }
      const ConvergenceStats stats = convergence_stats(median_trace, cfg.tol);
      summary += methods[mi].name + "," + std::to_string(methods[mi].k) + "," + format_g17(q) +
                 "," + std::to_string(stats.iterations_to_tol ? *stats.iterations_to_tol : -1) +
                 "," + format_g17(median_trace.errors.back()) + "\n";
    }
  }
  return {{"dynamic.csv", csv}, {"dynamic_median.csv", medians}, {"summary.csv", summary}};
}

std::vector<CsvFile> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "newton-shapes") return newton_shapes_csv(cfg);
  if (cfg.experiment == "spectrum-effect") return spectrum_effect_csv(cfg);
  if (cfg.experiment == "static") return static_convergence_csv(cfg);
  if (cfg.experiment == "dynamic") return dynamic_convergence_csv(cfg);
  throw std::invalid_argument("unknown experiment '" + cfg.experiment + "'");
}

void write_files(const std::vector<CsvFile>& files, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files)
    write_text_file((std::filesystem::path(dir) / name).string(), content);
}

}  // namespace pfc
