// Command-line front end: graph generation, spectrum inspection, filter
// design, single consensus runs, and the reproducible experiment suites.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pfc/engine.hpp"
#include "pfc/experiments.hpp"
#include "pfc/filter.hpp"
#include "pfc/graph.hpp"
#include "pfc/io.hpp"
#include "pfc/optimize.hpp"
#include "pfc/spectral.hpp"
#include "pfc/weights.hpp"

namespace {

struct MatrixInput {
  std::string graph_path;
  std::string matrix_path;
  std::string scheme = "metropolis";
  double gamma = 0.0;  // 0: automatic 0.9/d_max for the Laplacian scheme
};

void add_matrix_input_flags(CLI::App* cmd, MatrixInput& in) {
  cmd->add_option("--graph", in.graph_path, "edge-list graph file");
  cmd->add_option("--matrix", in.matrix_path, "dense weight-matrix file");
  cmd->add_option("--scheme", in.scheme, "weight scheme: maxdegree|metropolis|laplacian")
      ->capture_default_str();
  cmd->add_option("--gamma", in.gamma, "Laplacian step size (0 = 0.9/d_max)")
      ->capture_default_str();
}

pfc::WeightScheme resolve_scheme(const MatrixInput& in, const pfc::Graph& g) {
  pfc::WeightScheme scheme{pfc::weight_scheme_from_string(in.scheme), in.gamma};
  if (scheme.kind == pfc::WeightSchemeKind::Laplacian && scheme.gamma == 0.0) {
    const auto d = pfc::degrees(g);
    int dmax = 0;
    for (int v : d) dmax = std::max(dmax, v);
    if (dmax == 0) throw std::invalid_argument("cannot pick gamma for an empty graph");
    scheme.gamma = 0.9 / dmax;
  }
  return scheme;
}

// loads either the matrix file or graph+scheme; returns the matrix and, when
// a graph was given, the graph itself
std::pair<pfc::WeightMatrix, std::optional<pfc::Graph>> load_weights(const MatrixInput& in) {
  if (!in.matrix_path.empty() && !in.graph_path.empty())
    throw std::invalid_argument("give either --graph or --matrix, not both");
  if (!in.matrix_path.empty())
    return {pfc::weight_matrix_from(pfc::read_matrix(in.matrix_path), 1e-12), std::nullopt};
  if (in.graph_path.empty()) throw std::invalid_argument("need --graph or --matrix");
  pfc::Graph g = pfc::read_graph(in.graph_path);
  pfc::WeightMatrix w = pfc::build_weights(g, resolve_scheme(in, g));
  return {std::move(w), std::move(g)};
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    pfc::write_text_file(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial-filtered distributed average consensus toolkit"};
  app.require_subcommand(1);

  // ---- gen-graph ----
  auto* gen = app.add_subcommand("gen-graph", "generate a connected random geometric graph");
  int gen_n = 50;
  std::uint64_t gen_seed = 1;
  double gen_radius = 0.0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "node count")->capture_default_str();
  gen->add_option("--seed", gen_seed, "placement seed")->capture_default_str();
  gen->add_option("--radius", gen_radius, "connection radius (0 = sqrt(log(n)/n))")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ---- spectrum ----
  auto* spectrum_cmd = app.add_subcommand("spectrum", "print sorted eigenvalues of a weight matrix");
  MatrixInput spec_in;
  std::string spec_out;
  add_matrix_input_flags(spectrum_cmd, spec_in);
  spectrum_cmd->add_option("--out", spec_out, "output file (default stdout)");

  // ---- design-filter ----
  auto* design = app.add_subcommand("design-filter", "minimax-optimal polynomial filter design");
  MatrixInput design_in;
  int design_k = 4;
  std::string design_mode = "static";
  std::string design_model = "markov";
  double design_link_p = 1.0;
  double design_q = 1.0;
  int design_samples = 1000;
  std::uint64_t design_seed = 1;
  std::string design_out;
  add_matrix_input_flags(design, design_in);
  design->add_option("--k", design_k, "filter degree")->capture_default_str();
  design->add_option("--mode", design_mode, "static|dynamic")->capture_default_str();
  design->add_option("--dynamic-model", design_model, "iid|markov")->capture_default_str();
  design->add_option("--link-p", design_link_p, "iid model: uniform edge probability")
      ->capture_default_str();
  design->add_option("--q", design_q, "markov model: per-iteration switch probability")
      ->capture_default_str();
  design->add_option("--samples", design_samples, "Monte Carlo draws for the mean matrix")
      ->capture_default_str();
  design->add_option("--seed", design_seed, "Monte Carlo seed")->capture_default_str();
  design->add_option("--out", design_out, "write the filter CSV line here as well");

  // ---- run ----
  auto* run = app.add_subcommand("run", "run one consensus iteration and emit its trace");
  MatrixInput run_in;
  std::string run_method = "standard";
  int run_k = 4;
  double run_a = 0.0;
  std::uint64_t run_x0_seed = 1;
  int run_max_iters = 1000;
  double run_stop_tol = 1e-9;
  std::string run_schedule = "combine-exchange";
  std::string run_mode = "static";
  std::string run_model = "markov";
  double run_link_p = 1.0;
  double run_q = 0.1;
  int run_samples = 1000;
  std::uint64_t run_seed = 1;
  std::string run_out;
  add_matrix_input_flags(run, run_in);
  run->add_option("--method", run_method, "standard|newton|optimal|sea")->capture_default_str();
  run->add_option("--k", run_k, "filter degree for newton/optimal")->capture_default_str();
  run->add_option("--a", run_a, "left endpoint of the Hermite filter")->capture_default_str();
  run->add_option("--x0-seed", run_x0_seed, "seed for the uniform initial values")
      ->capture_default_str();
  run->add_option("--max-iters", run_max_iters, "iteration budget")->capture_default_str();
  run->add_option("--stop-tol", run_stop_tol, "per-node successive-change stopping threshold")
      ->capture_default_str();
  run->add_option("--schedule", run_schedule, "combine-exchange|combine-only")
      ->capture_default_str();
  run->add_option("--mode", run_mode, "static|dynamic")->capture_default_str();
  run->add_option("--dynamic-model", run_model, "iid|markov")->capture_default_str();
  run->add_option("--link-p", run_link_p, "iid model: uniform edge probability")
      ->capture_default_str();
  run->add_option("--q", run_q, "markov model: switch probability")->capture_default_str();
  run->add_option("--samples", run_samples, "Monte Carlo draws for optimal dynamic design")
      ->capture_default_str();
  run->add_option("--seed", run_seed, "dynamic sampling seed")->capture_default_str();
  run->add_option("--out", run_out, "output file (default stdout)");

  // ---- experiment ----
  auto* exp = app.add_subcommand("experiment", "run a reproducible experiment suite");
  std::string exp_id;
  std::string exp_config;
  std::string exp_out_dir = "out";
  int exp_n = 0;
  std::uint64_t exp_seed = 0;
  std::string exp_scheme;
  double exp_gamma = -1.0;
  std::string exp_k_list;
  double exp_a = 0.0;
  std::string exp_q_list;
  int exp_trials = 0;
  double exp_tol = 0.0;
  int exp_max_iters = -1;
  int exp_samples = 0;
  exp->add_option("id", exp_id, "newton-shapes|spectrum-effect|static|dynamic")->required();
  exp->add_option("--config", exp_config, "flat key=value config file");
  exp->add_option("--out-dir", exp_out_dir, "output directory")->capture_default_str();
  exp->add_option("--n", exp_n, "sensor count");
  exp->add_option("--seed", exp_seed, "base seed");
  exp->add_option("--scheme", exp_scheme, "all|maxdegree|metropolis|laplacian (static)");
  exp->add_option("--gamma", exp_gamma, "Laplacian step size (0 = automatic)");
  exp->add_option("--k-list", exp_k_list, "comma-separated degrees");
  exp->add_option("--a", exp_a, "Hermite filter left endpoint");
  exp->add_option("--q-list", exp_q_list, "comma-separated switch probabilities");
  exp->add_option("--trials", exp_trials, "Monte Carlo trials (dynamic)");
  exp->add_option("--tol", exp_tol, "relative error target for summaries");
  exp->add_option("--max-iters", exp_max_iters, "iteration budget");
  exp->add_option("--samples", exp_samples, "Monte Carlo draws for mean matrices");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::optional<double> radius;
      if (gen_radius > 0.0) radius = gen_radius;
      const pfc::Graph g = pfc::generate_rgg(gen_n, gen_seed, radius);
      emit(pfc::graph_to_string(g), gen_out);
      return 0;
    }

    if (spectrum_cmd->parsed()) {
      const auto [w, g] = load_weights(spec_in);
      const pfc::SpectralDecomposition dec = pfc::eig_sym(w.entries);
      std::string csv = "index,eigenvalue\n";
      for (int i = 0; i < static_cast<int>(dec.eigenvalues.size()); ++i)
        csv += std::to_string(i + 1) + "," + pfc::format_g17(dec.eigenvalues[i]) + "\n";
      emit(csv, spec_out);
      return 0;
    }

    if (design->parsed()) {
      const auto [w, g] = load_weights(design_in);
      pfc::MinimaxSolution sol;
      if (design_mode == "static") {
        sol = pfc::optimal_filter_static(w, design_k);
      } else if (design_mode == "dynamic") {
        if (!g) throw std::invalid_argument("dynamic design needs --graph (the realizable edges)");
        const pfc::WeightScheme scheme = resolve_scheme(design_in, *g);
        pfc::DynamicModel model =
            design_model == "iid"
                ? pfc::DynamicModel(pfc::make_iid_failure(*g, design_link_p))
                : pfc::DynamicModel(pfc::make_markov_switch(design_q, pfc::RggParams{g->n, {}}));
        sol = pfc::optimal_filter_dynamic(model, scheme, design_k, design_samples, design_seed);
      } else {
        throw std::invalid_argument("unknown --mode '" + design_mode + "'");
      }
      const std::string line = pfc::filter_to_csv(sol.filter);
      std::printf("%s\ns_star,%s\n", line.c_str(), pfc::format_g17(sol.s_star).c_str());
      if (!design_out.empty()) pfc::write_text_file(design_out, line + "\n");
      return 0;
    }

    if (run->parsed()) {
      const auto [w, g] = load_weights(run_in);
      pfc::RunConfig rc;
      rc.max_iters = run_max_iters;
      rc.tol = run_stop_tol;
      rc.seed = run_seed;
      if (run_schedule == "combine-exchange")
        rc.schedule = pfc::Schedule::CombineThenExchange;
      else if (run_schedule == "combine-only")
        rc.schedule = pfc::Schedule::CombineOnly;
      else
        throw std::invalid_argument("unknown --schedule '" + run_schedule + "'");

      pfc::Rng x0_rng(run_x0_seed);
      std::vector<double> x0(w.n());
      for (double& v : x0) v = x0_rng.uniform01();

      pfc::ConsensusTrace trace;
      if (run_mode == "static") {
        if (run_method == "standard") {
          trace = pfc::run_standard(w, x0, rc);
        } else if (run_method == "newton") {
          trace = pfc::run_filtered(w, pfc::newton_filter(run_k, run_a), x0, rc);
        } else if (run_method == "optimal") {
          trace = pfc::run_filtered(w, pfc::optimal_filter_static(w, run_k).filter, x0, rc);
        } else if (run_method == "sea") {
          trace = pfc::run_sea(w, x0, rc);
        } else {
          throw std::invalid_argument("unknown --method '" + run_method + "'");
        }
      } else if (run_mode == "dynamic") {
        if (!g) throw std::invalid_argument("dynamic runs need --graph");
        const pfc::WeightScheme scheme = resolve_scheme(run_in, *g);
        pfc::DynamicModel model =
            run_model == "iid"
                ? pfc::DynamicModel(pfc::make_iid_failure(*g, run_link_p))
                : pfc::DynamicModel(pfc::make_markov_switch(run_q, pfc::RggParams{g->n, {}}));
        const pfc::DynamicTopology topology{model, *g, scheme};
        if (run_method == "standard") {
          trace = pfc::run_standard(topology, x0, rc);
        } else if (run_method == "newton") {
          trace = pfc::run_filtered(topology, pfc::newton_filter(run_k, run_a), x0, rc);
        } else if (run_method == "optimal") {
          const pfc::MinimaxSolution sol =
              pfc::optimal_filter_dynamic(model, scheme, run_k, run_samples, run_seed);
          trace = pfc::run_filtered(topology, sol.filter, x0, rc);
        } else if (run_method == "sea") {
          throw std::invalid_argument("sea supports static topologies only");
        } else {
          throw std::invalid_argument("unknown --method '" + run_method + "'");
        }
      } else {
        throw std::invalid_argument("unknown --mode '" + run_mode + "'");
      }

      std::string csv = "iteration,error\n";
      for (int t = 0; t < static_cast<int>(trace.errors.size()); ++t)
        csv += std::to_string(t) + "," + pfc::format_g17(trace.errors[t]) + "\n";
      emit(csv, run_out);
      return 0;
    }

    if (exp->parsed()) {
      pfc::ExperimentConfig cfg = pfc::default_config(exp_id);
      if (!exp_config.empty())
        cfg = pfc::apply_config_file(std::move(cfg), pfc::read_text_file(exp_config));
      cfg.experiment = exp_id;
      auto parse_ints = [](const std::string& s) {
        std::vector<int> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        return out;
      };
      auto parse_doubles = [](const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
      };
      if (exp->count("--n")) cfg.n = exp_n;
      if (exp->count("--seed")) cfg.seed = exp_seed;
      if (exp->count("--scheme")) cfg.scheme = exp_scheme;
      if (exp->count("--gamma")) cfg.gamma = exp_gamma;
      if (exp->count("--k-list")) cfg.k_list = parse_ints(exp_k_list);
      if (exp->count("--a")) cfg.newton_a = exp_a;
      if (exp->count("--q-list")) cfg.q_list = parse_doubles(exp_q_list);
      if (exp->count("--trials")) cfg.trials = exp_trials;
      if (exp->count("--tol")) cfg.tol = exp_tol;
      if (exp->count("--max-iters")) cfg.max_iters = exp_max_iters;
      if (exp->count("--samples")) cfg.samples = exp_samples;

      const auto files = pfc::run_experiment(cfg);
      pfc::write_files(files, exp_out_dir);
      for (const auto& [name, content] : files)
        std::fprintf(stderr, "wrote %s/%s (%zu bytes)\n", exp_out_dir.c_str(), name.c_str(),
                     content.size());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
