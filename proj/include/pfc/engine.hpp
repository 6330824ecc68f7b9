#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pfc/filter.hpp"
#include "pfc/graph.hpp"
#include "pfc/weights.hpp"

namespace pfc {

// =============================================================================
// Consensus iteration runners
// =============================================================================

// How the periodic filtered update is scheduled. Every run advances one
// neighbor exchange per iteration except as noted.
//
//   CombineThenExchange (default): on iterations t with t mod (k+1) == 0 each
//     node replaces its value by the filter combination of its own last k+1
//     values and then performs the usual neighbor exchange in the same tick.
//     At period boundaries the state equals (W p(W))^m x0 on a static
//     topology.
//
//   CombineOnly: the combination step replaces the exchange instead of
//     preceding it, so period boundaries carry p(W)^m x0 and no communication
//     happens on combination ticks.
enum class Schedule { CombineThenExchange, CombineOnly };

struct RunConfig {
  int max_iters = 1000;
  double tol = 1e-9;  // stop when every node's successive change falls below this
  Schedule schedule = Schedule::CombineThenExchange;
  std::uint64_t seed = 0;  // drives topology sampling on dynamic runs
};

// Error history of one run: errors[t] = ||x_t - mu 1||_2 with mu the average
// of the initial values.
struct ConsensusTrace {
  std::vector<double> errors;
  int iterations = 0;
  std::vector<double> final_state;
  double mu = 0.0;
};

// A dynamic run: the model supplies a fresh topology every iteration
// (starting from `initial` for the Markov switch model) and the scheme turns
// each realization into that iteration's weight matrix.
struct DynamicTopology {
  DynamicModel model;
  Graph initial;
  WeightScheme scheme;
};

// x_{t+1} = W x_t (static) or W_t x_t with W_t rebuilt from the sampled
// topology each iteration (dynamic).
ConsensusTrace run_standard(const WeightMatrix& w, const std::vector<double>& x0,
                            const RunConfig& cfg);
ConsensusTrace run_standard(const DynamicTopology& topology, const std::vector<double>& x0,
                            const RunConfig& cfg);

// Periodic filtered updates per the schedule above. Each node only ever
// combines its own last k+1 scalars, so the per-node memory footprint is
// k+1 values. Requires a consensus-preserving filter.
ConsensusTrace run_filtered(const WeightMatrix& w, const PolynomialFilter& f,
                            const std::vector<double>& x0, const RunConfig& cfg);
ConsensusTrace run_filtered(const DynamicTopology& topology, const PolynomialFilter& f,
                            const std::vector<double>& x0, const RunConfig& cfg);

// Scalar epsilon (Wynn) extrapolation baseline on the plain iterate sequence
// x_t = W^t x0, applied componentwise; static topologies only. The trace
// reports the deepest valid even-column estimate available at each iteration
// budget. Differences below the freeze tolerance invalidate the dependent
// table entries instead of dividing by ~zero.
ConsensusTrace run_sea(const WeightMatrix& w, const std::vector<double>& x0, const RunConfig& cfg);

struct ConvergenceStats {
  // first t with errors[t] <= tol * errors[0], if reached
  std::optional<int> iterations_to_tol;
  // geometric-mean per-step factor over the tail half of the trace
  double step_factor = 0.0;
};

ConvergenceStats convergence_stats(const ConsensusTrace& trace, double tol);

}  // namespace pfc
