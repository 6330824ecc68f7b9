#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pfc/linalg.hpp"
#include "pfc/rng.hpp"

namespace pfc {

// =============================================================================
// Topologies
// =============================================================================

// Simple undirected graph on nodes 0..n-1. Edges are stored normalized
// (i < j), sorted and unique. Geometric graphs also carry unit-square node
// positions; for other graphs `positions` is empty.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<double, 2>> positions;
};

// Validates and normalizes an edge list (rejects self-loops, out-of-range
// endpoints; deduplicates).
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Connectivity radius sqrt(log(n)/n) (natural logarithm).
double rgg_default_radius(int n);

// One random geometric placement draw: n uniform points in the unit square,
// edge (i,j) iff the Euclidean distance is strictly below `radius`. The
// result may be disconnected.
Graph rgg_single_draw(int n, double radius, Rng& rng);

// Random geometric graph, redrawing the placement until the result is
// connected (bounded number of attempts, then an error). Radius defaults to
// rgg_default_radius(n).
Graph generate_rgg(int n, std::uint64_t seed, std::optional<double> radius = std::nullopt);

// True iff a breadth-first search from node 0 reaches every node.
bool is_connected(const Graph& g);

std::vector<int> degrees(const Graph& g);

// =============================================================================
// Dynamic topology models
// =============================================================================

struct RggParams {
  int n = 0;
  std::optional<double> radius;  // empty: rgg_default_radius(n)
};

// Every realizable edge of `base` appears independently each iteration with
// probability link_prob(i, j). link_prob is symmetric, zero on the diagonal
// and zero off the realizable edge set.
struct IidFailureModel {
  Graph base;
  Matrix link_prob;
};

// With probability q the whole topology is replaced by a freshly generated
// connected geometric graph (new positions and edges); otherwise it stays.
struct MarkovSwitchModel {
  double q = 0.0;
  RggParams generator;
};

using DynamicModel = std::variant<IidFailureModel, MarkovSwitchModel>;

IidFailureModel make_iid_failure(Graph base, Matrix link_prob);
// convenience: one probability for every realizable edge
IidFailureModel make_iid_failure(Graph base, double p);
MarkovSwitchModel make_markov_switch(double q, RggParams generator);

// Draws the topology for the next iteration. For IidFailureModel `current`
// is ignored; for MarkovSwitchModel it is the previous iteration's graph.
Graph sample_topology(const DynamicModel& model, const Graph& current, Rng& rng);

}  // namespace pfc
