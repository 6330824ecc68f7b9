#include "pfc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "pfc/constants.hpp"

namespace pfc {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("make_graph: negative node count");
  for (auto& [i, j] : edges) {
    if (i == j) throw std::invalid_argument("make_graph: self-loop at node " + std::to_string(i));
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("make_graph: edge endpoint out of range");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

double rgg_default_radius(int n) { return std::sqrt(std::log(static_cast<double>(n)) / n); }

Graph rgg_single_draw(int n, double radius, Rng& rng) {
  Graph g;
  g.n = n;
  g.positions.resize(n);
  for (int i = 0; i < n; ++i) {
    g.positions[i][0] = rng.uniform01();
    g.positions[i][1] = rng.uniform01();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = g.positions[i][0] - g.positions[j][0];
      const double dy = g.positions[i][1] - g.positions[j][1];
      // strict comparison: adjacency requires distance smaller than radius
      if (std::sqrt(dx * dx + dy * dy) < radius) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Graph generate_rgg(int n, std::uint64_t seed, std::optional<double> radius) {
  if (n < 2) throw std::invalid_argument("generate_rgg: need at least 2 nodes");
  const double r = radius.value_or(rgg_default_radius(n));
  if (!(r > 0.0)) throw std::invalid_argument("generate_rgg: radius must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < defaults::max_rgg_attempts; ++attempt) {
    Graph g = rgg_single_draw(n, r, rng);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("generate_rgg: no connected placement in " +
                           std::to_string(defaults::max_rgg_attempts) + " attempts (n=" +
                           std::to_string(n) + ", radius=" + std::to_string(r) + ")");
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(g.n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        frontier.push(v);
      }
    }
  }
  return count == g.n;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.n, 0);
  for (const auto& [i, j] : g.edges) {
    ++d[i];
    ++d[j];
  }
  return d;
}

IidFailureModel make_iid_failure(Graph base, Matrix link_prob) {
  const int n = base.n;
  if (link_prob.rows() != n || link_prob.cols() != n)
    throw std::invalid_argument("make_iid_failure: probability matrix dimension mismatch");
  if (!is_symmetric(link_prob, 0.0))
    throw std::invalid_argument("make_iid_failure: probability matrix must be symmetric");
  Matrix support(n, n);
  for (const auto& [i, j] : base.edges) support(i, j) = support(j, i) = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = link_prob(i, j);
      if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("make_iid_failure: probabilities must lie in [0,1]");
      if (i == j && p != 0.0)
        throw std::invalid_argument("make_iid_failure: diagonal probabilities must be zero");
      if (support(i, j) == 0.0 && i != j && p != 0.0)
        throw std::invalid_argument(
            "make_iid_failure: nonzero probability outside the realizable edge set");
    }
  }
  return IidFailureModel{std::move(base), std::move(link_prob)};
}

IidFailureModel make_iid_failure(Graph base, double p) {
  Matrix link_prob(base.n, base.n);
  for (const auto& [i, j] : base.edges) link_prob(i, j) = link_prob(j, i) = p;
  return make_iid_failure(std::move(base), std::move(link_prob));
}

MarkovSwitchModel make_markov_switch(double q, RggParams generator) {
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("make_markov_switch: q must lie in [0,1]");
  if (generator.n < 2)
    throw std::invalid_argument("make_markov_switch: generator needs at least 2 nodes");
  return MarkovSwitchModel{q, generator};
}

Graph sample_topology(const DynamicModel& model, const Graph& current, Rng& rng) {
  if (const auto* iid = std::get_if<IidFailureModel>(&model)) {
    Graph g;
    g.n = iid->base.n;
    g.positions = iid->base.positions;
    for (const auto& [i, j] : iid->base.edges) {
      if (rng.uniform01() < iid->link_prob(i, j)) g.edges.emplace_back(i, j);
    }
    return g;
  }
  const auto& markov = std::get<MarkovSwitchModel>(model);
  if (rng.uniform01() < markov.q) {
    const double r = markov.generator.radius.value_or(rgg_default_radius(markov.generator.n));
    for (int attempt = 0; attempt < defaults::max_rgg_attempts; ++attempt) {
      Graph g = rgg_single_draw(markov.generator.n, r, rng);
      if (is_connected(g)) return g;
    }
    throw std::runtime_error("sample_topology: no connected placement in " +
                             std::to_string(defaults::max_rgg_attempts) + " attempts");
  }
  return current;
}

}  // namespace pfc
