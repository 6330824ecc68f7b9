#include "pfc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pfc/constants.hpp"

namespace pfc {

const char* to_string(WeightSchemeKind kind) {
  switch (kind) {
    case WeightSchemeKind::MaxDegree: return "maxdegree";
    case WeightSchemeKind::Metropolis: return "metropolis";
    case WeightSchemeKind::Laplacian: return "laplacian";
  }
  return "unknown";
}

WeightSchemeKind weight_scheme_from_string(const std::string& name) {
  if (name == "maxdegree" || name == "max-degree") return WeightSchemeKind::MaxDegree;
  if (name == "metropolis") return WeightSchemeKind::Metropolis;
  if (name == "laplacian") return WeightSchemeKind::Laplacian;
  throw std::invalid_argument("unknown weight scheme '" + name +
                              "' (expected maxdegree|metropolis|laplacian)");
}

WeightMatrix max_degree_weights(const Graph& g) {
  const int n = g.n;
  const auto d = degrees(g);
  Matrix w(n, n);
  for (const auto& [i, j] : g.edges) w(i, j) = w(j, i) = 1.0 / n;
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - static_cast<double>(d[i]) / n;
  return WeightMatrix{std::move(w)};
}

WeightMatrix metropolis_weights(const Graph& g) {
  const int n = g.n;
  const auto d = degrees(g);
  Matrix w(n, n);
  for (const auto& [i, j] : g.edges) {
    const double v = 1.0 / (1.0 + std::max(d[i], d[j]));
    w(i, j) = w(j, i) = v;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += w(i, j);
    w(i, i) = 1.0 - off;
  }
  return WeightMatrix{std::move(w)};
}

WeightMatrix laplacian_weights(const Graph& g, double gamma) {
  const auto d = degrees(g);
  const int dmax = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
  if (!(gamma > 0.0))
    throw std::invalid_argument("laplacian_weights: gamma must be positive");
  if (dmax > 0 && gamma >= 1.0 / dmax)
    throw std::invalid_argument("laplacian_weights: gamma=" + std::to_string(gamma) +
                                " violates gamma < 1/d_max with d_max=" + std::to_string(dmax));
  const int n = g.n;
  Matrix w(n, n);
  for (const auto& [i, j] : g.edges) w(i, j) = w(j, i) = gamma;
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - gamma * d[i];
  return WeightMatrix{std::move(w)};
}

WeightMatrix build_weights(const Graph& g, const WeightScheme& scheme) {
  switch (scheme.kind) {
    case WeightSchemeKind::MaxDegree: return max_degree_weights(g);
    case WeightSchemeKind::Metropolis: return metropolis_weights(g);
    case WeightSchemeKind::Laplacian: return laplacian_weights(g, scheme.gamma);
  }
  throw std::invalid_argument("build_weights: unknown scheme");
}

WeightMatrix weight_matrix_from(Matrix m, double symmetry_tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("weight_matrix_from: matrix must be square");
  if (!is_symmetric(m, symmetry_tol))
    throw std::invalid_argument("weight_matrix_from: matrix is not symmetric within tolerance");
  return WeightMatrix{std::move(m)};
}

namespace {

// E[W] for i.i.d. link failures under schemes that are linear in the
// adjacency indicator variables.
WeightMatrix iid_laplacian_mean(const IidFailureModel& model, double gamma) {
  const int n = model.base.n;
  const auto d = degrees(model.base);
  const int dmax = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
  if (!(gamma > 0.0))
    throw std::invalid_argument("expected_weight_matrix: gamma must be positive");
  if (dmax > 0 && gamma >= 1.0 / dmax)
    throw std::invalid_argument(
        "expected_weight_matrix: gamma=" + std::to_string(gamma) +
        " violates gamma < 1/d_max on the realizable edge set (d_max=" + std::to_string(dmax) +
        ")");
  const auto expected_degree = row_sums(model.link_prob);
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (j != i) w(i, j) = gamma * model.link_prob(i, j);
    w(i, i) = 1.0 - gamma * expected_degree[i];
  }
  return WeightMatrix{std::move(w)};
}

WeightMatrix iid_max_degree_mean(const IidFailureModel& model) {
  const int n = model.base.n;
  const auto expected_degree = row_sums(model.link_prob);
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (j != i) w(i, j) = model.link_prob(i, j) / n;
    w(i, i) = 1.0 - expected_degree[i] / n;
  }
  return WeightMatrix{std::move(w)};
}

}  // namespace

WeightMatrix expected_weight_matrix(const DynamicModel& model, const WeightScheme& scheme,
                                    int samples, std::uint64_t seed) {
  if (const auto* iid = std::get_if<IidFailureModel>(&model)) {
    if (scheme.kind == WeightSchemeKind::Laplacian) return iid_laplacian_mean(*iid, scheme.gamma);
    if (scheme.kind == WeightSchemeKind::MaxDegree) return iid_max_degree_mean(*iid);
  }
  if (samples < 1)
    throw std::invalid_argument("expected_weight_matrix: Monte Carlo path needs samples >= 1");

  // Monte Carlo mean over independent topology draws. For the Markov switch
  // model a draw is a fresh graph from the generator (the stationary law for
  // any q > 0), so q itself does not enter. Per-sample derived seeds keep the
  // mean independent of evaluation order.
  int n = 0;
  Graph start;
  if (const auto* iid = std::get_if<IidFailureModel>(&model)) {
    n = iid->base.n;
    start = iid->base;
  } else {
    const auto& markov = std::get<MarkovSwitchModel>(model);
    n = markov.generator.n;
  }
  Matrix acc(n, n);
  for (int s = 0; s < samples; ++s) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(s)));
    Graph g;
    if (std::holds_alternative<IidFailureModel>(model)) {
      g = sample_topology(model, start, rng);
    } else {
      // force a fresh generator draw regardless of q
      const auto& markov = std::get<MarkovSwitchModel>(model);
      DynamicModel always_switch = make_markov_switch(1.0, markov.generator);
      g = sample_topology(always_switch, start, rng);
    }
    const WeightMatrix w = build_weights(g, scheme);
    acc = acc + w.entries;
  }
  acc = (1.0 / samples) * acc;
  return WeightMatrix{std::move(acc)};
}

void validate_weight_matrix(const WeightMatrix& w, const Graph& g, double tol) {
  const int n = w.n();
  if (n != g.n) throw std::invalid_argument("validate_weight_matrix: dimension mismatch");
  if (!is_symmetric(w.entries, tol))
    throw std::invalid_argument("validate_weight_matrix: not symmetric");
  Matrix support(n, n);
  for (const auto& [i, j] : g.edges) support(i, j) = support(j, i) = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && support(i, j) == 0.0 && std::fabs(w.entries(i, j)) > tol)
        throw std::invalid_argument("validate_weight_matrix: nonzero entry off the edge set at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  for (double s : row_sums(w.entries))
    if (std::fabs(s - 1.0) > tol)
      throw std::invalid_argument("validate_weight_matrix: row sum deviates from 1");
  for (double s : row_sums(transpose(w.entries)))
    if (std::fabs(s - 1.0) > tol)
      throw std::invalid_argument("validate_weight_matrix: column sum deviates from 1");
}

}  // namespace pfc
