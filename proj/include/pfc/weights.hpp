#pragma once

#include <cstdint>
#include <string>

#include "pfc/graph.hpp"
#include "pfc/linalg.hpp"

namespace pfc {

// Symmetric consensus weight matrix. The constructors below guarantee the
// contract: W = W^T, W_ij = 0 off the graph's edges (i != j), and unit row
// and column sums.
struct WeightMatrix {
  Matrix entries;
  int n() const { return entries.rows(); }
  std::vector<double> apply(const std::vector<double>& x) const { return entries * x; }
};

enum class WeightSchemeKind { MaxDegree, Metropolis, Laplacian };

struct WeightScheme {
  WeightSchemeKind kind = WeightSchemeKind::Metropolis;
  double gamma = 0.0;  // Laplacian step size; ignored by the other schemes
};

const char* to_string(WeightSchemeKind kind);
WeightSchemeKind weight_scheme_from_string(const std::string& name);

// off-diagonal 1/n on edges, diagonal 1 - d(i)/n
WeightMatrix max_degree_weights(const Graph& g);

// off-diagonal 1/(1 + max(d(i), d(j))) on edges, diagonal fills the row to 1
WeightMatrix metropolis_weights(const Graph& g);

// W = I - gamma * (D - A); requires 0 < gamma < 1/d_max
WeightMatrix laplacian_weights(const Graph& g, double gamma);

WeightMatrix build_weights(const Graph& g, const WeightScheme& scheme);

// Wraps an externally supplied square matrix, rejecting non-symmetric input.
WeightMatrix weight_matrix_from(Matrix m, double symmetry_tol);

// Mean weight matrix of a dynamic model under a weight scheme. Closed forms
// exist for the i.i.d. link-failure model with the Laplacian scheme
// (linearity in the adjacency: E[W] = I - gamma (diag(P 1) - P)) and with the
// max-degree scheme (off-diagonal P_ij / n, diagonal 1 - (P 1)_i / n); every
// other combination is averaged over `samples` Monte Carlo topology draws
// seeded from `seed`.
WeightMatrix expected_weight_matrix(const DynamicModel& model, const WeightScheme& scheme,
                                    int samples, std::uint64_t seed);

// Test/diagnostic hook: checks symmetry, sparsity against g, and unit
// row/column sums at the given tolerance. Throws with a description of the
// first violated invariant.
void validate_weight_matrix(const WeightMatrix& w, const Graph& g, double tol);

}  // namespace pfc
