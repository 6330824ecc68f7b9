#pragma once

#include <vector>

#include "pfc/constants.hpp"
#include "pfc/linalg.hpp"
#include "pfc/weights.hpp"

namespace pfc {

// =============================================================================
// Symmetric eigendecomposition and convergence factors
// =============================================================================

// Eigenpairs of a symmetric matrix: eigenvalues sorted descending, column j
// of `eigenvectors` paired with eigenvalues[j].
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

struct ConvergenceReport {
  bool row_stochastic = false;
  bool column_stochastic = false;
  double deflated_radius = 0.0;  // spectral radius of W - ones*ones^T/n
  bool converges = false;
};

struct SpectralOptions {
  double symmetry_tol = defaults::symmetry_tol;
  double jacobi_tol = defaults::jacobi_offdiag_tol;
  int max_sweeps = defaults::jacobi_max_sweeps;
  double stochastic_tol = defaults::stochastic_tol;
  double consensus_eig_tol = defaults::consensus_eig_tol;
};

// Cyclic Jacobi rotations on the dense symmetric matrix, iterated until the
// off-diagonal Frobenius norm falls below jacobi_tol relative to the input
// scale. Rejects non-symmetric input.
SpectralDecomposition eig_sym(const Matrix& w, const SpectralOptions& opt = {});

// Index of the consensus eigenpair inside a decomposition of a matrix with
// unit row sums: the column with maximal |<q_j, 1/sqrt(n)>|. Errors if that
// column's eigenvalue is not 1 within tolerance, or if the identification is
// ambiguous across materially different eigenvalues.
int consensus_index(const SpectralDecomposition& dec, const SpectralOptions& opt = {});

// max_{j != consensus} |lambda_j|; equals the spectral radius of
// W - ones*ones^T/n. Requires W 1 = 1.
double deflated_radius(const WeightMatrix& w, const SpectralOptions& opt = {});

// Evaluates the three convergence conditions: unit column sums, unit row
// sums, and deflated spectral radius strictly below one. The radius here is
// computed directly from the deflated matrix, so the report is meaningful
// even for matrices that fail the stochasticity conditions.
ConvergenceReport check_convergence(const WeightMatrix& w, const SpectralOptions& opt = {});

}  // namespace pfc
