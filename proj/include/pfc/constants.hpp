#pragma once

// Central tolerance / limit table. Every numeric gate in the library reads
// its default from here; the functions that need looser or tighter behavior
// take an options struct whose members default to these values.

namespace pfc::defaults {

// matrix symmetry acceptance (max |W - W^T| entry)
inline constexpr double symmetry_tol = 1e-12;

// Jacobi eigensolver: off-diagonal Frobenius norm target, relative to the
// input scale, and the sweep budget before giving up
inline constexpr double jacobi_offdiag_tol = 1e-12;
inline constexpr int jacobi_max_sweeps = 100;

// stochasticity checks (row/column sums equal one)
inline constexpr double stochastic_tol = 1e-10;

// identification of the consensus eigenpair (eigenvalue 1, eigenvector
// 1/sqrt(n)) inside a computed spectrum
inline constexpr double consensus_eig_tol = 1e-8;

// minimax solver: eigenvalue deduplication (absolute), active-set slack,
// and the degree past which monomial conversion is refused
inline constexpr double eigen_dedup_tol = 1e-9;
inline constexpr double active_set_tol = 1e-7;
inline constexpr int max_lp_degree = 12;

// consensus-preservation check on filter coefficients (sum equals one)
inline constexpr double coeff_sum_tol = 1e-10;

// scalar epsilon algorithm: differences below this freeze the table entry
inline constexpr double sea_freeze_tol = 1e-13;

// random geometric graphs: placement attempts before giving up on
// connectivity
inline constexpr int max_rgg_attempts = 100;

}  // namespace pfc::defaults
