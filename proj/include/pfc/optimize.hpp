#pragma once

#include <cstdint>
#include <vector>

#include "pfc/filter.hpp"
#include "pfc/graph.hpp"
#include "pfc/spectral.hpp"
#include "pfc/weights.hpp"

namespace pfc {

// =============================================================================
// Optimal (minimax) filter design
// =============================================================================
//
// The design problem -- minimize the spectral radius of p(W) - ones*ones^T/n
// over consensus-preserving degree-k polynomials -- reduces exactly to a
// small minimax linear program over the deflated eigenvalues, because p(W)
// shares W's eigenbasis and the all-ones vector stays the eigenvector for
// p(1) = 1. A dense simplex solves the program exactly.

struct MinimaxSolution {
  PolynomialFilter filter;
  double s_star = 0.0;          // achieved max |p(lambda_i)| over the deflated spectrum
  std::vector<int> active_set;  // indices (into the deflated list) where |p| attains s_star
};

// Solves min_s max_i |p(lambda_i)| subject to p(1) = 1 over degree-k
// polynomials. Internally the inequality rows use a Chebyshev basis shifted
// to the deflated spectrum's span (raw monomial rows are badly conditioned
// past degree ~8); the returned coefficients are monomial. Degrees above 12
// are rejected (monomial conversion overflows its accuracy budget). When the
// degree admits exact interpolation of zero at every distinct eigenvalue the
// optimum s=0 is non-unique, and the minimum-norm coefficient vector is
// returned for reproducibility.
MinimaxSolution lp_minimax(const std::vector<double>& deflated_eigenvalues, int k);

// Minimax design on a static weight matrix: decomposes W, drops the
// consensus eigenpair, and solves the LP. Requires check_convergence(W) to
// hold.
MinimaxSolution optimal_filter_static(const WeightMatrix& w, int k,
                                      const SpectralOptions& opt = {});

// Minimax design for a dynamic model: the filter is built offline on the
// mean weight matrix E[W] (see expected_weight_matrix).
MinimaxSolution optimal_filter_dynamic(const DynamicModel& model, const WeightScheme& scheme,
                                       int k, int samples, std::uint64_t seed,
                                       const SpectralOptions& opt = {});

}  // namespace pfc
