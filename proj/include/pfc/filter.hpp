#pragma once

#include <string>
#include <vector>

#include "pfc/constants.hpp"
#include "pfc/weights.hpp"

namespace pfc {

// =============================================================================
// Polynomial spectrum filters
// =============================================================================

// Degree-k polynomial p(x) = coeffs[0] + coeffs[1] x + ... + coeffs[k] x^k.
// Filters used on weight matrices are consensus-preserving: the coefficients
// sum to one, i.e. p(1) = 1, which keeps the all-ones vector a fixed point.
struct PolynomialFilter {
  std::vector<double> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// p(x) = x; running it reproduces the plain iteration
PolynomialFilter identity_filter();

// degree 0; the only consensus-preserving constant, useful as a no-op baseline
PolynomialFilter unit_filter();

// Hermite interpolant with a k-fold zero at `a` (value and derivatives
// 1..k-1 vanish) and value 1 at x = 1, built from a confluent divided-
// difference table and expanded to monomial coefficients. By uniqueness the
// result equals ((x - a)/(1 - a))^k. Requires k >= 1 and a < 1.
PolynomialFilter newton_filter(int k, double a);

// Horner evaluation.
double eval(const PolynomialFilter& f, double lambda);

// Elementwise evaluation; the output order matches the input order (index
// correspondence to eigenvectors is preserved, no re-sorting).
std::vector<double> apply_to_spectrum(const PolynomialFilter& f,
                                      const std::vector<double>& eigenvalues);

// max |p(lambda_i)| over the deflated part of a descending spectrum whose
// leading entry is the consensus eigenvalue 1 (checked at tolerance).
double filtered_factor(const PolynomialFilter& f, const std::vector<double>& spectrum);

// p(W) x via degree() successive matrix-vector products; the dense matrix
// power is never formed.
std::vector<double> matrix_apply(const PolynomialFilter& f, const WeightMatrix& w,
                                 const std::vector<double>& x);

bool is_consensus_preserving(const PolynomialFilter& f, double tol = defaults::coeff_sum_tol);

// CSV line "k,a0,a1,...,ak"
std::string filter_to_csv(const PolynomialFilter& f);
PolynomialFilter filter_from_csv(const std::string& line);

}  // namespace pfc
