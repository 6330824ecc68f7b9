#include "pfc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pfc/simplex.hpp"

namespace pfc {

namespace {

// x ascending-coefficient polynomial times (scale*x + shift)
std::vector<double> poly_mul_affine(const std::vector<double>& p, double scale, double shift) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    out[m + 1] += scale * p[m];
    out[m] += shift * p[m];
  }
  return out;
}

double horner(const std::vector<double>& coeffs, double x) {
  double acc = coeffs.back();
  for (int i = static_cast<int>(coeffs.size()) - 2; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

// Gaussian elimination with partial pivoting; a is overwritten.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-300)
      throw std::runtime_error("lp_minimax: singular interpolation system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

// Minimum-norm monomial coefficients satisfying p(lambda_i) = 0 for every
// distinct deflated eigenvalue and p(1) = 1. Valid whenever k+1 exceeds the
// number of interpolation conditions; used when the minimax optimum is zero
// and therefore non-unique.
std::vector<double> min_norm_interpolant(const std::vector<double>& lambdas, int k) {
  const int rows = static_cast<int>(lambdas.size()) + 1;
  const int cols = k + 1;
  std::vector<std::vector<double>> v(rows, std::vector<double>(cols, 0.0));
  for (int i = 0; i < rows - 1; ++i) {
    double p = 1.0;
    for (int j = 0; j < cols; ++j) {
      v[i][j] = p;
      p *= lambdas[i];
    }
  }
  for (int j = 0; j < cols; ++j) v[rows - 1][j] = 1.0;

  std::vector<std::vector<double>> gram(rows, std::vector<double>(rows, 0.0));
  for (int i = 0; i < rows; ++i)
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += v[i][j] * v[r][j];
      gram[i][r] = s;
    }
  std::vector<double> rhs(rows, 0.0);
  rhs[rows - 1] = 1.0;
  const std::vector<double> y = solve_dense(std::move(gram), std::move(rhs));

  std::vector<double> alpha(cols, 0.0);
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += v[i][j] * y[i];
    alpha[j] = s;
  }
  return alpha;
}

// Chebyshev polynomials of the affine map u = scale*x + shift, as monomial
// coefficient vectors in x, degrees 0..k.
std::vector<std::vector<double>> chebyshev_basis(int k, double scale, double shift) {
  std::vector<std::vector<double>> t(k + 1);
  t[0] = {1.0};
  if (k >= 1) t[1] = {shift, scale};
  for (int j = 2; j <= k; ++j) {
    std::vector<double> next = poly_mul_affine(t[j - 1], 2.0 * scale, 2.0 * shift);
    next.resize(std::max(next.size(), t[j - 2].size()), 0.0);
    for (std::size_t m = 0; m < t[j - 2].size(); ++m) next[m] -= t[j - 2][m];
    t[j] = std::move(next);
  }
  return t;
}

std::vector<double> solve_minimax_lp(const std::vector<double>& lambdas, int k) {
  const double lo = lambdas.front();
  const double hi = lambdas.back();
  const double scale = 2.0 / (hi - lo);
  const double shift = -(hi + lo) / (hi - lo);
  const auto basis = chebyshev_basis(k, scale, shift);

  // basis values at each eigenvalue and at 1 via the three-term recurrence
  auto basis_values = [&](double x) {
    std::vector<double> phi(k + 1, 0.0);
    const double u = scale * x + shift;
    phi[0] = 1.0;
    if (k >= 1) phi[1] = u;
    for (int j = 2; j <= k; ++j) phi[j] = 2.0 * u * phi[j - 1] - phi[j - 2];
    return phi;
  };

  // variables: c_j split into positive/negative parts, then the bound s
  const int ncoef = k + 1;
  const int nvars = 2 * ncoef + 1;
  const int s_col = 2 * ncoef;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (double lambda : lambdas) {
    const auto phi = basis_values(lambda);
    std::vector<double> pos(nvars, 0.0), neg(nvars, 0.0);
    for (int j = 0; j < ncoef; ++j) {
      pos[j] = phi[j];
      pos[ncoef + j] = -phi[j];
      neg[j] = -phi[j];
      neg[ncoef + j] = phi[j];
    }
    pos[s_col] = -1.0;
    neg[s_col] = -1.0;
    a.push_back(std::move(pos));
    b.push_back(0.0);
    a.push_back(std::move(neg));
    b.push_back(0.0);
  }
  {
    // p(1) = 1 as a pair of inequalities
    const auto phi = basis_values(1.0);
    std::vector<double> up(nvars, 0.0), down(nvars, 0.0);
    for (int j = 0; j < ncoef; ++j) {
      up[j] = phi[j];
      up[ncoef + j] = -phi[j];
      down[j] = -phi[j];
      down[ncoef + j] = phi[j];
    }
    a.push_back(std::move(up));
    b.push_back(1.0);
    a.push_back(std::move(down));
    b.push_back(-1.0);
  }
  std::vector<double> c(nvars, 0.0);
  c[s_col] = -1.0;

  const LpResult lp = solve_lp(a, b, c);
  if (lp.status != LpResult::Status::Optimal)
    throw std::runtime_error(
        "lp_minimax: simplex failed (status " +
        std::string(lp.status == LpResult::Status::Infeasible ? "infeasible" : "unbounded") +
        "); the program is feasible and bounded by construction");

  std::vector<double> alpha(ncoef, 0.0);
  for (int j = 0; j < ncoef; ++j) {
    const double cj = lp.x[j] - lp.x[ncoef + j];
    for (std::size_t m = 0; m < basis[j].size(); ++m) alpha[m] += cj * basis[j][m];
  }
  return alpha;
}

}  // namespace

MinimaxSolution lp_minimax(const std::vector<double>& deflated_eigenvalues, int k) {
  if (k < 0) throw std::invalid_argument("lp_minimax: negative degree");
  if (k > defaults::max_lp_degree)
    throw std::invalid_argument("lp_minimax: degree " + std::to_string(k) +
                                " exceeds the monomial conversion limit of " +
                                std::to_string(defaults::max_lp_degree));
  if (deflated_eigenvalues.empty())
    throw std::invalid_argument("lp_minimax: empty eigenvalue list");
  for (double lambda : deflated_eigenvalues)
    if (std::fabs(lambda) > 1.0 + defaults::eigen_dedup_tol)
      throw std::invalid_argument("lp_minimax: eigenvalue magnitude above 1: " +
                                  std::to_string(lambda));

  std::vector<double> distinct = deflated_eigenvalues;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double x, double y) {
                               return std::fabs(x - y) <= defaults::eigen_dedup_tol;
                             }),
                 distinct.end());
  const int m = static_cast<int>(distinct.size());

  std::vector<double> alpha;
  if (k == 0) {
    alpha = {1.0};  // the constraint pins the only coefficient
  } else if (k >= m) {
    alpha = min_norm_interpolant(distinct, k);
  } else {
    alpha = solve_minimax_lp(distinct, k);
  }

  for (double v : alpha)
    if (!std::isfinite(v))
      throw std::runtime_error("lp_minimax: non-finite coefficient after monomial conversion");

  // pin the consensus constraint; the solve leaves p(1) = 1 only up to
  // pivoting arithmetic
  const auto compensated_sum = [](const std::vector<double>& values) {
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
      const double y = v - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return sum;
  };
  const double sum = compensated_sum(alpha);
  if (std::fabs(sum) < 0.5)
    throw std::runtime_error("lp_minimax: degenerate coefficient normalization");
  for (double& v : alpha) v /= sum;
  // one absorbing refinement on the constant term removes the scaling
  // residual left by the divisions
  alpha[0] -= compensated_sum(alpha) - 1.0;

  MinimaxSolution sol;
  sol.filter = PolynomialFilter{std::move(alpha)};
  double s = 0.0;
  std::vector<double> attained(deflated_eigenvalues.size(), 0.0);
  for (std::size_t i = 0; i < deflated_eigenvalues.size(); ++i) {
    attained[i] = std::fabs(horner(sol.filter.coeffs, deflated_eigenvalues[i]));
    s = std::max(s, attained[i]);
  }
  sol.s_star = s;
  for (std::size_t i = 0; i < attained.size(); ++i)
    if (attained[i] >= s - defaults::active_set_tol) sol.active_set.push_back(static_cast<int>(i));
  return sol;
}

MinimaxSolution optimal_filter_static(const WeightMatrix& w, int k, const SpectralOptions& opt) {
  const ConvergenceReport report = check_convergence(w, opt);
  if (!report.converges)
    throw std::invalid_argument(
        "optimal_filter_static: weight matrix does not satisfy the convergence conditions "
        "(deflated radius " +
        std::to_string(report.deflated_radius) + ")");
  const SpectralDecomposition dec = eig_sym(w.entries, opt);
  const int skip = consensus_index(dec, opt);
  std::vector<double> deflated;
  deflated.reserve(dec.eigenvalues.size() - 1);
  for (int j = 0; j < static_cast<int>(dec.eigenvalues.size()); ++j)
    if (j != skip) deflated.push_back(dec.eigenvalues[j]);
  return lp_minimax(deflated, k);
}

MinimaxSolution optimal_filter_dynamic(const DynamicModel& model, const WeightScheme& scheme,
                                       int k, int samples, std::uint64_t seed,
                                       const SpectralOptions& opt) {
  const WeightMatrix mean_w = expected_weight_matrix(model, scheme, samples, seed);
  return optimal_filter_static(mean_w, k, opt);
}

}  // namespace pfc
