#include "pfc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfc/constants.hpp"
#include "pfc/rng.hpp"

namespace pfc {

namespace {

void validate_config(const RunConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("RunConfig: max_iters must be at least 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("RunConfig: tol must be positive");
}

double consensus_error(const std::vector<double>& x, double mu) {
  double s = 0.0;
  for (double v : x) {
    const double d = v - mu;
    s += d * d;
  }
  return std::sqrt(s);
}

// Supplies the weight matrix for each exchange tick. The static source hands
// out the same matrix; the dynamic one samples a topology and rebuilds the
// weights (desk-scale graphs make the rebuild negligible).
class WeightSource {
 public:
  explicit WeightSource(const WeightMatrix& w) : static_w_(&w) {}
  WeightSource(const DynamicTopology& topology, std::uint64_t seed)
      : topology_(&topology), rng_(seed), current_(topology.initial) {}

  const WeightMatrix& next() {
    if (static_w_ != nullptr) return *static_w_;
    current_ = sample_topology(topology_->model, current_, rng_);
    sampled_ = build_weights(current_, topology_->scheme);
    return sampled_;
  }

 private:
  const WeightMatrix* static_w_ = nullptr;
  const DynamicTopology* topology_ = nullptr;
  Rng rng_{0};
  Graph current_;
  WeightMatrix sampled_;
};

ConsensusTrace run_standard_impl(WeightSource source, const std::vector<double>& x0,
                                 const RunConfig& cfg) {
  validate_config(cfg);
  if (x0.empty()) throw std::invalid_argument("run_standard: empty initial state");
  ConsensusTrace trace;
  trace.mu = mean(x0);
  trace.errors.push_back(consensus_error(x0, trace.mu));
  std::vector<double> x = x0;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    std::vector<double> next = source.next().apply(x);
    trace.errors.push_back(consensus_error(next, trace.mu));
    const double diff = max_abs_diff(next, x);
    x = std::move(next);
    if (diff < cfg.tol) break;
  }
  trace.iterations = static_cast<int>(trace.errors.size()) - 1;
  trace.final_state = std::move(x);
  return trace;
}

ConsensusTrace run_filtered_impl(WeightSource source, const PolynomialFilter& f,
                                 const std::vector<double>& x0, const RunConfig& cfg) {
  validate_config(cfg);
  if (x0.empty()) throw std::invalid_argument("run_filtered: empty initial state");
  if (!is_consensus_preserving(f))
    throw std::invalid_argument("run_filtered: filter coefficients must sum to 1");

  const int k = f.degree();
  const int period = k + 1;
  const std::size_t n = x0.size();

  ConsensusTrace trace;
  trace.mu = mean(x0);
  trace.errors.push_back(consensus_error(x0, trace.mu));

  // sliding window of the last k+1 states; each node reads only its own
  // entries of these, matching the per-node memory contract
  std::vector<std::vector<double>> history{x0};
  std::vector<double> x = x0;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    std::vector<double> next;
    if (t % period == 0) {
      std::vector<double> combined(n, 0.0);
      for (int i = 0; i <= k; ++i) {
        const double alpha = f.coeffs[i];
        if (alpha == 0.0) continue;
        const std::vector<double>& state = history[i];
        for (std::size_t node = 0; node < n; ++node) combined[node] += alpha * state[node];
      }
      next = (cfg.schedule == Schedule::CombineThenExchange) ? source.next().apply(combined)
                                                             : std::move(combined);
    } else {
      next = source.next().apply(x);
    }
    trace.errors.push_back(consensus_error(next, trace.mu));
    const double diff = max_abs_diff(next, x);
    history.push_back(next);
    if (static_cast<int>(history.size()) > period) history.erase(history.begin());
    x = std::move(next);
    if (diff < cfg.tol) break;
  }
  trace.iterations = static_cast<int>(trace.errors.size()) - 1;
  trace.final_state = std::move(x);
  return trace;
}

}  // namespace

ConsensusTrace run_standard(const WeightMatrix& w, const std::vector<double>& x0,
                            const RunConfig& cfg) {
  if (w.n() != static_cast<int>(x0.size()))
    throw std::invalid_argument("run_standard: dimension mismatch");
  return run_standard_impl(WeightSource(w), x0, cfg);
}

ConsensusTrace run_standard(const DynamicTopology& topology, const std::vector<double>& x0,
                            const RunConfig& cfg) {
  return run_standard_impl(WeightSource(topology, cfg.seed), x0, cfg);
}

ConsensusTrace run_filtered(const WeightMatrix& w, const PolynomialFilter& f,
                            const std::vector<double>& x0, const RunConfig& cfg) {
  if (w.n() != static_cast<int>(x0.size()))
    throw std::invalid_argument("run_filtered: dimension mismatch");
  return run_filtered_impl(WeightSource(w), f, x0, cfg);
}

ConsensusTrace run_filtered(const DynamicTopology& topology, const PolynomialFilter& f,
                            const std::vector<double>& x0, const RunConfig& cfg) {
  return run_filtered_impl(WeightSource(topology, cfg.seed), f, x0, cfg);
}

ConsensusTrace run_sea(const WeightMatrix& w, const std::vector<double>& x0,
                       const RunConfig& cfg) {
  validate_config(cfg);
  const int n = w.n();
  if (n != static_cast<int>(x0.size()))
    throw std::invalid_argument("run_sea: dimension mismatch");

  // The minimal polynomial degree is at most n, so the table is exact by
  // 2n terms; deeper columns only accumulate frozen entries. Budgets past
  // the cap report the capped estimate.
  const int cap = std::min(cfg.max_iters, 2 * n + 4);

  std::vector<std::vector<double>> iterates{x0};
  for (int t = 1; t <= cap; ++t) iterates.push_back(w.apply(iterates.back()));

  // epsilon tables per component, rows r = -1..cap stored with offset 1
  const int rows = cap + 2;
  std::vector<std::vector<std::vector<double>>> eps(
      n, std::vector<std::vector<double>>(rows));
  std::vector<std::vector<std::vector<char>>> ok(
      n, std::vector<std::vector<char>>(rows));
  for (int i = 0; i < n; ++i) {
    eps[i][0].assign(cap + 2, 0.0);  // r = -1 column of zeros
    ok[i][0].assign(cap + 2, 1);
    eps[i][1].resize(cap + 1);
    ok[i][1].assign(cap + 1, 1);
    for (int m = 0; m <= cap; ++m) eps[i][1][m] = iterates[m][i];
    for (int r = 1; r <= cap; ++r) {
      const int len = cap - r + 1;
      eps[i][r + 1].assign(len, 0.0);
      ok[i][r + 1].assign(len, 0);
      for (int m = 0; m < len; ++m) {
        if (!ok[i][r][m] || !ok[i][r][m + 1] || !ok[i][r - 1][m + 1]) continue;
        const double diff = eps[i][r][m + 1] - eps[i][r][m];
        if (std::fabs(diff) < defaults::sea_freeze_tol) continue;  // frozen
        eps[i][r + 1][m] = eps[i][r - 1][m + 1] + 1.0 / diff;
        ok[i][r + 1][m] = 1;
      }
    }
  }

  auto estimate_at = [&](int budget) {
    const int t = std::min(budget, cap);
    std::vector<double> est(n, 0.0);
    for (int i = 0; i < n; ++i) {
      int r = t - (t % 2);
      for (; r >= 0; r -= 2) {
        const int m = t - r;
        if (ok[i][r + 1][m]) {
          est[i] = eps[i][r + 1][m];
          break;
        }
      }
      if (r < 0) est[i] = iterates[t][i];
    }
    return est;
  };

  ConsensusTrace trace;
  trace.mu = mean(x0);
  std::vector<double> prev = estimate_at(0);
  trace.errors.push_back(consensus_error(prev, trace.mu));
  for (int t = 1; t <= cfg.max_iters; ++t) {
    std::vector<double> est = estimate_at(t);
    trace.errors.push_back(consensus_error(est, trace.mu));
    const double diff = max_abs_diff(est, prev);
    prev = std::move(est);
    if (diff < cfg.tol) break;
  }
  trace.iterations = static_cast<int>(trace.errors.size()) - 1;
  trace.final_state = std::move(prev);
  return trace;
}

ConvergenceStats convergence_stats(const ConsensusTrace& trace, double tol) {
  if (trace.errors.empty()) throw std::invalid_argument("convergence_stats: empty trace");
  ConvergenceStats stats;
  const double target = tol * trace.errors.front();
  for (int t = 0; t < static_cast<int>(trace.errors.size()); ++t) {
    if (trace.errors[t] <= target) {
      stats.iterations_to_tol = t;
      break;
    }
  }
  const int last = static_cast<int>(trace.errors.size()) - 1;
  const int half = last / 2;
  if (last > half && trace.errors[half] > 0.0 && trace.errors[last] > 0.0)
    stats.step_factor =
        std::pow(trace.errors[last] / trace.errors[half], 1.0 / (last - half));
  return stats;
}

}  // namespace pfc
