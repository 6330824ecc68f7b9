#pragma once

#include <vector>

namespace pfc {

// Small dense linear programs: maximize c^T x subject to A x <= b, x >= 0.
// Two-phase tableau simplex with lexicographic (value, index) pivot
// tie-breaking. Intended for the minimax filter problems, whose tableaus
// stay below a few hundred entries per side.

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c);

}  // namespace pfc
