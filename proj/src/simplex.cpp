#include "pfc/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pfc {

namespace {

constexpr double kEps = 1e-9;

class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
          const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = n_ + i;
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  LpResult solve() {
    LpResult result;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!simplex(2) || d_[m_ + 1][n_ + 1] < -kEps) {
        result.status = LpResult::Status::Infeasible;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j)
            if (better(i, j, s)) s = j;
          pivot(i, s);
        }
      }
    }
    const bool bounded = simplex(1);
    result.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] < n_) result.x[basic_[i]] = d_[i][n_ + 1];
    if (!bounded) {
      result.status = LpResult::Status::Unbounded;
      return result;
    }
    result.status = LpResult::Status::Optimal;
    result.objective = d_[m_][n_ + 1];
    return result;
  }

 private:
  bool better(int row, int j, int s) const {
    return std::make_pair(d_[row][j], nonbasic_[j]) < std::make_pair(d_[row][s], nonbasic_[s]);
  }

  void pivot(int r, int s) {
    std::vector<double>& a = d_[r];
    const double inv = 1.0 / a[s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r && std::fabs(d_[i][s]) > kEps) {
        std::vector<double>& row = d_[i];
        const double scale = row[s] * inv;
        for (int j = 0; j < n_ + 2; ++j) row[j] -= a[j] * scale;
        row[s] = a[s] * scale;
      }
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) a[j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    a[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool simplex(int phase) {
    const int obj_row = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || better(obj_row, j, s)) s = j;
      }
      if (d_[obj_row][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        if (r == -1 ||
            std::make_pair(d_[i][n_ + 1] / d_[i][s], basic_[i]) <
                std::make_pair(d_[r][n_ + 1] / d_[r][s], basic_[r]))
          r = i;
      }
      if (r == -1) return false;  // unbounded along column s
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  std::vector<std::vector<double>> d_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_lp: row count mismatch");
  for (const auto& row : a)
    if (row.size() != c.size()) throw std::invalid_argument("solve_lp: column count mismatch");
  if (b.empty() || c.empty()) throw std::invalid_argument("solve_lp: empty program");
  Tableau tableau(a, b, c);
  return tableau.solve();
}

}  // namespace pfc
