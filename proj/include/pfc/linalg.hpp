#pragma once

#include <cstddef>
#include <vector>

namespace pfc {

// Dense row-major matrix of doubles. The networks handled here are desk
// scale (n up to a few hundred), so everything stays dense and simple.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol);

// ones * ones^T / n, the projector onto the consensus direction
Matrix average_projector(int n);

std::vector<double> row_sums(const Matrix& a);

// vector helpers
double dot(const std::vector<double>& a, const std::vector<double>& b);
double l2_norm(const std::vector<double>& a);
double mean(const std::vector<double>& a);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace pfc
