#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "affinedr/errors.hpp"

namespace affinedr {

/// Column vector over 64-bit reals.
using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double s, const Vector& a);
/// y += s * x
void axpy(double s, const Vector& x, Vector& y);
bool all_finite(const Vector& a);

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// Matrix whose columns are the given vectors.
  static DenseMatrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return a_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Vector apply(const Vector& x) const;            // A x
  Vector apply_transpose(const Vector& x) const;  // A^T x
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  DenseMatrix transpose() const;
  double max_abs() const;
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// (A + A^T) / 2
DenseMatrix symmetric_part(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace affinedr
