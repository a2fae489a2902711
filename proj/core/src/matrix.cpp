#include "affinedr/matrix.hpp"

#include <cmath>
#include <cstddef>

namespace affinedr {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw WrongSize("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw WrongSize("add: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw WrongSize("sub: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(double s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

void axpy(double s, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw WrongSize("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw WrongSize("from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& cols) {
  const std::size_t c = cols.size();
  const std::size_t r = c == 0 ? 0 : cols.front().size();
  DenseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    if (cols[j].size() != r) throw WrongSize("from_columns: ragged columns");
    for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw WrongSize("apply: size mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* row = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector DenseMatrix::apply_transpose(const Vector& x) const {
  if (x.size() != rows_) throw WrongSize("apply_transpose: size mismatch");
  Vector y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) y[j] += row[j] * x[i];
  }
  return y;
}

Vector DenseMatrix::row(std::size_t i) const {
  Vector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

bool DenseMatrix::all_finite() const { return affinedr::all_finite(a_); }

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw WrongSize("matrix +=: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw WrongSize("matrix -=: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw WrongSize("matrix *: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix symmetric_part(const DenseMatrix& a) {
  if (!a.is_square()) throw WrongSize("symmetric_part: matrix not square");
  DenseMatrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw WrongSize("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::fabs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace affinedr
