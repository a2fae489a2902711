#pragma once

#include <cstddef>

#include "affinedr/matrix.hpp"

namespace affinedr {

/// Affine map x -> L x + b on R^n.
class AffineMap {
 public:
  AffineMap(DenseMatrix linear, Vector offset);

  static AffineMap identity(std::size_t n);
  static AffineMap linear(DenseMatrix l);
  static AffineMap constant(Vector c);

  std::size_t dim() const { return offset_.size(); }
  const DenseMatrix& linear_part() const { return linear_; }
  const Vector& offset() const { return offset_; }

  Vector operator()(const Vector& x) const;

  /// this after inner: x -> this(inner(x)).
  AffineMap compose(const AffineMap& inner) const;

  /// n-fold composition T^n. Uses repeated squaring of the pair
  /// (L^m, sum_{k<m} L^k b) once n grows past 64.
  AffineMap power(std::size_t n) const;

  friend AffineMap operator+(const AffineMap& a, const AffineMap& b);
  friend AffineMap operator-(const AffineMap& a, const AffineMap& b);
  friend AffineMap operator*(double s, const AffineMap& a);

 private:
  DenseMatrix linear_;
  Vector offset_;
};

/// Operator 2-norm of the linear part (power-method estimate).
double linear_norm(const AffineMap& t);
bool is_nonexpansive_map(const AffineMap& t, double slack = 1e-9);
/// ||2L - Id|| <= 1 + slack.
bool is_firmly_nonexpansive_map(const AffineMap& t, double slack = 1e-9);

}  // namespace affinedr
