#include "affinedr/affine_map.hpp"

#include "affinedr/linalg.hpp"

namespace affinedr {

AffineMap::AffineMap(DenseMatrix linear, Vector offset)
    : linear_(std::move(linear)), offset_(std::move(offset)) {
  if (!linear_.is_square() || linear_.rows() != offset_.size())
    throw WrongSize("AffineMap: L must be n x n with offset of length n");
  if (!linear_.all_finite() || !all_finite(offset_)) throw Error("AffineMap: non-finite entry");
}

AffineMap AffineMap::identity(std::size_t n) {
  return AffineMap(DenseMatrix::identity(n), Vector(n, 0.0));
}

AffineMap AffineMap::linear(DenseMatrix l) {
  Vector b(l.rows(), 0.0);
  return AffineMap(std::move(l), std::move(b));
}

AffineMap AffineMap::constant(Vector c) {
  DenseMatrix zero(c.size(), c.size());
  return AffineMap(std::move(zero), std::move(c));
}

Vector AffineMap::operator()(const Vector& x) const {
  Vector y = linear_.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset_[i];
  return y;
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  if (dim() != inner.dim()) throw WrongSize("compose: dimension mismatch");
  return AffineMap(linear_ * inner.linear_, (*this)(inner.offset_));
}

AffineMap AffineMap::power(std::size_t n) const {
  const std::size_t d = dim();
  if (n == 0) return identity(d);
  if (n <= 64) {
    AffineMap acc = *this;
    for (std::size_t k = 1; k < n; ++k) acc = acc.compose(*this);
    return acc;
  }
  // (L, b)^(2m) = (L^m, b_m) composed with itself; halve recursively.
  const AffineMap half = power(n / 2);
  const AffineMap even = half.compose(half);
  return n % 2 == 0 ? even : even.compose(*this);
}

AffineMap operator+(const AffineMap& a, const AffineMap& b) {
  return AffineMap(a.linear_ + b.linear_, add(a.offset_, b.offset_));
}

AffineMap operator-(const AffineMap& a, const AffineMap& b) {
  return AffineMap(a.linear_ - b.linear_, sub(a.offset_, b.offset_));
}

AffineMap operator*(double s, const AffineMap& a) {
  return AffineMap(s * a.linear_, scale(s, a.offset_));
}

double linear_norm(const AffineMap& t) { return operator_norm(t.linear_part()); }

bool is_nonexpansive_map(const AffineMap& t, double slack) {
  return linear_norm(t) <= 1.0 + slack;
}

bool is_firmly_nonexpansive_map(const AffineMap& t, double slack) {
  const DenseMatrix reflected =
      2.0 * t.linear_part() - DenseMatrix::identity(t.dim());
  return operator_norm(reflected) <= 1.0 + slack;
}

}  // namespace affinedr
