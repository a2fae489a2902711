#pragma once

#include <cmath>
#include <random>

#include "affinedr/linalg.hpp"
#include "affinedr/matrix.hpp"

namespace testutil {

using affinedr::DenseMatrix;
using affinedr::Vector;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  Vector v(n);
  for (double& x : v) x = uniform(rng, -scale, scale);
  return v;
}

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                 double scale = 1.0) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -scale, scale);
  return m;
}

/// Random square matrix with condition number of order one.
inline DenseMatrix random_well_conditioned(std::mt19937_64& rng, std::size_t n) {
  DenseMatrix r = random_matrix(rng, n, n);
  const double s = 0.5 / (r.max_abs() * static_cast<double>(n) + 1.0);
  return DenseMatrix::identity(n) + s * static_cast<double>(n) * r;
}

/// Random orthogonal matrix from orthonormalized random columns.
inline DenseMatrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(random_vector(rng, n));
  return DenseMatrix::from_columns(affinedr::orthonormalize(cols));
}

/// Random symmetric positive semidefinite matrix with the given rank.
inline DenseMatrix random_psd(std::mt19937_64& rng, std::size_t n, std::size_t rank) {
  const DenseMatrix q = random_orthogonal(rng, n);
  DenseMatrix s(n, n);
  for (std::size_t k = 0; k < rank && k < n; ++k) {
    const double lam = uniform(rng, 0.1, 3.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) += lam * q(i, k) * q(j, k);
  }
  return s;
}

inline double vec_dist(const Vector& a, const Vector& b) { return affinedr::norm(affinedr::sub(a, b)); }

}  // namespace testutil
