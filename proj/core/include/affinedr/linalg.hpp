#pragma once

#include <complex>
#include <vector>

#include "affinedr/matrix.hpp"

namespace affinedr {

// Rank decisions use a relative threshold of 1e-10, residual checks 1e-9.
inline constexpr double kRankTol = 1e-10;
inline constexpr double kResidualTol = 1e-9;

struct LuFactors {
  DenseMatrix lu;              // L below the diagonal (unit), U on and above
  std::vector<std::size_t> perm;
};

/// LU with partial pivoting. Throws SingularMatrix when a pivot magnitude
/// falls below 1e-12 * max|A|.
LuFactors lu_factor(const DenseMatrix& a);
Vector lu_solve(const LuFactors& f, const Vector& b);

/// Solve A x = b for square A.
Vector solve_dense(const DenseMatrix& a, const Vector& b);
DenseMatrix dense_inverse(const DenseMatrix& a);

/// Thin SVD A = U diag(sigma) V^T computed by one-sided Jacobi rotations.
/// sigma is descending; U is rows(A) x k and V is cols(A) x k with k = cols(A).
struct Svd {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix v;
};
Svd svd_jacobi(const DenseMatrix& a);

/// Minimizer of ||A x - b|| of minimum Euclidean norm (always defined).
Vector least_squares_solution(const DenseMatrix& a, const Vector& b);

/// Orthonormal basis of the span; near-dependent inputs are dropped when the
/// Gram-Schmidt residual falls below 1e-10 * (max input norm + 1).
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors);

/// Orthonormal basis of ker A.
std::vector<Vector> null_space(const DenseMatrix& a);

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi.
/// Throws NotSymmetric when max|S - S^T| > 1e-9 * max|S|.
Vector symmetric_eigenvalues(const DenseMatrix& s);

struct SymmetricEigen {
  Vector values;        // ascending
  DenseMatrix vectors;  // column k is the eigenvector of values[k]
};
SymmetricEigen symmetric_eigen(const DenseMatrix& s);

/// All (possibly complex) eigenvalues of a real square matrix via Hessenberg
/// reduction and shifted QR iteration. Throws NoConvergence past the
/// iteration cap of 100 n^2.
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a);

/// Operator 2-norm estimated by power iteration on A^T A.
double operator_norm(const DenseMatrix& a);

}  // namespace affinedr
