#pragma once

#include "affinedr/matrix.hpp"

namespace affinedr {

/// M monotone iff the smallest eigenvalue of (M + M^T)/2 is >= -tol.
bool is_monotone(const DenseMatrix& m, double tol = 1e-10);

/// Closed-form 2x2 test: a >= 0, d >= 0 and 4 a d >= (b + c)^2.
bool is_monotone_2x2(const DenseMatrix& m);

/// Real parts of all (possibly complex) eigenvalues, ascending.
Vector eigenvalue_real_parts(const DenseMatrix& m);

/// For a monotone linear map: paramonotone iff ker(M + M^T) is contained in
/// ker M. Throws NotMonotone otherwise.
bool is_paramonotone_linear(const DenseMatrix& m);

/// Block tridiagonal n^2 x n^2 matrix with M on the diagonal blocks and -Id
/// on the off-diagonal blocks.
DenseMatrix block_tridiag_embed(const DenseMatrix& m);

/// Right-hand side of the block quadratic-form decomposition
///   <x1,(M-Id)x1> + sum_k <xk,(M-2Id)xk> + <xn,(M-Id)xn> + sum ||xi-xi+1||^2,
/// which equals <x, bold-M x>.
double block_quadratic_form(const DenseMatrix& m, const Vector& x);

struct BlockMonotonicity {
  bool embed_monotone;           // bold-M
  bool m_minus_2id_monotone;     // M - 2 Id
  bool m_minus_scaled_monotone;  // M - 2(1 - 1/n) Id
  bool m_monotone;               // M
};
BlockMonotonicity block_monotonicity_tests(const DenseMatrix& m);

/// Monotonicity of M1 (x) M2 under the hypotheses that both are monotone and
/// at least one is symmetric. Throws PreconditionViolated otherwise.
bool kronecker_monotone_symmetric(const DenseMatrix& m1, const DenseMatrix& m2);

}  // namespace affinedr
