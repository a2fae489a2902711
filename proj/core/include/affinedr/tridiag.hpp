#pragma once

#include <cstddef>
#include <optional>

#include "affinedr/matrix.hpp"

namespace affinedr {

/// Tridiagonal Toeplitz matrix: constant subdiagonal alpha, diagonal beta,
/// superdiagonal gamma, dimension n >= 1.
struct TridiagToeplitz {
  double alpha;
  double beta;
  double gamma;
  std::size_t n;

  TridiagToeplitz(double alpha, double beta, double gamma, std::size_t n);
};

DenseMatrix to_dense(const TridiagToeplitz& t);

/// Eigenvalues of (M + M^T)/2: beta + (alpha+gamma) cos(k pi/(n+1)), ascending.
Vector symmetric_part_eigenvalues(const TridiagToeplitz& t);

/// Monotone iff beta >= |alpha+gamma| cos(pi/(n+1)), with 1e-12 slack.
bool is_monotone_tridiag(const TridiagToeplitz& t);

/// Eigenvalues beta + 2 sgn(gamma) sqrt(alpha gamma) cos(k pi/(n+1)) when
/// alpha*gamma > 0 (ascending); nullopt when alpha*gamma < 0 (the spectrum is
/// complex). Throws DegenerateCase when alpha*gamma == 0.
std::optional<Vector> eigenvalues_analytic(const TridiagToeplitz& t);

/// Closed-form inverse of the triangular case alpha*gamma == 0, beta != 0.
DenseMatrix invert_triangular_case(const TridiagToeplitz& t);

/// Entrywise closed-form inverse from the quadratic roots
/// r, s = (-beta +- sqrt(beta^2 - 4 alpha gamma)) / (2 alpha); handles the
/// double-root branch and complex roots (real result). Requires
/// alpha*gamma != 0 and an invertible matrix.
DenseMatrix invert_closed_form(const TridiagToeplitz& t);

/// Inverse via the forward/backward linear recurrences u_k and v_k.
/// Requires alpha*gamma != 0 and an invertible matrix.
DenseMatrix invert_recurrence(const TridiagToeplitz& t);

enum class InverseMethod { Auto, Closed, Recurrence, Triangular };

/// Dispatch: Triangular when alpha*gamma == 0, else Recurrence under Auto.
DenseMatrix invert_tridiag(const TridiagToeplitz& t, InverseMethod method = InverseMethod::Auto);

/// Resolvent (Id + M)^{-1}, computed as the inverse of the shifted matrix
/// with diagonal beta + 1. Requires a monotone input.
DenseMatrix resolvent_tridiag(const TridiagToeplitz& t);

}  // namespace affinedr
