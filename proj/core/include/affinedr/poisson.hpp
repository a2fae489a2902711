#pragma once

#include <iosfwd>
#include <string>

#include "affinedr/affine_map.hpp"
#include "affinedr/dr.hpp"
#include "affinedr/matrix.hpp"
#include "affinedr/tridiag.hpp"

namespace affinedr {

/// Discrete Dirichlet-Poisson problem on the unit square with n x n interior
/// grid points, mesh width h = 1/(n+1). `f` holds source samples at the
/// interior nodes, row-major from the bottom-left; the g_* arrays hold
/// Dirichlet values at the boundary nodes adjacent to the interior.
struct PoissonProblem {
  std::size_t n;
  Vector f;         // length n^2
  Vector g_bottom;  // length n, values at (x_j, 0)
  Vector g_top;     // length n, values at (x_j, 1)
  Vector g_left;    // length n, values at (0, y_i)
  Vector g_right;   // length n, values at (1, y_i)

  PoissonProblem(std::size_t n, Vector f, Vector g_bottom, Vector g_top, Vector g_left,
                 Vector g_right);

  static PoissonProblem zero(std::size_t n);
  double mesh_width() const { return 1.0 / static_cast<double>(n + 1); }

  /// Parse the structured text format (see write for the layout):
  ///   n <count>
  ///   f const <value> | f values v1 ... v_{n^2}
  ///   g bottom|top|left|right const <value> | values v1 ... vn
  /// Missing sides default to zero. Throws ParseError.
  static PoissonProblem parse(const std::string& text);
  void write(std::ostream& os) const;
};

struct PoissonOperators {
  DenseMatrix l_right;  // Id (x) M, second differences along rows
  DenseMatrix l_up;     // M (x) Id, second differences along columns
  TridiagToeplitz m;    // tridiag(-1, 2, -1)
};

/// The two positive definite factors of the 5-point discrete Laplacian.
PoissonOperators build_operators(std::size_t n);

/// Right-hand side b with (L_right + L_up) y = -b: folds -h^2 f and the
/// Dirichlet boundary values into the standard 5-point stencil convention.
Vector assemble_rhs(const PoissonProblem& p);

struct HalfStep {
  Vector y_half;
  Vector y_next;
};

/// One sweep of the original 1956 scheme
///   y+1/2 + A y + B y+1/2 - y = 0,   y+1 - y+1/2 - A y + A y+1 = 0
/// in resolved form y+1/2 = J_B (Id - A) y, y+1 = J_A (A y + y+1/2).
HalfStep original_dr_step(const AffineMap& a, const AffineMap& b, const Vector& y);

/// Runs the original scheme alongside the operator iteration
/// x -> (Id - J_A + J_B R_A) x with x_0 = (Id + A) y_0 and checks
/// x_k = (Id + A) y_k for every k <= iters, together with the algebraic
/// identities (Id - A) J_A = R_A and A J_A = Id - J_A.
bool change_of_variable_check(const AffineMap& a, const AffineMap& b, const Vector& y0,
                              std::size_t iters);

struct PoissonSolution {
  Vector solution;
  IterationTrace trace;
  std::size_t iterations;
  double residual;  // ||(L_right + L_up) y + b|| at the solution
};

/// Raised when the iteration cap is hit; carries the best iterate so far.
struct MaxIterExceeded : Error {
  MaxIterExceeded(std::string what, PoissonSolution best)
      : Error(std::move(what)), best(std::move(best)) {}
  PoissonSolution best;
};

/// Solve the discrete problem by Douglas-Rachford splitting of
/// A = L_right, B = y -> L_up y + b; the shadow sequence converges to the
/// unique solution.
PoissonSolution solve_poisson_dr(const PoissonProblem& p, double tol, std::size_t max_iter);

/// Dense direct solve of (L_right + L_up) y = -b, the test oracle.
Vector solve_poisson_direct(const PoissonProblem& p);

}  // namespace affinedr
