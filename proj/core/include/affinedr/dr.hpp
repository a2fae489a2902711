#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "affinedr/affine_map.hpp"
#include "affinedr/relation.hpp"
#include "affinedr/subspace.hpp"

namespace affinedr {

/// Per-iteration record of a Douglas-Rachford run: the governing sequence,
/// the shadow sequence J_A T^n x, step residuals and distances to the known
/// limits.
struct IterationTrace {
  std::vector<Vector> points;
  std::vector<Vector> shadows;
  Vector residuals;           // ||x_k - x_{k+1}||
  Vector dist_to_fix;         // ||x_k - P_Fix x_0||
  Vector dist_shadow_to_pz;   // ||J_A x_k - P_Z x_0||, empty when Z unknown
  std::optional<double> fitted_rate;

  /// CSV rows (iter, residual, dist_to_fix, dist_shadow_to_pz); missing
  /// values are written as nan.
  void write_csv(std::ostream& os) const;
};

/// Fix T = a + ker(Id - L), or nullopt when (Id - L) x = b has no solution.
std::optional<AffineSubspace> fixed_point_set(const AffineMap& t);

/// Minimum-norm a with b = a - L a. Throws NoFixedPoint.
Vector displacement_vector(const AffineMap& t);

/// T^n x by the displacement form a + L^n (x - a) when Fix T is nonempty,
/// else by the partial-sum form L^n x + sum_k L^k b.
Vector iterate_closed_form(const AffineMap& t, const Vector& x, std::size_t n);

/// The affine projector onto Fix T. Throws NoFixedPoint.
AffineMap project_onto_fix(const AffineMap& t);

/// Spectral test (unit-circle spectrum only at 1) confirmed by power
/// iteration on sample starting points. Throws NoFixedPoint.
bool is_asymptotically_regular(const AffineMap& t);

/// T = Id - J_A + J_B R_A; the equivalent half-averaged form
/// (Id + R_B R_A)/2 is verified entrywise.
AffineMap dr_operator(const AffineRelation& a, const AffineRelation& b);

/// Iterate T from x0 until ||x_k - x_{k+1}|| <= tol (1 + ||x0||) or max_iter.
/// Throws NoSolution when Fix T is empty.
IterationTrace run_dr(const AffineRelation& a, const AffineRelation& b, const Vector& x0,
                      std::size_t max_iter, double tol);

/// Least-squares slope of log(dist_to_fix) over the final two thirds of the
/// iterations; nullopt when fewer than 10 usable distances remain or the
/// distances do not decrease.
std::optional<double> estimate_linear_rate(const IterationTrace& trace);

/// Largest eigenvalue magnitude of L restricted to the complement of Fix L.
/// Throws NoFixedPoint.
double spectral_rate(const AffineMap& t);

/// T^n for the pair (N_{w+U}, N_{w+V}) equals the translated linear-case
/// iteration, evaluated at x.
bool feasibility_translation_check(const AffineSubspace& u, const AffineSubspace& v,
                                   const Vector& w, const Vector& x, std::size_t n);

/// Largest principal cosine after deflating the intersection; 0 when a
/// deflated space is trivial.
double friedrichs_cos(const AffineSubspace& u, const AffineSubspace& v);

struct ParallelSplitting {
  IterationTrace trace;
  Vector average_limit;
  AffineSubspace z_bold;
};

/// Product-space reduction of 0 in sum B_i: DR on (N_Delta, B_1 x ... x B_m)
/// in R^{mn} with block-major layout. The averaged shadow limit lies in
/// zer(sum B_i).
ParallelSplitting parallel_splitting(const std::vector<AffineRelation>& bs, const Vector& x0,
                                     std::size_t max_iter, double tol);

}  // namespace affinedr
