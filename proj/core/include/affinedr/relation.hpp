#pragma once

#include <optional>

#include "affinedr/affine_map.hpp"
#include "affinedr/matrix.hpp"
#include "affinedr/subspace.hpp"

namespace affinedr {

/// Set-valued affine relation on R^n, represented by its graph: an affine
/// subspace of R^{2n} whose first n coordinates are the point x and last n
/// the value u.
class AffineRelation {
 public:
  AffineRelation(std::size_t dim, AffineSubspace graph);

  /// Graph of x -> M x + b.
  static AffineRelation from_linear_map(const DenseMatrix& m, const Vector& b);
  static AffineRelation from_affine_map(const AffineMap& t);
  /// Normal cone of an affine subspace: {(x, u) : x in U, u perp par U}.
  static AffineRelation normal_cone(const AffineSubspace& u);
  /// Constant relation x -> u0 with full domain.
  static AffineRelation constant(const Vector& u0);
  static AffineRelation zero(std::size_t n);

  std::size_t dim() const { return dim_; }
  const AffineSubspace& graph() const { return graph_; }

 private:
  std::size_t dim_;
  AffineSubspace graph_;
};

/// Graph with the coordinate halves swapped: {(u, x) : (x, u) in gra A}.
AffineRelation inverse(const AffineRelation& a);

/// (-Id) o A o (-Id): {(-x, -u) : (x, u) in gra A}.
AffineRelation reversal(const AffineRelation& a);

/// Pointwise sum {(x, u + v)}. Throws EmptySum when dom A and dom B are
/// disjoint.
AffineRelation sum(const AffineRelation& a, const AffineRelation& b);

/// Parallel sum (A^{-1} + B^{-1})^{-1}.
AffineRelation parallel_sum(const AffineRelation& a, const AffineRelation& b);

/// The set A(x), or nullopt when x is outside the domain.
std::optional<AffineSubspace> evaluate(const AffineRelation& a, const Vector& x);

/// {x : (x, 0) in gra A}, or nullopt when A has no zeros.
std::optional<AffineSubspace> zeros(const AffineRelation& a);

/// Resolvent J_A = (Id + A)^{-1} as an affine map. Throws NotMaximal when the
/// lifted solve is not square and nonsingular (the finite-dimensional
/// maximality surrogate).
AffineMap resolvent(const AffineRelation& a);

/// R_A = 2 J_A - Id.
AffineMap reflected_resolvent(const AffineRelation& a);

/// The quadratic form <dx, du> is positive semidefinite on the graph's
/// parallel space.
bool is_monotone_relation(const AffineRelation& a);

/// Affine reduction of paramonotonicity: every parallel-space direction
/// (dx, du) with <dx, du> = 0 must have (dx, 0) and (0, du) in the parallel
/// space. Throws NotMonotone for non-monotone input.
bool is_paramonotone_relation(const AffineRelation& a);

/// Primal and dual solution sets Z = zer(A + B), K = zer(A^{-1} + B^{-v}).
struct DualPair {
  std::optional<AffineSubspace> z;
  std::optional<AffineSubspace> k;
};
DualPair attouch_thera(const AffineRelation& a, const AffineRelation& b);

struct FixDecomposition {
  AffineSubspace fix;       // Fix T_DR
  AffineSubspace z_plus_k;  // Z + K
  bool equal;
  bool k_perp_z;            // every k in K orthogonal to Z - Z
};
/// Requires paramonotone A, B with nonempty Z.
FixDecomposition fix_decomposition_check(const AffineRelation& a, const AffineRelation& b);

struct ShadowPredicate {
  bool k_perp_zdiff;
  bool predicts_shadow_to_pz;
};
/// Requires paramonotone A, B with nonempty Z. When the orthogonality flag
/// holds, the identity J_A P_Fix = P_Z is additionally verified on sample
/// points.
ShadowPredicate shadow_limit_predicate(const AffineRelation& a, const AffineRelation& b);

}  // namespace affinedr
