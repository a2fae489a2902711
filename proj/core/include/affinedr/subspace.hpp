#pragma once

#include <optional>
#include <vector>

#include "affinedr/linalg.hpp"
#include "affinedr/matrix.hpp"

namespace affinedr {

/// Affine subspace of R^n: an anchor point plus an orthonormal basis of the
/// parallel space (possibly empty, for a single point).
class AffineSubspace {
 public:
  /// Requires `basis` to be orthonormal already (checked to 1e-10).
  AffineSubspace(Vector anchor, std::vector<Vector> basis);

  static AffineSubspace point(Vector p);
  static AffineSubspace whole_space(std::size_t n);
  /// Linear span through the origin; directions are orthonormalized.
  static AffineSubspace span(const std::vector<Vector>& directions);
  /// Affine subspace through `anchor`; directions are orthonormalized.
  static AffineSubspace through(Vector anchor, const std::vector<Vector>& directions);

  std::size_t ambient_dim() const { return anchor_.size(); }
  std::size_t dim() const { return basis_.size(); }
  const Vector& anchor() const { return anchor_; }
  const std::vector<Vector>& basis() const { return basis_; }
  bool is_point() const { return basis_.empty(); }

  /// Orthogonal projection of x onto the set.
  Vector project(const Vector& x) const;
  double distance(const Vector& x) const;
  /// x in S within tol * (1 + ||x||).
  bool contains(const Vector& x, double tol = 1e-8) const;

  /// Projector Q Q^T onto the parallel space.
  DenseMatrix parallel_projector() const;
  /// Orthonormal basis of the orthogonal complement of the parallel space.
  std::vector<Vector> orthogonal_complement() const;

  /// Translate the set by v.
  AffineSubspace translate(const Vector& v) const;

 private:
  Vector anchor_;
  std::vector<Vector> basis_;
};

/// S1 cap S2, or nullopt when the sets do not meet.
std::optional<AffineSubspace> intersect(const AffineSubspace& s1, const AffineSubspace& s2);

/// Minkowski sum {x + y : x in S1, y in S2}.
AffineSubspace minkowski_sum(const AffineSubspace& s1, const AffineSubspace& s2);

/// Set distance used for equality tests: projector gap plus scaled anchor
/// cross-membership residuals.
double subspace_distance(const AffineSubspace& s1, const AffineSubspace& s2);
bool subspace_equal(const AffineSubspace& s1, const AffineSubspace& s2, double tol = 1e-8);

/// Sorted cosines of the principal angles between the parallel spaces after
/// deflating their intersection; empty when a deflated space is trivial.
Vector principal_cosines(const AffineSubspace& u, const AffineSubspace& v);

}  // namespace affinedr
