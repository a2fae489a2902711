#include "affinedr/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace affinedr {

AffineSubspace::AffineSubspace(Vector anchor, std::vector<Vector> basis)
    : anchor_(std::move(anchor)), basis_(std::move(basis)) {
  if (!all_finite(anchor_)) throw Error("AffineSubspace: non-finite anchor");
  for (const Vector& q : basis_) {
    if (q.size() != anchor_.size()) throw WrongSize("AffineSubspace: basis dimension mismatch");
    if (!all_finite(q)) throw Error("AffineSubspace: non-finite basis vector");
  }
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i; j < basis_.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::fabs(dot(basis_[i], basis_[j]) - expected) > 1e-10)
        throw Error("AffineSubspace: basis not orthonormal");
    }
}

AffineSubspace AffineSubspace::point(Vector p) { return AffineSubspace(std::move(p), {}); }

AffineSubspace AffineSubspace::whole_space(std::size_t n) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    basis.push_back(std::move(e));
  }
  return AffineSubspace(Vector(n, 0.0), std::move(basis));
}

AffineSubspace AffineSubspace::span(const std::vector<Vector>& directions) {
  if (directions.empty()) throw WrongSize("span: need at least one direction for the dimension");
  return AffineSubspace(Vector(directions.front().size(), 0.0), orthonormalize(directions));
}

AffineSubspace AffineSubspace::through(Vector anchor, const std::vector<Vector>& directions) {
  return AffineSubspace(std::move(anchor), orthonormalize(directions));
}

Vector AffineSubspace::project(const Vector& x) const {
  if (x.size() != anchor_.size()) throw WrongSize("project: dimension mismatch");
  Vector d = sub(x, anchor_);
  Vector p = anchor_;
  for (const Vector& q : basis_) axpy(dot(q, d), q, p);
  return p;
}

double AffineSubspace::distance(const Vector& x) const { return norm(sub(x, project(x))); }

bool AffineSubspace::contains(const Vector& x, double tol) const {
  return distance(x) <= tol * (1.0 + norm(x));
}

DenseMatrix AffineSubspace::parallel_projector() const {
  const std::size_t n = ambient_dim();
  DenseMatrix p(n, n);
  for (const Vector& q : basis_)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += q[i] * q[j];
  return p;
}

std::vector<Vector> AffineSubspace::orthogonal_complement() const {
  const std::size_t n = ambient_dim();
  if (basis_.empty()) return whole_space(n).basis();
  // Rows are the basis vectors; the kernel is the complement.
  DenseMatrix qt(basis_.size(), n);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) qt(i, j) = basis_[i][j];
  return null_space(qt);
}

AffineSubspace AffineSubspace::translate(const Vector& v) const {
  return AffineSubspace(add(anchor_, v), basis_);
}

namespace {

// Orthonormal basis of the intersection of the two parallel spaces, found as
// the kernel of (I - P1) + (I - P2).
std::vector<Vector> parallel_intersection(const AffineSubspace& s1, const AffineSubspace& s2) {
  const std::size_t n = s1.ambient_dim();
  const DenseMatrix id = DenseMatrix::identity(n);
  DenseMatrix m = (id - s1.parallel_projector()) + (id - s2.parallel_projector());
  const SymmetricEigen eig = symmetric_eigen(m);
  std::vector<Vector> kernel;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (std::fabs(eig.values[k]) <= 1e-10 * (1.0 + std::fabs(eig.values.back())))
      kernel.push_back(eig.vectors.column(k));
  return orthonormalize(kernel);
}

}  // namespace

std::optional<AffineSubspace> intersect(const AffineSubspace& s1, const AffineSubspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim()) throw WrongSize("intersect: ambient dimension mismatch");
  const std::size_t n = s1.ambient_dim();
  const std::size_t d1 = s1.dim(), d2 = s2.dim();

  // Common point: Q1 a - Q2 b = anchor2 - anchor1, minimum-norm least squares.
  Vector rhs = sub(s2.anchor(), s1.anchor());
  Vector point = s1.anchor();
  if (d1 + d2 > 0) {
    DenseMatrix a(n, d1 + d2);
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, j) = s1.basis()[j][i];
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, d1 + j) = -s2.basis()[j][i];
    const Vector t = least_squares_solution(a, rhs);
    for (std::size_t j = 0; j < d1; ++j) axpy(t[j], s1.basis()[j], point);
  }
  const double scale = 1.0 + norm(s1.anchor()) + norm(s2.anchor());
  if (s1.distance(point) > kResidualTol * scale || s2.distance(point) > kResidualTol * scale)
    return std::nullopt;

  return AffineSubspace(point, parallel_intersection(s1, s2));
}

AffineSubspace minkowski_sum(const AffineSubspace& s1, const AffineSubspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw WrongSize("minkowski_sum: ambient dimension mismatch");
  std::vector<Vector> dirs = s1.basis();
  dirs.insert(dirs.end(), s2.basis().begin(), s2.basis().end());
  return AffineSubspace(add(s1.anchor(), s2.anchor()), orthonormalize(dirs));
}

double subspace_distance(const AffineSubspace& s1, const AffineSubspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw WrongSize("subspace_distance: ambient dimension mismatch");
  const double gap = max_abs_diff(s1.parallel_projector(), s2.parallel_projector());
  const double a12 = s2.distance(s1.anchor()) / (1.0 + norm(s1.anchor()));
  const double a21 = s1.distance(s2.anchor()) / (1.0 + norm(s2.anchor()));
  return gap + a12 + a21;
}

bool subspace_equal(const AffineSubspace& s1, const AffineSubspace& s2, double tol) {
  return subspace_distance(s1, s2) <= tol;
}

Vector principal_cosines(const AffineSubspace& u, const AffineSubspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw WrongSize("principal_cosines: ambient dimension mismatch");
  const std::vector<Vector> w = parallel_intersection(u, v);

  // Deflate the intersection from both parallel spaces.
  auto deflate = [&](const std::vector<Vector>& basis) {
    std::vector<Vector> out;
    for (const Vector& q : basis) {
      Vector r = q;
      for (const Vector& wk : w) axpy(-dot(wk, r), wk, r);
      out.push_back(std::move(r));
    }
    return orthonormalize(out);
  };
  const std::vector<Vector> qu = deflate(u.basis());
  const std::vector<Vector> qv = deflate(v.basis());
  if (qu.empty() || qv.empty()) return {};

  DenseMatrix c(qu.size(), qv.size());
  for (std::size_t i = 0; i < qu.size(); ++i)
    for (std::size_t j = 0; j < qv.size(); ++j) c(i, j) = dot(qu[i], qv[j]);

  const Svd svd = svd_jacobi(c);
  Vector cosines;
  const std::size_t k = std::min(qu.size(), qv.size());
  for (std::size_t i = 0; i < k; ++i)
    cosines.push_back(std::clamp(svd.sigma[i], 0.0, 1.0));
  std::sort(cosines.begin(), cosines.end());
  return cosines;
}

}  // namespace affinedr
