#include "affinedr/relation.hpp"

#include <cmath>
#include <cstdint>

#include "affinedr/dr.hpp"
#include "affinedr/linalg.hpp"

namespace affinedr {

namespace {

Vector concat(const Vector& x, const Vector& u) {
  Vector r = x;
  r.insert(r.end(), u.begin(), u.end());
  return r;
}

Vector first_half(const Vector& w, std::size_t n) { return Vector(w.begin(), w.begin() + n); }
Vector second_half(const Vector& w, std::size_t n) { return Vector(w.begin() + n, w.end()); }

}  // namespace

AffineRelation::AffineRelation(std::size_t dim, AffineSubspace graph)
    : dim_(dim), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != 2 * dim_)
    throw WrongSize("AffineRelation: graph must live in R^{2n}");
}

AffineRelation AffineRelation::from_linear_map(const DenseMatrix& m, const Vector& b) {
  const std::size_t n = b.size();
  if (!m.is_square() || m.rows() != n)
    throw WrongSize("from_linear_map: M must be n x n with b of length n");
  std::vector<Vector> dirs;
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    dirs.push_back(concat(e, m.column(j)));
  }
  return AffineRelation(n, AffineSubspace(concat(Vector(n, 0.0), b), orthonormalize(dirs)));
}

AffineRelation AffineRelation::from_affine_map(const AffineMap& t) {
  return from_linear_map(t.linear_part(), t.offset());
}

AffineRelation AffineRelation::normal_cone(const AffineSubspace& u) {
  const std::size_t n = u.ambient_dim();
  std::vector<Vector> dirs;
  for (const Vector& q : u.basis()) dirs.push_back(concat(q, Vector(n, 0.0)));
  for (const Vector& w : u.orthogonal_complement()) dirs.push_back(concat(Vector(n, 0.0), w));
  return AffineRelation(n, AffineSubspace(concat(u.anchor(), Vector(n, 0.0)), std::move(dirs)));
}

AffineRelation AffineRelation::constant(const Vector& u0) {
  const std::size_t n = u0.size();
  std::vector<Vector> dirs;
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(2 * n, 0.0);
    e[j] = 1.0;
    dirs.push_back(std::move(e));
  }
  return AffineRelation(n, AffineSubspace(concat(Vector(n, 0.0), u0), std::move(dirs)));
}

AffineRelation AffineRelation::zero(std::size_t n) {
  return constant(Vector(n, 0.0));
}

AffineRelation inverse(const AffineRelation& a) {
  const std::size_t n = a.dim();
  auto swap_halves = [n](const Vector& w) { return concat(second_half(w, n), first_half(w, n)); };
  std::vector<Vector> dirs;
  for (const Vector& q : a.graph().basis()) dirs.push_back(swap_halves(q));
  return AffineRelation(n, AffineSubspace(swap_halves(a.graph().anchor()), std::move(dirs)));
}

AffineRelation reversal(const AffineRelation& a) {
  std::vector<Vector> dirs = a.graph().basis();
  return AffineRelation(a.dim(),
                        AffineSubspace(scale(-1.0, a.graph().anchor()), std::move(dirs)));
}

AffineRelation sum(const AffineRelation& a, const AffineRelation& b) {
  if (a.dim() != b.dim()) throw WrongSize("sum: dimension mismatch");
  const std::size_t n = a.dim();

  // Product of the two graphs in R^{4n} with coordinates (x, u, y, v).
  Vector anchor = concat(a.graph().anchor(), b.graph().anchor());
  std::vector<Vector> dirs;
  for (const Vector& q : a.graph().basis()) dirs.push_back(concat(q, Vector(2 * n, 0.0)));
  for (const Vector& q : b.graph().basis()) dirs.push_back(concat(Vector(2 * n, 0.0), q));
  const AffineSubspace product(std::move(anchor), std::move(dirs));

  // Constraint subspace {x = y}.
  std::vector<Vector> cdirs;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vector d(4 * n, 0.0);
    d[i] = inv_sqrt2;
    d[2 * n + i] = inv_sqrt2;
    cdirs.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vector d(4 * n, 0.0);
    d[n + i] = 1.0;
    cdirs.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vector d(4 * n, 0.0);
    d[3 * n + i] = 1.0;
    cdirs.push_back(std::move(d));
  }
  const AffineSubspace constraint(Vector(4 * n, 0.0), std::move(cdirs));

  const std::optional<AffineSubspace> meet = intersect(product, constraint);
  if (!meet) throw EmptySum("sum: domains do not meet");

  // Image under (x, u, y, v) -> (x, u + v).
  auto image = [n](const Vector& w) {
    Vector r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = w[i];
      r[n + i] = w[n + i] + w[3 * n + i];
    }
    return r;
  };
  std::vector<Vector> idirs;
  for (const Vector& q : meet->basis()) idirs.push_back(image(q));
  return AffineRelation(n, AffineSubspace(image(meet->anchor()), orthonormalize(idirs)));
}

AffineRelation parallel_sum(const AffineRelation& a, const AffineRelation& b) {
  return inverse(sum(inverse(a), inverse(b)));
}

std::optional<AffineSubspace> evaluate(const AffineRelation& a, const Vector& x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw WrongSize("evaluate: dimension mismatch");
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    Vector d(2 * n, 0.0);
    d[n + i] = 1.0;
    dirs.push_back(std::move(d));
  }
  const AffineSubspace slice(concat(x, Vector(n, 0.0)), std::move(dirs));
  const std::optional<AffineSubspace> meet = intersect(a.graph(), slice);
  if (!meet) return std::nullopt;
  // Every direction of the slice has zero x-part, so the u-parts stay
  // orthonormal.
  std::vector<Vector> udirs;
  for (const Vector& q : meet->basis()) udirs.push_back(second_half(q, n));
  return AffineSubspace(second_half(meet->anchor(), n), orthonormalize(udirs));
}

std::optional<AffineSubspace> zeros(const AffineRelation& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    Vector d(2 * n, 0.0);
    d[i] = 1.0;
    dirs.push_back(std::move(d));
  }
  const AffineSubspace slice(Vector(2 * n, 0.0), std::move(dirs));
  const std::optional<AffineSubspace> meet = intersect(a.graph(), slice);
  if (!meet) return std::nullopt;
  std::vector<Vector> xdirs;
  for (const Vector& q : meet->basis()) xdirs.push_back(first_half(q, n));
  return AffineSubspace(first_half(meet->anchor(), n), orthonormalize(xdirs));
}

AffineMap resolvent(const AffineRelation& a) {
  const std::size_t n = a.dim();
  const AffineSubspace& g = a.graph();
  if (g.dim() != n)
    throw NotMaximal("resolvent: graph dimension " + std::to_string(g.dim()) +
                     " != ambient dimension " + std::to_string(n));

  // Solve (Q_x + Q_u) t = x - g_x - g_u, then J x = g_x + Q_x t.
  DenseMatrix qx(n, n), qsum(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      qx(i, k) = g.basis()[k][i];
      qsum(i, k) = g.basis()[k][i] + g.basis()[k][n + i];
    }
  DenseMatrix qsum_inv;
  try {
    qsum_inv = dense_inverse(qsum);
  } catch (const SingularMatrix&) {
    throw NotMaximal("resolvent: lifted system singular");
  }
  const DenseMatrix l = qx * qsum_inv;
  const Vector gx = first_half(g.anchor(), n);
  const Vector gu = second_half(g.anchor(), n);
  const Vector c = sub(gx, l.apply(add(gx, gu)));
  return AffineMap(l, c);
}

AffineMap reflected_resolvent(const AffineRelation& a) {
  const AffineMap j = resolvent(a);
  return 2.0 * j - AffineMap::identity(a.dim());
}

namespace {

// Quadratic form <dx, du> restricted to the graph's parallel space, in basis
// coordinates.
DenseMatrix graph_form(const AffineRelation& a) {
  const std::size_t n = a.dim();
  const std::size_t d = a.graph().dim();
  DenseMatrix s(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k; l < d; ++l) {
      const Vector& qk = a.graph().basis()[k];
      const Vector& ql = a.graph().basis()[l];
      double val = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        val += 0.5 * (qk[i] * ql[n + i] + ql[i] * qk[n + i]);
      s(k, l) = val;
      s(l, k) = val;
    }
  return s;
}

bool parallel_space_contains(const AffineSubspace& g, const Vector& w) {
  Vector r = w;
  for (const Vector& q : g.basis()) axpy(-dot(q, r), q, r);
  return norm(r) <= 1e-8 * (1.0 + norm(w));
}

}  // namespace

bool is_monotone_relation(const AffineRelation& a) {
  const DenseMatrix s = graph_form(a);
  if (s.rows() == 0) return true;
  const Vector lam = symmetric_eigenvalues(s);
  return lam.front() >= -1e-10;
}

bool is_paramonotone_relation(const AffineRelation& a) {
  if (!is_monotone_relation(a)) throw NotMonotone("is_paramonotone_relation: not monotone");
  const std::size_t n = a.dim();
  const DenseMatrix s = graph_form(a);
  if (s.rows() == 0) return true;
  for (const Vector& t : null_space(s)) {
    Vector dx(n, 0.0), du(n, 0.0);
    for (std::size_t k = 0; k < t.size(); ++k) {
      axpy(t[k], first_half(a.graph().basis()[k], n), dx);
      axpy(t[k], second_half(a.graph().basis()[k], n), du);
    }
    if (!parallel_space_contains(a.graph(), concat(dx, Vector(n, 0.0)))) return false;
    if (!parallel_space_contains(a.graph(), concat(Vector(n, 0.0), du))) return false;
  }
  return true;
}

DualPair attouch_thera(const AffineRelation& a, const AffineRelation& b) {
  DualPair pair;
  try {
    pair.z = zeros(sum(a, b));
  } catch (const EmptySum&) {
    pair.z = std::nullopt;
  }
  try {
    pair.k = zeros(sum(inverse(a), inverse(reversal(b))));
  } catch (const EmptySum&) {
    pair.k = std::nullopt;
  }

  // Cross-check against the parallel-sum route K = (A || B^v)(0).
  std::optional<AffineSubspace> k2;
  try {
    k2 = evaluate(parallel_sum(a, reversal(b)), Vector(a.dim(), 0.0));
  } catch (const EmptySum&) {
    k2 = std::nullopt;
  }
  if (pair.k.has_value() != k2.has_value())
    throw Error("attouch_thera: dual-set routes disagree on emptiness");
  if (pair.k && subspace_distance(*pair.k, *k2) > 1e-9)
    throw Error("attouch_thera: dual-set routes disagree");
  return pair;
}

FixDecomposition fix_decomposition_check(const AffineRelation& a, const AffineRelation& b) {
  if (!is_paramonotone_relation(a) || !is_paramonotone_relation(b))
    throw NotMonotone("fix_decomposition_check: operators must be paramonotone");
  const DualPair pair = attouch_thera(a, b);
  if (!pair.z) throw NoSolution("fix_decomposition_check: Z is empty");
  if (!pair.k) throw NoSolution("fix_decomposition_check: K is empty");

  const AffineMap t = dr_operator(a, b);
  const std::optional<AffineSubspace> fix = fixed_point_set(t);
  if (!fix) throw NoSolution("fix_decomposition_check: Fix T is empty");

  FixDecomposition out{*fix, minkowski_sum(*pair.z, *pair.k), false, true};
  out.equal = subspace_equal(out.fix, out.z_plus_k, 1e-8);

  const AffineSubspace& z = *pair.z;
  const AffineSubspace& k = *pair.k;
  for (const Vector& dz : z.basis()) {
    if (std::fabs(dot(k.anchor(), dz)) > 1e-8 * (1.0 + norm(k.anchor()))) out.k_perp_z = false;
    for (const Vector& dk : k.basis())
      if (std::fabs(dot(dk, dz)) > 1e-8) out.k_perp_z = false;
  }
  return out;
}

ShadowPredicate shadow_limit_predicate(const AffineRelation& a, const AffineRelation& b) {
  const FixDecomposition fd = fix_decomposition_check(a, b);
  ShadowPredicate out{fd.k_perp_z, fd.k_perp_z};
  if (!out.predicts_shadow_to_pz) return out;

  // Verify J_A P_Fix = P_Z on sample points.
  const DualPair pair = attouch_thera(a, b);
  const AffineMap ja = resolvent(a);
  const AffineMap pfix = project_onto_fix(dr_operator(a, b));
  const std::size_t n = a.dim();
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      x[i] = static_cast<double>(state >> 11) / static_cast<double>(1ull << 53) * 4.0 - 2.0;
    }
    const Vector lhs = ja(pfix(x));
    const Vector rhs = pair.z->project(x);
    if (norm(sub(lhs, rhs)) > 1e-8 * (1.0 + norm(x)))
      throw Error("shadow_limit_predicate: J_A P_Fix != P_Z despite orthogonality");
  }
  return out;
}

}  // namespace affinedr
