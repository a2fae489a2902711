#include "affinedr/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "affinedr/kron.hpp"
#include "affinedr/linalg.hpp"

namespace affinedr {

bool is_monotone(const DenseMatrix& m, double tol) {
  if (!m.is_square()) throw WrongSize("is_monotone: matrix not square");
  const Vector lam = symmetric_eigenvalues(symmetric_part(m));
  return lam.empty() || lam.front() >= -tol;
}

bool is_monotone_2x2(const DenseMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw WrongSize("is_monotone_2x2: matrix not 2x2");
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  constexpr double kSlack = 1e-12;
  return a >= -kSlack && d >= -kSlack && 4.0 * a * d >= (b + c) * (b + c) - kSlack;
}

Vector eigenvalue_real_parts(const DenseMatrix& m) {
  const auto lam = eigenvalues(m);
  Vector re(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) re[i] = lam[i].real();
  std::sort(re.begin(), re.end());
  return re;
}

bool is_paramonotone_linear(const DenseMatrix& m) {
  if (!is_monotone(m)) throw NotMonotone("is_paramonotone_linear: matrix not monotone");
  // ker(M + M^T) and ker of the symmetric part coincide.
  const std::vector<Vector> kernel = null_space(symmetric_part(m));
  const double tol = 1e-9 * (1.0 + m.max_abs());
  for (const Vector& q : kernel)
    if (norm(m.apply(q)) > tol) return false;
  return true;
}

DenseMatrix block_tridiag_embed(const DenseMatrix& m) {
  if (!m.is_square()) throw WrongSize("block_tridiag_embed: matrix not square");
  const std::size_t n = m.rows();
  if (n < 2) throw WrongSize("block_tridiag_embed: need n >= 2");
  DenseMatrix b(n * n, n * n);
  for (std::size_t blk = 0; blk < n; ++blk) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(blk * n + i, blk * n + j) = m(i, j);
    if (blk + 1 < n)
      for (std::size_t i = 0; i < n; ++i) {
        b(blk * n + i, (blk + 1) * n + i) = -1.0;
        b((blk + 1) * n + i, blk * n + i) = -1.0;
      }
  }
  return b;
}

double block_quadratic_form(const DenseMatrix& m, const Vector& x) {
  const std::size_t n = m.rows();
  if (x.size() != n * n) throw WrongSize("block_quadratic_form: x must have length n^2");
  auto block = [&](std::size_t k) {
    return Vector(x.begin() + static_cast<std::ptrdiff_t>(k * n),
                  x.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  };

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vector xk = block(k);
    const double scale = (k == 0 || k + 1 == n) ? 1.0 : 2.0;
    total += dot(xk, m.apply(xk)) - scale * dot(xk, xk);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Vector diff = sub(block(k), block(k + 1));
    total += dot(diff, diff);
  }
  return total;
}

BlockMonotonicity block_monotonicity_tests(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  if (!m.is_square() || n < 2) throw WrongSize("block_monotonicity_tests: need square M, n >= 2");
  const DenseMatrix id = DenseMatrix::identity(n);
  BlockMonotonicity r{};
  r.embed_monotone = is_monotone(block_tridiag_embed(m));
  r.m_minus_2id_monotone = is_monotone(m - 2.0 * id);
  r.m_minus_scaled_monotone =
      is_monotone(m - 2.0 * (1.0 - 1.0 / static_cast<double>(n)) * id);
  r.m_monotone = is_monotone(m);
  return r;
}

bool kronecker_monotone_symmetric(const DenseMatrix& m1, const DenseMatrix& m2) {
  auto symmetric = [](const DenseMatrix& m) {
    return max_abs_diff(m, m.transpose()) <= 1e-9 * (1.0 + m.max_abs());
  };
  if (!is_monotone(m1))
    throw PreconditionViolated("kronecker_monotone_symmetric: first factor not monotone");
  if (!is_monotone(m2))
    throw PreconditionViolated("kronecker_monotone_symmetric: second factor not monotone");
  if (!symmetric(m1) && !symmetric(m2))
    throw PreconditionViolated("kronecker_monotone_symmetric: neither factor symmetric");
  return is_monotone(kronecker(m1, m2));
}

}  // namespace affinedr
