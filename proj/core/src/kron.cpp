#include "affinedr/kron.hpp"

#include "affinedr/linalg.hpp"
#include "affinedr/monotone.hpp"

namespace affinedr {

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

DenseMatrix kronecker_resolvent(const DenseMatrix& m, KroneckerSide side) {
  if (!m.is_square()) throw WrongSize("kronecker_resolvent: matrix not square");
  double asym = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > 1e-9 * m.max_abs() + 1e-300)
    throw NotSymmetric("kronecker_resolvent: matrix not symmetric");
  if (!is_monotone(m)) throw NotMonotone("kronecker_resolvent: matrix not monotone");

  const DenseMatrix jm = dense_inverse(DenseMatrix::identity(m.rows()) + m);
  const DenseMatrix id = DenseMatrix::identity(m.rows());
  return side == KroneckerSide::Right ? kronecker(id, jm) : kronecker(jm, id);
}

}  // namespace affinedr
