#pragma once

#include "affinedr/matrix.hpp"

namespace affinedr {

/// Kronecker product: the block matrix [a_{ij} B].
DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

enum class KroneckerSide { Left, Right };

/// Resolvent of Id (x) M (Right) or M (x) Id (Left) for a symmetric monotone
/// M, using J_{Id (x) M} = Id (x) J_M and J_{M (x) Id} = J_M (x) Id.
DenseMatrix kronecker_resolvent(const DenseMatrix& m, KroneckerSide side);

}  // namespace affinedr
