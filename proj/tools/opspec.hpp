#pragma once

#include <optional>
#include <string>

#include "affinedr/matrix.hpp"
#include "affinedr/relation.hpp"
#include "affinedr/tridiag.hpp"

namespace affinedr::cli {

/// Result of parsing the one-line operator grammar:
///   id N | zero N | rot
///   dense [[a,b],[c,d]]
///   tridiag alpha beta gamma n
///   affine [[..]] [b..]
///   const [u..]
///   normalcone [[dir..],[dir..]] [@ [anchor..]]
///   kron <operator> <operator>
struct ParsedOperator {
  AffineRelation relation;
  /// Present when the grammar denotes a plain matrix map (dense, tridiag,
  /// kron, rot, id, zero, affine); drives the matrix diagnostics.
  std::optional<DenseMatrix> matrix;
  /// Present for tridiag specs; drives the threshold report.
  std::optional<TridiagToeplitz> tridiag;
};

/// Throws ParseError with the offending character position.
ParsedOperator parse_operator(const std::string& text);

/// Parse a plain vector literal like [1, 2.5, -3].
Vector parse_vector(const std::string& text);

}  // namespace affinedr::cli
