#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affinedr {

/// Base class for every failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct NotSymmetric : Error {
  using Error::Error;
};

struct WrongSize : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct NotMonotone : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

/// Raised when a branch-specific routine is called outside its branch
/// (e.g. the triangular inverse with both off-diagonals nonzero).
struct WrongBranch : Error {
  using Error::Error;
};

/// Raised when the analytic eigenvalue formula degenerates (alpha*gamma == 0).
struct DegenerateCase : Error {
  using Error::Error;
};

/// Pointwise sum of two relations whose domains do not meet.
struct EmptySum : Error {
  using Error::Error;
};

/// The resolvent solve is infeasible or non-unique, so the relation cannot
/// be maximally monotone.
struct NotMaximal : Error {
  using Error::Error;
};

struct NoFixedPoint : Error {
  using Error::Error;
};

struct NoSolution : Error {
  using Error::Error;
};

/// Malformed textual input; `position` is a character offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace affinedr
