#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lieq {

/// Syntax error in a polynomial expression, rational literal, control spec
/// or system file.  Carries the character offset of the offending token.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

/// Dimension mismatch, unknown variable, group mismatch and similar
/// precondition violations.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a Lie closure hits its dimension or depth bound before
/// stabilizing.
struct DimensionExceededError : std::runtime_error {
  int depth;
  int dim;
  DimensionExceededError(int depth_, int dim_)
      : std::runtime_error("Lie closure exceeded its bounds at depth " +
                           std::to_string(depth_) + " with dimension " +
                           std::to_string(dim_)),
        depth(depth_),
        dim(dim_) {}
};

/// The bracket of basis elements (i, j) leaves the span of the basis.
struct NotClosedError : std::runtime_error {
  int i;
  int j;
  NotClosedError(int i_, int j_)
      : std::runtime_error("basis is not bracket-closed: [X" + std::to_string(i_) +
                           ", X" + std::to_string(j_) + "] leaves the span"),
        i(i_),
        j(j_) {}
};

/// [f, X_index] leaves the span of the basis: f is not affine relative to it.
struct NotNormalizingError : std::runtime_error {
  int index;
  explicit NotNormalizingError(int index_)
      : std::runtime_error("drift does not normalize the basis: [f, X" +
                           std::to_string(index_) + "] leaves the span"),
        index(index_) {}
};

/// Malformed or unreadable system-description file.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lieq
