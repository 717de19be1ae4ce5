#pragma once

#include "lieq/rational.hpp"

#include <optional>
#include <vector>

namespace lieq {

/// Dense matrix over exact rationals.  All span, rank and membership
/// decisions in the symbolic layer go through fraction-free-ish Gaussian
/// elimination on these; no floating point is involved.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool operator==(const RatMat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

/// In-place reduced row echelon form; returns the pivot column indices.
std::vector<int> reduced_row_echelon(RatMat& m);

int rank(RatMat m);

/// One exact solution of A x = b, free variables set to zero;
/// std::nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve(RatMat a, std::vector<Rational> b);

}  // namespace lieq
