#include "lieq/ratmat.hpp"

#include "lieq/errors.hpp"

namespace lieq {

std::vector<int> reduced_row_echelon(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = Rational(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RatMat m) { return static_cast<int>(reduced_row_echelon(m).size()); }

std::optional<std::vector<Rational>> solve(RatMat a, std::vector<Rational> b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw DomainError("solve: right-hand side length does not match row count");
  RatMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const std::vector<int> pivots = reduced_row_echelon(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
  std::vector<Rational> x(static_cast<std::size_t>(a.cols()), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[static_cast<std::size_t>(pivots[r])] = aug(static_cast<int>(r), a.cols());
  return x;
}

}  // namespace lieq
