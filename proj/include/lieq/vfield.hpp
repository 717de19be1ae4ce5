#pragma once

#include "lieq/poly.hpp"

#include <string>
#include <vector>

namespace lieq {

/// Coordinate vector field on R^n with polynomial components: one Poly per
/// coordinate, all over the same ordered variable list.
class VField {
 public:
  VField(std::vector<std::string> vars, std::vector<Poly> components);

  static VField zero(std::vector<std::string> vars);
  /// The field coef * d/d(var).
  static VField coordinate(std::vector<std::string> vars, std::string_view var,
                           const Poly& coef);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t dimension() const { return vars_.size(); }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& component(std::size_t i) const { return comps_.at(i); }

  bool is_zero() const;
  int degree() const;  // max component degree, -1 for the zero field

  VField operator-() const;
  VField operator+(const VField& other) const;
  VField operator-(const VField& other) const;
  VField operator*(const Rational& c) const;

  bool operator==(const VField& other) const {
    return vars_ == other.vars_ && comps_ == other.comps_;
  }

  std::vector<Rational> evaluate(const std::vector<Rational>& point) const;
  std::vector<double> evaluate(const std::vector<double>& point) const;

  /// "2*y d/dx" style rendering; components in variable order.
  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::vector<Poly> comps_;
};

/// Coordinate Lie bracket, convention
///   [X,Y]^i = sum_j X^j dY^i/dx_j - Y^j dX^i/dx_j.
VField lie_bracket(const VField& x, const VField& y);

}  // namespace lieq
