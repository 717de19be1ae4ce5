#include "lieq/vfield.hpp"

#include "lieq/errors.hpp"

#include <algorithm>

namespace lieq {

VField::VField(std::vector<std::string> vars, std::vector<Poly> components)
    : vars_(std::move(vars)), comps_(std::move(components)) {
  if (comps_.size() != vars_.size())
    throw DomainError("component count does not match variable count");
  for (const auto& p : comps_)
    if (p.vars() != vars_)
      throw DomainError("component polynomial has a different variable list");
}

VField VField::zero(std::vector<std::string> vars) {
  std::vector<Poly> comps(vars.size(), Poly(vars));
  return VField(std::move(vars), std::move(comps));
}

VField VField::coordinate(std::vector<std::string> vars, std::string_view var,
                          const Poly& coef) {
  VField f = zero(vars);
  f.comps_[coef.var_index(var)] = coef;
  return f;
}

bool VField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
}

int VField::degree() const {
  int d = -1;
  for (const auto& p : comps_) d = std::max(d, p.degree());
  return d;
}

VField VField::operator-() const {
  std::vector<Poly> comps;
  comps.reserve(comps_.size());
  for (const auto& p : comps_) comps.push_back(-p);
  return VField(vars_, std::move(comps));
}

VField VField::operator+(const VField& other) const {
  if (vars_ != other.vars_) throw DomainError("vector fields live over different variable lists");
  std::vector<Poly> comps;
  comps.reserve(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps.push_back(comps_[i] + other.comps_[i]);
  return VField(vars_, std::move(comps));
}

VField VField::operator-(const VField& other) const { return *this + (-other); }

VField VField::operator*(const Rational& c) const {
  std::vector<Poly> comps;
  comps.reserve(comps_.size());
  for (const auto& p : comps_) comps.push_back(p * c);
  return VField(vars_, std::move(comps));
}

std::vector<Rational> VField::evaluate(const std::vector<Rational>& point) const {
  std::vector<Rational> v;
  v.reserve(comps_.size());
  for (const auto& p : comps_) v.push_back(p.evaluate(point));
  return v;
}

std::vector<double> VField::evaluate(const std::vector<double>& point) const {
  std::vector<double> v;
  v.reserve(comps_.size());
  for (const auto& p : comps_) v.push_back(p.evaluate(point));
  return v;
}

std::string VField::str() const {
  std::string out;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    std::string cs = comps_[i].str();
    const bool multi = comps_[i].terms().size() > 1;
    bool neg = false;
    if (!multi && !cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (multi) cs = "(" + cs + ")";
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (cs == "1") out += "∂/∂" + vars_[i];
    else out += cs + " ∂/∂" + vars_[i];
  }
  return out.empty() ? "0" : out;
}

VField lie_bracket(const VField& x, const VField& y) {
  if (x.vars() != y.vars())
    throw DomainError("lie_bracket: fields live over different variable lists");
  const std::size_t n = x.dimension();
  std::vector<Poly> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly acc(x.vars());
    for (std::size_t j = 0; j < n; ++j) {
      acc = acc + x.component(j) * y.component(i).derivative(j);
      acc = acc - y.component(j) * x.component(i).derivative(j);
    }
    comps.push_back(std::move(acc));
  }
  return VField(x.vars(), std::move(comps));
}

}  // namespace lieq
