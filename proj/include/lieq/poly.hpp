#pragma once

#include "lieq/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lieq {

/// Exponent multi-index; length equals the ambient variable count.
using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

/// Graded lexicographic order: compare total degree first, then
/// exponents left to right.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact multivariate polynomial over the rationals.  Immutable in spirit:
/// all operations return new values.  The term map stores nonzero
/// coefficients only, keyed by canonical (graded-lex) monomial order, so two
/// equal polynomials compare equal structurally and print byte-identically.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexLess>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const Rational& c);
  static Poly variable(std::vector<std::string> vars, std::string_view name);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;

  /// Index of a variable name; throws DomainError when unknown.
  std::size_t var_index(std::string_view name) const;

  Poly operator-() const;
  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator*(const Rational& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& other) const {
    return vars_ == other.vars_ && terms_ == other.terms_;
  }

  Poly derivative(std::string_view var) const;
  Poly derivative(std::size_t var) const;

  /// Horner-style evaluation, variable by variable.  Exact for rational
  /// points.  Throws DomainError on dimension mismatch.
  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;

  /// Indices of variables that actually occur.
  std::set<std::size_t> support() const;

  /// Canonical printing, highest graded-lex term first; parses back to an
  /// equal polynomial.
  std::string str() const;

  /// Inserts c into the term at m, dropping the term if it cancels to zero.
  void add_term(const Monomial& m, const Rational& c);

 private:
  void check_compatible(const Poly& other) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Recursive-descent parser for the polynomial grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | var | factor '^' nat | '(' expr ')'
/// Throws ParseError with the offending position, or DomainError-flavoured
/// ParseError for names outside `vars`.
Poly parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

}  // namespace lieq
