#include "lieq/poly.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <cctype>

namespace lieq {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Monomial(p.vars_.size(), 0), c);
  return p;
}

Poly Poly::variable(std::vector<std::string> vars, std::string_view name) {
  Poly p(std::move(vars));
  Monomial m(p.vars_.size(), 0);
  m[p.var_index(name)] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

std::size_t Poly::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw DomainError("unknown variable '" + std::string(name) + "'");
}

void Poly::check_compatible(const Poly& other) const {
  if (vars_ != other.vars_)
    throw DomainError("polynomials live over different variable lists");
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& other) const {
  check_compatible(other);
  Poly r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& other) const {
  check_compatible(other);
  Poly r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& other) const {
  check_compatible(other);
  Poly r(vars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      Monomial m(vars_.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(vars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

Poly Poly::derivative(std::string_view var) const { return derivative(var_index(var)); }

Poly Poly::derivative(std::size_t var) const {
  if (var >= vars_.size()) throw DomainError("variable index out of range");
  Poly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(m[var]));
  }
  return r;
}

namespace {

// Horner evaluation over one variable at a time: group the terms by the
// exponent of variable `var`, recurse on the remaining variables, then fold
// with Horner steps over the exponent gaps.
template <typename T>
T from_rational(const Rational& c);
template <>
Rational from_rational<Rational>(const Rational& c) { return c; }
template <>
double from_rational<double>(const Rational& c) { return to_double(c); }

template <typename T>
T pow_scalar(const T& x, unsigned e) {
  T r(1);
  T b = x;
  while (e > 0) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

template <typename T>
T eval_horner(const std::vector<std::pair<Monomial, Rational>>& terms,
              const std::vector<T>& point, std::size_t var) {
  if (terms.empty()) return T(0);
  if (var == point.size()) {
    T acc(0);
    for (const auto& [m, c] : terms) acc = acc + from_rational<T>(c);
    return acc;
  }
  // exponent -> sub-terms, descending exponent
  std::map<unsigned, std::vector<std::pair<Monomial, Rational>>, std::greater<>> groups;
  for (const auto& [m, c] : terms) groups[m[var]].emplace_back(m, c);

  T acc(0);
  unsigned prev_exp = 0;
  bool first = true;
  for (const auto& [exp, sub] : groups) {
    if (first) {
      acc = eval_horner(sub, point, var + 1);
      first = false;
    } else {
      acc = acc * pow_scalar(point[var], prev_exp - exp) + eval_horner(sub, point, var + 1);
    }
    prev_exp = exp;
  }
  return acc * pow_scalar(point[var], prev_exp);
}

}  // namespace

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw DomainError("point dimension does not match variable count");
  std::vector<std::pair<Monomial, Rational>> terms(terms_.begin(), terms_.end());
  return eval_horner<Rational>(terms, point, 0);
}

double Poly::evaluate(const std::vector<double>& point) const {
  if (point.size() != vars_.size())
    throw DomainError("point dimension does not match variable count");
  std::vector<std::pair<Monomial, Rational>> terms(terms_.begin(), terms_.end());
  return eval_horner<double>(terms, point, 0);
}

std::set<std::size_t> Poly::support() const {
  std::set<std::size_t> s;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) s.insert(i);
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest graded-lex term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string vars_part;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!vars_part.empty()) vars_part += "*";
      vars_part += vars_[i];
      if (m[i] > 1) vars_part += "^" + std::to_string(m[i]);
    }
    if (vars_part.empty()) {
      out += to_string(a);
    } else if (a == 1) {
      out += vars_part;
    } else {
      out += to_string(a) + "*" + vars_part;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Poly expr() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    while (eat('^')) {
      skip_ws();
      const std::size_t start = pos_;
      unsigned e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<unsigned>(text_[pos_] - '0');
        ++pos_;
      }
      if (pos_ == start) fail("expected natural-number exponent after '^'");
      base = base.pow(e);
    }
    return base;
  }

  Poly atom() {
    const char c = peek();
    if (c == '(') {
      eat('(');
      Poly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("expected rational literal, variable or '('");
  }

  Poly number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    BigInt num(std::string(text_.substr(start, pos_ - start)));
    BigInt den = 1;
    // a '/' directly after the integer is a rational literal
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      std::size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == dstart) fail("expected denominator after '/'");
      den = BigInt(std::string(text_.substr(dstart, pos_ - dstart)));
      if (den == 0) fail("zero denominator");
    } else {
      pos_ = save;
    }
    return Poly::constant(vars_, Rational(num, den));
  }

  Poly name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    for (const auto& v : vars_)
      if (v == id) return Poly::variable(vars_, id);
    pos_ = start;
    fail("unknown variable '" + id + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

}  // namespace lieq
