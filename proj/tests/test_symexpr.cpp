#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieq/errors.hpp"
#include "lieq/poly.hpp"
#include "lieq/vfield.hpp"

#include <random>

using namespace lieq;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

Poly P(const std::string& s, const std::vector<std::string>& vars = XY) {
  return parse_polynomial(s, vars);
}

Poly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<unsigned> expo(0, static_cast<unsigned>(max_deg));
  Poly p(vars);
  for (int t = 0; t < 5; ++t) {
    Monomial m(vars.size(), 0);
    unsigned total = 0;
    for (auto& e : m) {
      e = expo(rng);
      total += e;
      if (total > static_cast<unsigned>(max_deg)) e = 0;
    }
    p.add_term(m, Rational(coef(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("3")) == "3");
  CHECK(to_string(parse_rational("-2/7")) == "-2/7");
  CHECK(to_string(parse_rational("+5")) == "5");
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK(rational_from_double(0.5) == Rational(1) / 2);
  CHECK(rational_from_double(1.0 / 3.0) == Rational(1) / 3);
  CHECK(rational_from_double(-0.25, 100) == Rational(-1) / 4);
}

TEST_CASE("polynomial parsing") {
  CHECK(P("y^2") == Poly::variable(XY, "y") * Poly::variable(XY, "y"));
  CHECK(P("0").is_zero());
  CHECK(P("(x + y)^2") == P("x^2 + 2*x*y + y^2"));
  CHECK(P("3/2*x - 1/2*x") == P("x"));
  CHECK(P("-x^2") == -P("x^2"));
  CHECK_THROWS_AS(P("x + "), ParseError);
  CHECK_THROWS_AS(P("q"), ParseError);
  CHECK_THROWS_AS(P("x^y"), ParseError);
  CHECK_THROWS_AS(P("(x"), ParseError);
  // offending position is carried along
  try {
    P("x + q");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("degree, derivative, evaluation") {
  CHECK(P("y^2").degree() == 2);
  CHECK(P("0").degree() == -1);
  CHECK(P("y^2").derivative("y") == P("2*y"));
  CHECK(P("y^2").derivative("x").is_zero());
  CHECK(P("y^3", XY).derivative("y") == P("3*y^2"));
  CHECK(P("x^2*y + 1/3").evaluate({Rational(2), Rational(3)}) == Rational(37) / 3);
  CHECK(P("x*y").evaluate(std::vector<double>{0.5, 4.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(P("x").evaluate(std::vector<Rational>{Rational(1)}), DomainError);
}

TEST_CASE("printing round-trips and is canonical") {
  for (const char* s : {"y^2", "x^2 + 2*x*y + y^2", "-x + 1/2", "0", "3/2*x^2*y"}) {
    const Poly p = P(s);
    CHECK(parse_polynomial(p.str(), XY) == p);
  }
  CHECK(P("y^2 + x^2").str() == "x^2 + y^2");  // graded-lex, highest first
  CHECK(P("1 + x").str() == "x + 1");
  CHECK((P("x") * Rational(-1)).str() == "-x");
}

TEST_CASE("ring axioms and the product rule hold exactly on random polynomials") {
  std::mt19937_64 rng(20240811);
  for (int it = 0; it < 40; ++it) {
    const Poly a = random_poly(rng, XYZ, 3);
    const Poly b = random_poly(rng, XYZ, 3);
    const Poly c = random_poly(rng, XYZ, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    for (std::size_t v = 0; v < 3; ++v)
      CHECK((a * b).derivative(v) == a * b.derivative(v) + b * a.derivative(v));
    CHECK(parse_polynomial(a.str(), XYZ) == a);
  }
}

TEST_CASE("vector field construction and arithmetic") {
  const VField f(XY, {P("y^2"), P("0")});
  CHECK(f.degree() == 2);
  CHECK(!f.is_zero());
  CHECK(VField::zero(XY).is_zero());
  CHECK(f + VField::zero(XY) == f);
  CHECK((f - f).is_zero());
  CHECK(f.str() == "y^2 ∂/∂x");
  const VField g(XY, {P("0"), P("1")});
  CHECK(g.str() == "∂/∂y");
  CHECK((f + g).str() == "y^2 ∂/∂x + ∂/∂y");
  const auto v = f.evaluate(std::vector<Rational>{Rational(1), Rational(3)});
  CHECK(v[0] == 9);
  CHECK(v[1] == 0);
  CHECK_THROWS_AS(VField(XY, {P("x")}), DomainError);
}

TEST_CASE("bracket table of the worked example") {
  const VField f(XY, {P("y^2"), P("0")});
  const VField g1(XY, {P("0"), P("1")});
  const VField g2 = lie_bracket(g1, f);
  CHECK(g2 == VField(XY, {P("2*y"), P("0")}));
  const VField g3 = lie_bracket(g1, g2);
  CHECK(g3 == VField(XY, {P("2"), P("0")}));
  CHECK(lie_bracket(g2, g3).is_zero());
  CHECK(lie_bracket(f, g2).is_zero());
  CHECK(lie_bracket(f, g3).is_zero());
}

TEST_CASE("antisymmetry and Jacobi hold exactly on random fields") {
  std::mt19937_64 rng(7);
  auto random_field = [&](const std::vector<std::string>& vars) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < vars.size(); ++i) comps.push_back(random_poly(rng, vars, 3));
    return VField(vars, std::move(comps));
  };
  for (int it = 0; it < 25; ++it) {
    const VField x = random_field(XYZ);
    const VField y = random_field(XYZ);
    const VField z = random_field(XYZ);
    CHECK(lie_bracket(x, y) == -lie_bracket(y, x));
    const VField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                       lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("bracket is bilinear") {
  const VField f(XY, {P("y^2"), P("x")});
  const VField g(XY, {P("x*y"), P("1")});
  const VField h(XY, {P("y"), P("x^2")});
  CHECK(lie_bracket(f + g, h) == lie_bracket(f, h) + lie_bracket(g, h));
  CHECK(lie_bracket(f * Rational(3), g) == lie_bracket(f, g) * Rational(3));
}
