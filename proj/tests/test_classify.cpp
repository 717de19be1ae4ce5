#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieq/classify.hpp"
#include "lieq/errors.hpp"
#include "lieq/sysfile.hpp"

using namespace lieq;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> X{"x"};

VField F(const std::string& cx, const std::string& cy) {
  return VField(XY, {parse_polynomial(cx, XY), parse_polynomial(cy, XY)});
}

VField F1(const std::string& cx) { return VField(X, {parse_polynomial(cx, X)}); }

}  // namespace

TEST_CASE("completeness screening") {
  const Completeness affine = completeness_check(F("0", "1"));
  CHECK(affine.status == CompletenessStatus::Complete);

  const Completeness triangular = completeness_check(F("y^2", "0"));
  CHECK(triangular.status == CompletenessStatus::Complete);

  const Completeness blowup = completeness_check(F1("x^2"));
  CHECK(blowup.status == CompletenessStatus::LikelyIncomplete);
  REQUIRE(blowup.witness);
  CHECK((*blowup.witness)[0] == doctest::Approx(1.0));

  // x*y d/dx grows exponentially but never escapes in finite time
  const Completeness exp_growth = completeness_check(F("x*y", "0"));
  CHECK(exp_growth.status == CompletenessStatus::Unknown);
}

TEST_CASE("drift zero search") {
  const auto verified = find_drift_zero(F("y^2", "0"),
                                        std::vector<Rational>{Rational(0), Rational(0)});
  REQUIRE(verified);
  CHECK((*verified)[0] == 0);
  CHECK((*verified)[1] == 0);

  CHECK(!find_drift_zero(F1("1"), std::nullopt));

  const auto lin = find_drift_zero(F1("x - 1"), std::nullopt);
  REQUIRE(lin);
  CHECK((*lin)[0] == 1);

  // quadratic with rational roots
  const auto quad = find_drift_zero(F1("x^2 - 9/4"), std::nullopt);
  REQUIRE(quad);
  CHECK(((*quad)[0] == Rational(3) / 2 || (*quad)[0] == Rational(-3) / 2));

  // a failed candidate falls back to the search
  const auto fallback =
      find_drift_zero(F1("x - 1"), std::vector<Rational>{Rational(5)});
  REQUIRE(fallback);
  CHECK((*fallback)[0] == 1);

  // coupled system handled by the numeric path with exact certification
  const auto coupled = find_drift_zero(F("x + y - 2", "x - y"), std::nullopt);
  REQUIRE(coupled);
  CHECK((*coupled)[0] == 1);
  CHECK((*coupled)[1] == 1);
}

TEST_CASE("classification of the worked example") {
  SystemSpec s(XY, F("y^2", "0"), {F("0", "1")});
  s.candidate_equilibrium = std::vector<Rational>{Rational(0), Rational(0)};
  const ClassificationReport r = classify_system(s);
  CHECK(r.verdict == Verdict::CaseI);
  CHECK(verdict_string(r.verdict) == "Case_i_LinearOnHomogeneousSpace");
  CHECK(r.l->dim() == 4);
  CHECK(r.l0->dim() == 3);
  CHECK(r.rank_l0->rank == 2);
  CHECK(r.rank_l0->constant);
  CHECK(r.catalog->tag == CatalogTag::Heisenberg);
  CHECK(r.drift_zero_verified);
  CHECK((*r.drift_zero)[0] == 0);
  CHECK((*r.drift_zero)[1] == 0);
  CHECK(r.derivation->entries(1, 0) == 1);
}

TEST_CASE("classification of a commuting pair") {
  const ClassificationReport r = classify_system(SystemSpec(XY, F("1", "0"), {F("0", "1")}));
  CHECK(r.verdict == Verdict::CaseII);
  CHECK(r.l->dim() == 2);
  CHECK(r.l0->dim() == 1);
  CHECK(r.rank_l->rank == 2);
  CHECK(r.rank_l0->rank == 1);
}

TEST_CASE("incomplete drift is flagged, dims are still reported") {
  const ClassificationReport r = classify_system(SystemSpec(X, F1("x^2"), {F1("1")}));
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.reason == "completeness");
  CHECK(r.l->dim() == 3);
  CHECK(r.completeness[0].status == CompletenessStatus::LikelyIncomplete);
  CHECK(r.completeness[0].witness);
}

TEST_CASE("the P(y) = y^d family") {
  for (int d = 1; d <= 6; ++d) {
    SystemSpec s(XY, F("y^" + std::to_string(d), "0"), {F("0", "1")});
    const ClassificationReport r = classify_system(s);
    CHECK(r.l->dim() == d + 2);
    CHECK(r.l0->dim() == d + 1);
    CHECK(r.rank_l->rank == 2);
    CHECK(r.rank_l0->rank == 2);
    CHECK(r.rank_l0->constant);
    CHECK(r.drift_zero_verified);
    if (d == 1) {
      // dim L0 = n with a certified zero: the stronger verdict applies
      CHECK(r.verdict == Verdict::LinearOnGroupCandidate);
    } else {
      CHECK(r.verdict == Verdict::CaseI);
    }
  }
}

TEST_CASE("asserting completeness only lifts Unknown, never changes dims or ranks") {
  SystemSpec s(XY, F("x*y", "0"), {F("0", "1")});
  const ClassificationReport before = classify_system(s);
  CHECK(before.verdict == Verdict::Inconclusive);
  CHECK(before.reason == "completeness");
  CHECK(before.completeness[0].status == CompletenessStatus::Unknown);

  s.assert_complete[0] = true;
  const ClassificationReport after = classify_system(s);
  CHECK(after.completeness[0].status == CompletenessStatus::Complete);
  CHECK(after.l->dim() == before.l->dim());
  CHECK(after.l0->dim() == before.l0->dim());
  CHECK(after.rank_l->rank == before.rank_l->rank);
  CHECK(after.rank_l0->rank == before.rank_l0->rank);
  // the completeness gate is lifted; the analysis proceeds to the next one
  // (this family is rank-deficient at the origin)
  CHECK(after.reason == "transitivity");

  // a LikelyIncomplete verdict is not lifted by assertion
  SystemSpec bad(X, F1("x^2"), {F1("1")});
  bad.assert_complete[0] = true;
  CHECK(classify_system(bad).reason == "completeness");
}

TEST_CASE("closure bound yields an inconclusive report, not an exception") {
  // the worked example needs dim 4; a bound of 3 trips the closure guard
  SystemSpec s(XY, F("y^2", "0"), {F("0", "1")});
  ClassifyOptions opts;
  opts.max_dim = 3;
  const ClassificationReport r = classify_system(s, opts);
  CHECK(r.dimension_exceeded);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.reason == "dimension-exceeded");
}

TEST_CASE("rank deficit suggests an orbit restriction") {
  // both fields point along d/dx: L spans a single direction in R^2
  const ClassificationReport r = classify_system(SystemSpec(XY, F("1", "0"), {F("x", "0")}));
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.reason == "transitivity");
}

TEST_CASE("system file round trip") {
  const std::string text =
      "vars = x y\n"
      "drift = y^2, 0\n"
      "control_1 = 0, 1\n"
      "equilibrium = 0, 0\n";
  const SystemSpec s = parse_system_text(text);
  CHECK(s.vars == XY);
  CHECK(s.drift == F("y^2", "0"));
  CHECK(s.controls.size() == 1);
  REQUIRE(s.candidate_equilibrium);
  const std::string emitted = write_system_text(s);
  const SystemSpec again = parse_system_text(emitted);
  CHECK(again.drift == s.drift);
  CHECK(again.controls == s.controls);
  CHECK(again.vars == s.vars);
  CHECK(again.candidate_equilibrium == s.candidate_equilibrium);
  CHECK(write_system_text(again) == emitted);
}

TEST_CASE("system file with comments, assertions and two controls") {
  const SystemSpec s = parse_system_text(
      "# two-input example\n"
      "vars = x y\n"
      "drift = x*y, 0   # exponential growth\n"
      "control_1 = 1, 0\n"
      "control_2 = 0, 1\n"
      "assert_complete = 0\n");
  CHECK(s.controls.size() == 2);
  CHECK(s.assert_complete[0]);
  CHECK(!s.assert_complete[1]);
  const SystemSpec again = parse_system_text(write_system_text(s));
  CHECK(again.assert_complete == s.assert_complete);
}

TEST_CASE("malformed system files are rejected") {
  CHECK_THROWS_AS(parse_system_text(""), FileError);
  CHECK_THROWS_AS(parse_system_text("vars = x\n"), FileError);
  CHECK_THROWS_AS(parse_system_text("vars = x\ndrift = 1\n"), FileError);
  CHECK_THROWS_AS(parse_system_text("vars = x\ndrift = 1\ncontrol_2 = 1\n"), FileError);
  CHECK_THROWS_AS(parse_system_text("vars = x\ndrift = 1, 2\ncontrol_1 = 1\n"), FileError);
  CHECK_THROWS_AS(parse_system_text("vars = x\ndrift = q\ncontrol_1 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_system_text("bogus = 1\n"), FileError);
}
