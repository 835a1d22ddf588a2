#include <catch2/catch_amalgamated.hpp>

#include "cylnogo/solve.hpp"

using namespace cylnogo;

namespace {
Scalar b() { return Scalar::param(kB); }
Scalar bp() { return Scalar::param(kBp); }
Scalar cp() { return Scalar::param(kCp); }
Scalar alpha() { return Scalar::param(kAlpha); }
}  // namespace

TEST_CASE("solve_unique_single_equation") {
  ConstraintSet cs;
  cs.add("I", Scalar(Rat(-1, 2)) * b());
  std::vector<ParamId> unknowns{kB};
  auto res = solve_linear(cs, unknowns);
  REQUIRE(res.kind == SolveResult::Kind::unique);
  CHECK(res.assignment.at(kB) == Scalar(0));
}

TEST_CASE("solve_chained_substitution_with_parameter_coefficients") {
  // (2/3) bp - 1/3 = 0;  cp - alpha (1 + bp)/3 = 0  ->  bp = 1/2, cp = alpha/2
  ConstraintSet cs;
  cs.add("D", Scalar(Rat(2, 3)) * bp() - Scalar(Rat(1, 3)));
  cs.add("I", cp() - Scalar(Rat(1, 3)) * alpha() * (Scalar(1) + bp()));
  std::vector<ParamId> unknowns{kBp, kCp};
  auto res = solve_linear(cs, unknowns);
  REQUIRE(res.kind == SolveResult::Kind::unique);
  CHECK(res.assignment.at(kBp) == Scalar(Rat(1, 2)));
  CHECK(res.assignment.at(kCp) == Scalar(Rat(1, 2)) * alpha());
}

TEST_CASE("solve_empty_system_is_underdetermined") {
  ConstraintSet cs;
  std::vector<ParamId> unknowns{kB, kC};
  auto res = solve_linear(cs, unknowns);
  REQUIRE(res.kind == SolveResult::Kind::underdetermined);
  CHECK(res.free_params == std::vector<ParamId>{kB, kC});
}

TEST_CASE("solve_inconsistent_names_the_site") {
  ConstraintSet cs;
  cs.add("E[1]", Scalar(-1) * Scalar::i());
  cs.add("E[-1]", Scalar::i());
  auto res = solve_linear(cs, {});
  REQUIRE(res.kind == SolveResult::Kind::inconsistent);
  CHECK(res.certificate.site == "E[1]");
  CHECK(res.certificate.lhs == Scalar(-1) * Scalar::i());
}

TEST_CASE("solve_rejects_nonlinear_systems") {
  ConstraintSet cs;
  cs.add("I", b() * b() - Scalar(1));
  std::vector<ParamId> unknowns{kB};
  CHECK_THROWS_AS(solve_linear(cs, unknowns), std::domain_error);
}

TEST_CASE("solve_rejects_parameter_laden_pivots") {
  // alpha*mu - 1 = 0 with unknown mu: no constant pivot, refuse to divide
  ConstraintSet cs;
  cs.add("I", alpha() * Scalar::param(kMu) - Scalar(1));
  std::vector<ParamId> unknowns{kMu};
  CHECK_THROWS_AS(solve_linear(cs, unknowns), std::domain_error);
}

TEST_CASE("solve_detects_contradiction_after_elimination") {
  // b = 1 and b = 2 cannot both hold
  ConstraintSet cs;
  cs.add("w1", b() - Scalar(1));
  cs.add("w2", b() - Scalar(2));
  std::vector<ParamId> unknowns{kB};
  auto res = solve_linear(cs, unknowns);
  REQUIRE(res.kind == SolveResult::Kind::inconsistent);
  CHECK(res.certificate.site == "w2");
  CHECK(res.certificate.lhs == Scalar(-1));
}

TEST_CASE("constraints_from_operator_name_word_sites") {
  OperatorElement r = Scalar(2) * OperatorElement::E(1) - OperatorElement::word(0, 0, 2) +
                      Scalar(5) * OperatorElement::identity();
  auto cs = ConstraintSet::from_operator(r);
  REQUIRE(cs.eqs.size() == 3);
  CHECK(cs.eqs[0].site == "I");
  CHECK(cs.eqs[0].lhs == Scalar(5));
  CHECK(cs.eqs[1].site == "D^2");
  CHECK(cs.eqs[1].lhs == Scalar(-1));
  CHECK(cs.eqs[2].site == "E[1]");
  CHECK(cs.eqs[2].lhs == Scalar(2));
}
