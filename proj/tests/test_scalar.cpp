#include <catch2/catch_amalgamated.hpp>

#include "cylnogo/scalar.hpp"
#include "test_support.hpp"

using namespace cylnogo;
using testsupport::Gen;

TEST_CASE("grat_arithmetic_and_inverse") {
  GRat a(Rat(1, 2), Rat(3, 1));
  GRat b(Rat(-2, 3), Rat(1, 4));
  CHECK(a + b == GRat(Rat(-1, 6), Rat(13, 4)));
  CHECK(a * GRat::i() == GRat(Rat(-3), Rat(1, 2)));
  CHECK((a * a.inverse()) == GRat(1));
  CHECK(a.conj() == GRat(Rat(1, 2), Rat(-3)));
  CHECK((GRat::i() * GRat::i()) == GRat(-1));
  CHECK_THROWS_AS(GRat(0).inverse(), std::domain_error);
}

TEST_CASE("parse_rat_accepts_p_over_q") {
  CHECK(parse_rat("3/2") == Rat(3, 2));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(parse_rat("-31/2") == Rat(-31, 2));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/2/3"), std::invalid_argument);
}

TEST_CASE("scalar_canonical_form_drops_zero_terms") {
  Scalar a = Scalar::param(kAlpha);
  Scalar s = a + Scalar(2) - a;
  CHECK(s == Scalar(2));
  CHECK((s - Scalar(2)).is_zero());
  Scalar t = a * Scalar(0);
  CHECK(t.is_zero());
  CHECK(t.terms().empty());
}

TEST_CASE("scalar_ring_examples") {
  Scalar a = Scalar::param(kAlpha), nu = Scalar::param(kNu);
  Scalar p = (a + Scalar::i()) * (a - Scalar::i());
  CHECK(p == a * a + Scalar(1));
  CHECK((nu.pow(3) * nu.pow(2)) == nu.pow(5));
  CHECK(Scalar::xi(3) * Scalar::xi(-3) == Scalar::xi(-3) * Scalar::xi(3));
  CHECK_THROWS_AS(Scalar::xi(65), std::out_of_range);
}

TEST_CASE("scalar_conjugation_fixes_parameters") {
  Scalar s = Scalar::i() * Scalar::param(kAlpha) + Scalar(Rat(1, 2));
  CHECK(s.conj() == Scalar(Rat(1, 2)) - Scalar::i() * Scalar::param(kAlpha));
  CHECK(Scalar::param(kEta).conj() == Scalar::param(kEta));
  CHECK(Scalar::xi(5).conj() == Scalar::xi(5));
}

TEST_CASE("scalar_conjugation_is_ring_homomorphism") {
  Gen g;
  for (int trial = 0; trial < 100; ++trial) {
    Scalar x = g.scalar(), y = g.scalar();
    CHECK((x + y).conj() == x.conj() + y.conj());
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x.conj().conj() == x);
  }
}

TEST_CASE("scalar_substitute_binds_parameters") {
  Scalar b = Scalar::param(kB), c = Scalar::param(kC), nu = Scalar::param(kNu);
  Scalar s = b * nu + c;
  CHECK(s.substitute({{kB, Scalar(0)}}) == c);
  CHECK(s.substitute({{kB, Scalar(2)}, {kNu, Scalar(Rat(1, 2))}, {kC, Scalar(-1)}}) == Scalar(0));
  // symbolic substitution: c' -> alpha/2
  Scalar cp = Scalar::param(kCp);
  Scalar alpha_half = Scalar(Rat(1, 2)) * Scalar::param(kAlpha);
  CHECK(cp.substitute({{kCp, alpha_half}}) == alpha_half);
}

TEST_CASE("scalar_substitute_commutes_with_arithmetic") {
  Gen g;
  for (int trial = 0; trial < 100; ++trial) {
    Scalar x = g.scalar(), y = g.scalar();
    std::map<ParamId, Scalar> bind{{kAlpha, Scalar(g.grat())}, {kNu, g.scalar(false)}};
    CHECK((x + y).substitute(bind) == x.substitute(bind) + y.substitute(bind));
    CHECK((x * y).substitute(bind) == x.substitute(bind) * y.substitute(bind));
  }
}

TEST_CASE("scalar_affine_view_in_unknowns") {
  Scalar b = Scalar::param(kB), c = Scalar::param(kC), a = Scalar::param(kAlpha);
  Scalar s = Scalar(2) * b + a * c + Scalar(Rat(1, 3));
  std::vector<ParamId> unknowns{kB, kC};
  auto view = affine_split(s, unknowns);
  CHECK(view.constant_part == Scalar(Rat(1, 3)));
  CHECK(view.linear.at(kB) == Scalar(2));
  CHECK(view.linear.at(kC) == a);
  // quadratic in unknowns -> error
  Scalar q = b * c;
  CHECK_THROWS_AS(affine_split(q, unknowns), std::domain_error);
}

TEST_CASE("scalar_degree_and_dependency") {
  Scalar s = Scalar::param(kB).pow(2) * Scalar::param(kNu) + Scalar::param(kC);
  std::vector<ParamId> bs{kB};
  CHECK(s.degree_in(bs) == 2);
  CHECK(s.depends_on(kNu));
  CHECK(!s.depends_on(kMu));
}

TEST_CASE("scalar_printing_is_canonical") {
  CHECK(Scalar().str() == "0");
  CHECK(Scalar(Rat(-3, 2)).str() == "-3/2");
  CHECK(Scalar::i().str() == "i");
  CHECK((Scalar(1) - Scalar::i()).str() == "1 - i");
  Scalar s = Scalar(Rat(1, 2)) * Scalar::i() * Scalar::param(kAlpha).pow(2) * Scalar::xi(3);
  CHECK(s.str() == "1/2*i*alpha^2*xi[3]");
  Scalar t = Scalar(1) - Scalar(Rat(1, 2)) * Scalar::param(kAlpha);
  CHECK(t.str() == "1 - 1/2*alpha");
}
