#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "cylnogo/subalgebra.hpp"

using namespace cylnogo;

namespace {

ClassicalElement mono(int r, int m) { return ClassicalElement::monomial(r, m); }

ClassicalElement g_of(const GRat& alpha, int a) {
  return mono(2, a) + (Scalar(2) * Scalar(alpha)) * mono(1, a);
}

ClassicalElement w_of(const GRat& alpha, int m) {
  const Scalar al(alpha);
  return mono(3, m) + (Scalar(3) * al) * mono(2, m) +
         (Scalar(2) * al * al) * mono(1, m);
}

const GRat kAlphas[] = {GRat(1, 3), GRat(1), GRat(-2)};

}  // namespace

TEST_CASE("cutoff_box_membership") {
  const Cutoff box{2, 3};
  CHECK(box.contains(0, -3));
  CHECK(box.contains(2, 3));
  CHECK_FALSE(box.contains(3, 0));
  CHECK_FALSE(box.contains(0, 4));
  CHECK_FALSE(box.contains(mono(1, 2) + mono(2, 4)));
  CHECK(box.size() == 21);
}

TEST_CASE("echelon_basis_insert_reduce_member") {
  FilteredBasis basis(Cutoff{2, 2});
  CHECK(basis.insert(mono(1, 0) + mono(0, 1)));
  CHECK(basis.insert(mono(1, 0) - mono(0, 1)));
  CHECK(basis.dim() == 2);
  SECTION("dependent vectors are recognized") {
    CHECK_FALSE(basis.insert(Scalar(5) * mono(1, 0)));
    CHECK(basis.dim() == 2);
  }
  SECTION("reduced echelon invariants") {
    const auto pivots = basis.pivots();
    REQUIRE(pivots.size() == 2);
    CHECK(pivots[0] == CMono{0, 1});
    CHECK(pivots[1] == CMono{1, 0});
    // Each pivot appears in its own vector only, with coefficient 1.
    for (int i = 0; i < basis.dim(); ++i)
      for (int j = 0; j < basis.dim(); ++j)
        CHECK(basis.vectors()[i].coeff(pivots[j].r, pivots[j].m) ==
              (i == j ? Scalar(1) : Scalar()));
  }
  SECTION("membership with certificate") {
    const ClassicalElement f = Scalar(3) * mono(1, 0) + Scalar(7) * mono(0, 1);
    auto res = basis.member(f);
    REQUIRE(res.certified());
    ClassicalElement rebuilt;
    for (const auto& [idx, c] : res.combination)
      rebuilt += Scalar(c) * basis.vectors()[idx];
    CHECK(rebuilt == f);
    CHECK_FALSE(basis.member(mono(2, 0)).certified());
    CHECK_FALSE(basis.member(mono(0, 1) + mono(2, 2)).certified());
  }
  SECTION("out-of-box reports not found rather than truncating") {
    CHECK_FALSE(basis.member(mono(0, 1) + mono(0, 3)).certified());
  }
  SECTION("parameter coefficients are rejected") {
    CHECK_THROWS_AS(basis.insert(Scalar::param(kAlpha) * mono(0, 0)),
                    std::domain_error);
    CHECK_THROWS_AS(basis.member(Scalar::param(kB) * mono(1, 0)),
                    std::domain_error);
  }
  SECTION("insert outside the box is an error") {
    CHECK_THROWS_AS(basis.insert(mono(2, -3)), std::invalid_argument);
  }
}

TEST_CASE("closure_of_the_basic_set") {
  SECTION("bracket closure adds nothing new") {
    auto b = closure(preset_B(), Cutoff{2, 3});
    CHECK(b.dim() == 4);
    CHECK(b.member(ClassicalElement::ell()).certified());
    CHECK(b.member(ClassicalElement::sin_theta()).certified());
    CHECK_FALSE(b.member(mono(0, 2)).certified());
    CHECK_FALSE(b.member(mono(1, 1)).certified());
  }
  SECTION("adding products fills the affine-in-l window") {
    auto b = closure(preset_B(), Cutoff{1, 3}, ClosureMode::bracket_and_product);
    CHECK(b.dim() == 14);
    for (int m = -3; m <= 3; ++m) {
      CHECK(b.member(mono(0, m)).certified());
      CHECK(b.member(mono(1, m)).certified());
    }
  }
}

TEST_CASE("shifted_family_closure_structure") {
  for (const GRat& alpha : kAlphas) {
    auto basis = closure(preset_walpha(alpha, 5), Cutoff{3, 5});
    INFO("alpha = " << Scalar(alpha).str());
    CHECK(basis.dim() == 23);
    // Generators and their brackets are members.
    CHECK(basis.member(ClassicalElement::one()).certified());
    CHECK(basis.member(ClassicalElement::ell()).certified());
    for (int a : {-5, -3, -1, 1, 3, 5})
      CHECK(basis.member(g_of(alpha, a)).certified());
    for (int m : {-4, -2, 0, 2, 4})
      CHECK(basis.member(w_of(alpha, m)).certified());
    for (int m : {-4, -2, 2, 4})
      CHECK(basis.member(mono(1, m) + Scalar(alpha) * mono(0, m)).certified());
    for (int m : {-5, -3, -1, 1, 3, 5})
      CHECK(basis.member(mono(0, m)).certified());
    // Even harmonics never appear on their own, only inside the tied
    // combinations above.
    for (int m : {-4, -2, 2, 4}) {
      CHECK_FALSE(basis.member(mono(0, m)).certified());
      CHECK_FALSE(basis.member(mono(1, m)).certified());
    }
  }
}

TEST_CASE("closure_discards_whole_results_outside_the_box") {
  SECTION("partially escaping brackets are dropped, not truncated") {
    // {e^1_1 + e^1_5, e^0_1} = i e^0_2 + i e^0_6; the harmonic-6 term leaves
    // the window, so the harmonic-2 part must not appear either.
    const std::vector<ClassicalElement> gens = {mono(1, 1) + mono(1, 5),
                                                mono(0, 1)};
    auto basis = closure(gens, Cutoff{1, 5});
    CHECK(basis.dim() == 2);
    CHECK_FALSE(basis.member(mono(0, 2)).certified());
  }
  SECTION("in-box brackets still land") {
    const GRat alpha(1);
    auto basis = closure(preset_walpha(alpha, 1), Cutoff{3, 1});
    CHECK(basis.member(w_of(alpha, 0)).certified());
    CHECK_FALSE(basis.member(mono(1, 1)).certified());
  }
}

TEST_CASE("affine_window_plus_quadratic_fills_the_box") {
  auto gens = preset_B();
  gens.push_back(ClassicalElement::ell().pow(2));
  auto basis = closure(gens, Cutoff{3, 5});
  CHECK(basis.dim() == Cutoff{3, 5}.size());
  CHECK(basis.dim() == 44);
}

TEST_CASE("affine_window_plus_any_higher_monomial_fills_the_box") {
  for (const ClassicalElement& p : {mono(2, 0), mono(2, 1), mono(3, 2)}) {
    std::vector<ClassicalElement> gens;
    for (int m = -4; m <= 4; ++m) {
      gens.push_back(mono(0, m));
      gens.push_back(mono(1, m));
    }
    gens.push_back(p);
    INFO("adjoined " << p.str());
    CHECK(closure(gens, Cutoff{3, 4}).dim() == 36);
  }
}

TEST_CASE("closure_grows_monotonically_with_the_box") {
  const GRat alpha(1, 3);
  const auto gens = preset_walpha(alpha, 3);
  auto small = closure(gens, Cutoff{3, 3});
  auto large = closure(gens, Cutoff{3, 5});
  CHECK(small.dim() <= large.dim());
  for (const auto& v : small.vectors()) CHECK(large.member(v).certified());
}

TEST_CASE("ladder_reachability_between_harmonics") {
  for (int r = 0; r <= 3; ++r) {
    auto rep = irreducibility_probe(r, 1, 6);
    INFO("degree " << r);
    CHECK(rep.all_reached);
    CHECK_FALSE(rep.degenerate_seed);
    CHECK(rep.reached.size() == 13);
  }
  SECTION("blocked single steps are bypassed through other harmonics") {
    // From m = 2 at degree 1 the step k = 2 is annihilated, yet 4 is reached.
    auto rep = irreducibility_probe(1, 2, 4);
    CHECK(ClassicalElement::monomial(1, 2).ladder(2).is_zero());
    CHECK(rep.all_reached);
  }
  SECTION("constant seed at degree zero reaches nothing") {
    auto rep = irreducibility_probe(0, 0, 6);
    CHECK(rep.degenerate_seed);
    CHECK_FALSE(rep.all_reached);
    CHECK(rep.reached == std::vector<int>{0});
  }
  SECTION("seed outside the window is rejected") {
    CHECK_THROWS_AS(irreducibility_probe(1, 7, 6), std::invalid_argument);
  }
}

TEST_CASE("leading_term_scan_over_the_shifted_family") {
  for (const GRat& alpha : kAlphas) {
    auto basis = closure(preset_walpha(alpha, 5), Cutoff{3, 5});
    auto rep = leading_term_scan(basis, alpha);
    INFO("alpha = " << Scalar(alpha).str());
    CHECK(rep.entries.size() == 22);
    CHECK(rep.found_count == 22);
    CHECK(rep.all_found);
    for (const auto& e : rep.entries) CHECK(((e.r + e.m) % 2 + 2) % 2 == 1);
  }
  SECTION("slots are genuinely absent from a smaller span") {
    // The basic set alone has no degree-2 vectors, so no (2, N) slot works.
    auto basis = closure(preset_B(), Cutoff{3, 5});
    auto rep = leading_term_scan(basis, GRat(1));
    CHECK_FALSE(rep.all_found);
    for (const auto& e : rep.entries)
      if (e.r >= 2) CHECK_FALSE(e.found);
  }
}
