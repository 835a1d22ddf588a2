#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <vector>

#include "cylnogo/operator.hpp"
#include "test_support.hpp"

using namespace cylnogo;
using testsupport::Gen;

namespace {

using OE = OperatorElement;

Scalar nu() { return Scalar::param(kNu); }

OE sin_op() {
  // (E - E^-1) / 2i
  return Scalar(GRat(Rat(0), Rat(-1, 2))) * OE::E(1) -
         Scalar(GRat(Rat(0), Rat(-1, 2))) * OE::E(-1);
}
OE cos_op() { return Scalar(Rat(1, 2)) * OE::E(1) + Scalar(Rat(1, 2)) * OE::E(-1); }

// ---- Brute-force oracle for diagonal matrix elements ------------------
// A completely separate evaluator that knows only the atomic generator
// actions E^m|n> = |n+m>, D|n> = n|n>, Xi|n> = xi[n]|n>, applied to fully
// expanded atomic words. Shares no arithmetic with OperatorElement.
enum class Atom { E1, Em1, D, Xi };

struct AtomicTerm {
  GRat coeff;
  std::vector<Atom> word;  // applied right to left
};

using AtomicSum = std::vector<AtomicTerm>;

AtomicSum atomic_mul(const AtomicSum& a, const AtomicSum& b) {
  AtomicSum out;
  for (const auto& ta : a)
    for (const auto& tb : b) {
      AtomicTerm t{ta.coeff * tb.coeff, ta.word};
      t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
      out.push_back(t);
    }
  return out;
}

AtomicSum atomic_scale(const GRat& c, AtomicSum s) {
  for (auto& t : s) t.coeff = c * t.coeff;
  return s;
}

AtomicSum atomic_add(AtomicSum a, const AtomicSum& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Scalar atomic_diagonal(const AtomicSum& sum, long long n) {
  Scalar total;
  for (const auto& t : sum) {
    long long idx = n;
    Scalar coeff{t.coeff};
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      switch (*it) {
        case Atom::E1: idx += 1; break;
        case Atom::Em1: idx -= 1; break;
        case Atom::D: coeff *= Scalar(Rat(idx)); break;
        case Atom::Xi: coeff *= Scalar::xi(static_cast<int>(idx)); break;
      }
    }
    if (idx == n) total += coeff;
  }
  return total;
}

}  // namespace

TEST_CASE("op_product_normal_orders_d_past_e") {
  // D E = E (D + 1)
  CHECK(OE::D() * OE::E(1) == OE::E(1) * OE::D() + OE::E(1));
  // E^2 D^2 * E^3 D = E^5 (D+3)^2 D = E^5 (D^3 + 6 D^2 + 9 D)
  OE lhs = OE::word(2, 0, 2) * OE::word(3, 0, 1);
  OE rhs = OE::word(5, 0, 3) + Scalar(6) * OE::word(5, 0, 2) + Scalar(9) * OE::word(5, 0, 1);
  CHECK(lhs == rhs);
}

TEST_CASE("op_product_xi_rules") {
  // Xi commutes with D and scalars
  CHECK(OE::Xi() * OE::D() == OE::D() * OE::Xi());
  CHECK(OE::Xi() * (Scalar(3) * OE::identity()) == Scalar(3) * OE::Xi());
  // E * Xi stays normal ordered; Xi * E is not symbolically representable
  CHECK(OE::E(1) * OE::Xi() == OE::word(1, 1, 0));
  CHECK_THROWS_AS(OE::Xi() * OE::E(1), XiOrderError);
  CHECK_THROWS_AS((OE::E(2) * OE::Xi()) * OE::E(-1), XiOrderError);
}

TEST_CASE("op_product_properties") {
  Gen g;
  for (int trial = 0; trial < 60; ++trial) {
    OE a = g.op(), b = g.op(), c = g.op();
    CHECK((a * b) * c == a * (b * c));
    // commutator Jacobi
    OE jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
             commutator(c, commutator(a, b));
    CHECK(jac.is_zero());
    // bilinearity spot check
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("op_basic_commutators") {
  OE S = sin_op(), C = cos_op();
  // [D, E^m] = m E^m
  CHECK(commutator(OE::D(), OE::E(3)) == Scalar(3) * OE::E(3));
  // [D, S] = -iC, [D, C] = iS
  CHECK(commutator(OE::D(), S) == -Scalar::i() * C);
  CHECK(commutator(OE::D(), C) == Scalar::i() * S);
  // S^2 + C^2 = I
  CHECK(S * S + C * C == OE::identity());
}

TEST_CASE("op_square_double_commutator_is_minus_two") {
  // [[L^2, S], S] + [[L^2, C], C] = -2 I with L = D + nu, nu formal
  OE L = OE::D() + OE(nu());
  OE L2 = L * L;
  OE S = sin_op(), C = cos_op();
  OE lhs = commutator(commutator(L2, S), S) + commutator(commutator(L2, C), C);
  CHECK(lhs == Scalar(-2) * OE::identity());
}

TEST_CASE("op_adjoint_examples") {
  CHECK(OE::E(1).adjoint() == OE::E(-1));
  CHECK(OE::D().adjoint() == OE::D());
  CHECK(OE::Xi().adjoint() == OE::Xi());
  // (E D)^dagger = D E^-1 = E^-1 (D - 1)
  CHECK((OE::E(1) * OE::D()).adjoint() == OE::E(-1) * (OE::D() - OE::identity()));
  // coefficients conjugate
  OE a = Scalar(GRat(Rat(1), Rat(1))) * OE::E(2);
  CHECK(a.adjoint() == Scalar(GRat(Rat(1), Rat(-1))) * OE::E(-2));
  // Xi-words with shifts have no symbolic adjoint
  CHECK_THROWS_AS((OE::E(1) * OE::Xi()).adjoint(), XiOrderError);
}

TEST_CASE("op_adjoint_properties_xi_free") {
  Gen g;
  for (int trial = 0; trial < 60; ++trial) {
    OE a = g.op(), b = g.op();
    CHECK(a.adjoint().adjoint() == a);
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
    CHECK((a + b).adjoint() == a.adjoint() + b.adjoint());
  }
}

TEST_CASE("op_apply_ket_actions") {
  // E^2 Xi D^2 |3> = 9 xi[3] |5>
  OE w = OE::word(2, 1, 2);
  KetCombination k = apply_ket(w, 3);
  CHECK(k == KetCombination::ket(5, Scalar(9) * Scalar::xi(3)));
  // (D + nu)|n> = (n + nu)|n>
  OE L = OE::D() + OE(nu());
  CHECK(apply_ket(L, -2) == KetCombination::ket(-2, nu() - Scalar(2)));
  // xi index bound is enforced at application time
  CHECK_THROWS_AS(apply_ket(OE::Xi(), 65), XiIndexError);
  CHECK_NOTHROW(apply_ket(OE::Xi(), 64));
}

TEST_CASE("op_product_consistent_with_ket_composition") {
  Gen g;
  for (int trial = 0; trial < 60; ++trial) {
    OE a = g.op(), b = g.op();
    long long n = g.irange(-5, 5);
    CHECK(apply_ket(a * b, n) == apply_ket(a, apply_ket(b, n)));
  }
}

TEST_CASE("op_matrix_element_adjoint_duality") {
  Gen g;
  for (int trial = 0; trial < 60; ++trial) {
    OE a = g.op();
    long long m = g.irange(-4, 4), n = g.irange(-4, 4);
    CHECK(matrix_element(a, m, n) == matrix_element(a.adjoint(), n, m).conj());
  }
}

TEST_CASE("op_chain_application_handles_xi_words") {
  // Xi * E(1) as a chain acting on |0>: E shifts first, Xi reads xi[1].
  std::array<OE, 2> chain{OE::Xi(), OE::E(1)};
  CHECK(apply_chain(chain, 0) == KetCombination::ket(1, Scalar::xi(1)));
}

TEST_CASE("op_diagonal_averaging_recursion") {
  // K = [[Xi, S], S] + [[Xi, C], C]; engine computes <n|K|n> via chains.
  OE S = sin_op(), C = cos_op(), Xi = OE::Xi();
  auto diag = [&](long long n) {
    Scalar total;
    for (const OE& A : {S, C}) {
      // [[Xi, A], A] = Xi A A - 2 A Xi A + A A Xi
      std::array<OE, 3> c1{Xi, A, A}, c2{A, Xi, A}, c3{A, A, Xi};
      total += apply_chain(c1, n).at(n);
      total -= Scalar(2) * apply_chain(c2, n).at(n);
      total += apply_chain(c3, n).at(n);
    }
    return total;
  };
  // Frozen expectation: <n|K|n> = 2 xi[n] - xi[n+1] - xi[n-1] (multiple 1).
  for (long long n = -5; n <= 5; ++n) {
    Scalar expected = Scalar(2) * Scalar::xi(static_cast<int>(n)) -
                      Scalar::xi(static_cast<int>(n) + 1) - Scalar::xi(static_cast<int>(n) - 1);
    CHECK(diag(n) == expected);
  }

  // Cross-check against the independent atomic-word oracle.
  GRat mihalf(Rat(0), Rat(-1, 2)), ihalf(Rat(0), Rat(1, 2)), half(Rat(1, 2));
  AtomicSum s_sum{{mihalf, {Atom::E1}}, {ihalf, {Atom::Em1}}};
  AtomicSum c_sum{{half, {Atom::E1}}, {half, {Atom::Em1}}};
  AtomicSum xi_sum{{GRat(1), {Atom::Xi}}};
  AtomicSum k_sum;
  for (const AtomicSum& A : {s_sum, c_sum}) {
    AtomicSum term = atomic_mul(xi_sum, atomic_mul(A, A));
    term = atomic_add(term, atomic_scale(GRat(-2), atomic_mul(A, atomic_mul(xi_sum, A))));
    term = atomic_add(term, atomic_mul(A, atomic_mul(A, xi_sum)));
    k_sum = atomic_add(k_sum, term);
  }
  for (long long n = -5; n <= 5; ++n) CHECK(diag(n) == atomic_diagonal(k_sum, n));
}

TEST_CASE("op_printing_is_canonical") {
  CHECK(OE().str() == "0");
  CHECK(OE::identity().str() == "I");
  CHECK(OE::E(-2).str() == "E[-2]");
  CHECK((OE::word(1, 1, 2)).str() == "E[1]*Xi*D^2");
  OE a = OE::D() + OE(nu());
  CHECK(a.str() == "nu + D");
}
