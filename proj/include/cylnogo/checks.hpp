#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylnogo/manifest.hpp"
#include "cylnogo/quantize.hpp"
#include "cylnogo/subalgebra.hpp"

namespace cylnogo {

enum class CheckStatus { pass, inconsistent_as_expected, fail };

inline const char* check_status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::inconsistent_as_expected: return "inconsistent-as-expected";
    case CheckStatus::fail: return "fail";
  }
  return "?";
}

struct CheckOutcome {
  CheckStatus status = CheckStatus::fail;
  std::string witness;
};

struct CheckDef {
  std::string name;
  std::string anchor;       // stable slug naming the verified statement
  CheckStatus expected;     // status a faithful engine must reach
  std::function<CheckOutcome(const nlohmann::json& bindings)> run;
};

struct CheckResult {
  std::string name;
  std::string status;
  std::string witness;
  std::string paper_anchor;
  std::string expected;
  long long elapsed_ms = 0;

  bool as_expected() const { return status == expected; }
};

namespace detail_checks {

// Collects requirement failures; a check succeeds only if none accumulate.
class Audit {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) problems_.push_back(what);
  }
  bool ok() const { return problems_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& p : problems_) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

 private:
  std::vector<std::string> problems_;
};

inline CheckOutcome done(const Audit& a, CheckStatus good, std::string witness) {
  if (a.ok()) return {good, std::move(witness)};
  return {CheckStatus::fail, a.summary()};
}

inline ClassicalElement ell2() { return ClassicalElement::ell().pow(2); }

inline ClassicalElement double_bracket_sum(const ClassicalElement& f) {
  const ClassicalElement sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  return poisson_bracket(poisson_bracket(f, sn), sn) +
         poisson_bracket(poisson_bracket(f, cs), cs);
}

inline std::vector<GRat> manifest_alphas(const nlohmann::json& b) {
  std::vector<GRat> out;
  for (const auto& s : b.at("alphas")) out.emplace_back(parse_rat(s.get<std::string>()));
  return out;
}

// ---------------------------------------------------------------------------
// Check bodies.
// ---------------------------------------------------------------------------

inline CheckOutcome check_iden(const nlohmann::json&) {
  Audit a;
  a.require(double_bracket_sum(ell2()) == ClassicalElement(2),
            "double bracket of l^2 against sin and cos is not the constant 2");
  return done(a, CheckStatus::pass,
              "PB(PB(l^2,sin),sin) + PB(PB(l^2,cos),cos) = 2");
}

inline CheckOutcome check_newiden(const nlohmann::json&) {
  Audit a;
  const Scalar al = Scalar::param(kAlpha);
  const ClassicalElement v =
      ClassicalElement::ell().pow(3) + (Scalar(3) * al) * ell2();
  const ClassicalElement want =
      Scalar(6) * ClassicalElement::ell() + ClassicalElement(Scalar(6) * al);
  a.require(double_bracket_sum(v) == want,
            "double bracket of the cubic family is not 6*l + 6*alpha");
  return done(a, CheckStatus::pass,
              "PB(PB(l^3 + 3*alpha*l^2, sin), sin) + cos twin = 6*l + 6*alpha");
}

inline CheckOutcome check_vn_l2(const nlohmann::json&) {
  Audit a;
  auto det = determine_l2_freedom();
  a.require(det.residual.is_zero(), "residual of the quadratic rule is nonzero");
  a.require(det.result.kind == SolveResult::Kind::underdetermined,
            "solver did not report free parameters");
  a.require(det.result.free_params == std::vector<ParamId>{kB, kC},
            "free parameter set is not {b, c}");
  return done(a, CheckStatus::pass, "residual = 0; " + det.result.str());
}

inline CheckOutcome check_b_zero(const nlohmann::json&) {
  Audit a;
  auto det = determine_b_zero();
  a.require(det.residual == (Scalar(Rat(-1, 2)) * Scalar::param(kB)) *
                                OperatorElement::identity(),
            "bracket residual is not -(b/2)*I");
  a.require(det.result.kind == SolveResult::Kind::unique &&
                det.result.assignment.count(kB) &&
                det.result.assignment.at(kB) == Scalar(0),
            "solver did not force b = 0");
  return done(a, CheckStatus::pass, "residual = -1/2*b*I; " + det.result.str());
}

inline CheckOutcome check_bprime_cprime(const nlohmann::json&) {
  Audit a;
  const Scalar al = Scalar::param(kAlpha);
  const ClassicalElement l = ClassicalElement::ell();
  const ClassicalElement u = l.pow(2) + (Scalar(2) * al) * l;
  const ClassicalElement v = l.pow(3) + (Scalar(3) * al) * l.pow(2);
  a.require(poisson_bracket(u * ClassicalElement::cos_theta(),
                            u * ClassicalElement::sin_theta()) ==
                Scalar(2) * v + (Scalar(4) * al * al) * l,
            "classical bracket of the shifted quadratic pair is wrong");
  auto det = determine_bprime_cprime();
  a.require(det.result.kind == SolveResult::Kind::unique,
            "solver did not reach a unique assignment");
  if (det.result.kind == SolveResult::Kind::unique) {
    a.require(det.result.assignment.at(kBp) == Scalar(Rat(1, 2)),
              "bp is not 1/2");
    a.require(det.result.assignment.at(kCp) == al * Scalar(Rat(1, 2)),
              "cp is not alpha/2");
  }
  return done(a, CheckStatus::pass, det.result.str());
}

inline CheckOutcome check_aside(const nlohmann::json&) {
  Audit a;
  auto rep = aside_discrepancy();
  const OperatorElement s =
      Scalar(GRat(Rat(0), Rat(-1, 2))) * OperatorElement::E(1) +
      Scalar(GRat(Rat(0), Rat(1, 2))) * OperatorElement::E(-1);
  const OperatorElement c = Scalar(Rat(1, 2)) * OperatorElement::E(1) +
                            Scalar(Rat(1, 2)) * OperatorElement::E(-1);
  a.require(rep.sin_diff == Scalar(Rat(-1, 4)) * s,
            "sine route difference is not -1/4 of the sine image");
  a.require(rep.cos_diff == Scalar(Rat(-1, 4)) * c,
            "cosine route difference is not -1/4 of the cosine image");
  a.require(rep.degree_zero_only, "difference is not purely degree zero");
  return done(a, CheckStatus::pass,
              "route difference = -1/4*Q(sin) resp. -1/4*Q(cos), degree zero only");
}

inline CheckOutcome check_nogo_main(const nlohmann::json&) {
  Audit a;
  auto rep = nogo_main();
  a.require(rep.classical_lhs == rep.classical_rhs,
            "the two classical routes disagree");
  a.require(rep.lhs_decomp.total() && rep.rhs_decomp.total(),
            "operator sides are not trig polynomials in Q(l)");
  a.require(rep.lhs_decomp.str() ==
                "12*Q(sin)*Q(l)^2 - 12*i*Q(cos)*Q(l) + 5*Q(sin)",
            "left route display changed: " + rep.lhs_decomp.str());
  a.require(rep.rhs_decomp.str() ==
                "12*Q(sin)*Q(l)^2 - 12*i*Q(cos)*Q(l) + 3*Q(sin)",
            "right route display changed: " + rep.rhs_decomp.str());
  a.require(rep.residual_decomp.str() == "2*Q(sin)",
            "difference is not 2*Q(sin): " + rep.residual_decomp.str());
  for (const auto& [w, v] : rep.lhs.terms())
    a.require(!v.depends_on(kC), "free constant c leaks into the left route");
  for (const auto& [w, v] : rep.rhs.terms())
    a.require(!v.depends_on(kC), "free constant c leaks into the right route");
  a.require(!rep.residual.is_zero(), "difference unexpectedly vanished");
  return done(a, CheckStatus::inconsistent_as_expected,
              "both routes quantize 12*l^2*sin; difference = 2*Q(sin)");
}

inline CheckOutcome check_nogo_valpha(const nlohmann::json&) {
  Audit a;
  auto rep = nogo_valpha();
  const Scalar al = Scalar::param(kAlpha);
  a.require(rep.classical_lhs == rep.classical_rhs,
            "the two classical routes disagree");
  a.require(rep.lhs_decomp.total() && rep.rhs_decomp.total(),
            "operator sides are not trig polynomials in Q(l)");
  a.require(rep.residual_decomp.sin_at(0) ==
                Scalar(-8) - Scalar(24) * al * al,
            "constant discrepancy is not -8 - 24*alpha^2");
  a.require(!rep.residual.is_zero(), "difference unexpectedly vanished");
  for (long long x : {0, 1, -2}) {
    auto inst = nogo_valpha(ParamEnv{}.bind(kAlpha, Scalar(x)));
    a.require(inst.residual_decomp.sin_at(0) == Scalar(-8 - 24 * x * x),
              "instantiated discrepancy wrong at alpha = " + std::to_string(x));
  }
  return done(a, CheckStatus::inconsistent_as_expected,
              "difference constant term = -8 - 24*alpha^2, nonzero for every real alpha");
}

inline CheckOutcome check_trivial_p(const nlohmann::json&) {
  Audit a;
  auto rep = trivial_p();
  a.require(rep.classical_ok,
            "squares of sin and cos are not the stated double brackets");
  a.require(rep.q_cos2.is_zero() && rep.q_sin2.is_zero(),
            "quantized squares did not collapse to zero");
  a.require(rep.result.kind == SolveResult::Kind::inconsistent,
            "solver did not certify a contradiction");
  a.require(rep.result.certificate.lhs == Scalar(1),
            "certificate is not the equation 1 = 0");
  return done(a, CheckStatus::inconsistent_as_expected, rep.result.str());
}

inline CheckOutcome check_trivial_valpha(const nlohmann::json& b) {
  Audit a;
  auto rep = trivial_valpha(b.value("family_range", 4));
  const Scalar al = Scalar::param(kAlpha);
  a.require(rep.classical_newiden_ok, "cubic double-bracket identity failed");
  a.require(rep.mu_solve.kind == SolveResult::Kind::unique &&
                rep.mu_solve.assignment.count(kMu) &&
                rep.mu_solve.assignment.at(kMu) == Scalar(-1) * al,
            "mu was not forced to -alpha");
  a.require(rep.q_ell == Scalar(-1) * al, "image of l is not -alpha");
  a.require(rep.q_affine == OperatorElement(Scalar::param(kC) -
                                            al * Scalar::param(kB)),
            "image of b*l + c is not (c - alpha*b)*I");
  a.require(rep.family_identity_ok,
            "odd generators do not arise as brackets across the family range");
  a.require(rep.character_consistent,
            "character has a nonzero bracket residual on some generator pair");
  return done(a, CheckStatus::pass,
              "mu = -alpha; Q(b*l + c) = (c - alpha*b)*I; " +
                  std::to_string(rep.pairs_checked) +
                  " generator pairs consistent");
}

inline CheckOutcome check_posrep_hom(const nlohmann::json& b) {
  Audit a;
  auto rep = posrep_hom(b.value("harmonic_range", 8));
  a.require(rep.all_zero, rep.first_failure);
  return done(a, CheckStatus::pass,
              std::to_string(rep.pairs_checked) + " monomial pairs, " +
                  std::to_string(rep.residuals_checked) +
                  " residuals, all exactly zero");
}

inline CheckOutcome check_uniqueness(const nlohmann::json& b) {
  Audit a;
  auto rep = uniqueness_constraints(b.value("range", 6));
  a.require(rep.all_ok,
            rep.failures.empty() ? std::string("constraint failure")
                                 : rep.failures.front());
  return done(a, CheckStatus::pass,
              "shift bands, affine rows, recursions, reflections and ket "
              "actions all forced");
}

inline CheckOutcome check_recursion(const nlohmann::json& b) {
  Audit a;
  const int range = b.value("ket_range", 5);
  for (int n = -range; n <= range; ++n) {
    const Scalar expected = Scalar(2) * Scalar::xi(n) - Scalar::xi(n + 1) -
                            Scalar::xi(n - 1);
    a.require(recursion_diagonal(n) == expected,
              "diagonal at n = " + std::to_string(n) +
                  " is not 2*xi[n] - xi[n+1] - xi[n-1]");
  }
  return done(a, CheckStatus::pass,
              "diagonal = 2*xi[n] - xi[n+1] - xi[n-1] (multiple exactly 1) for |n| <= " +
                  std::to_string(range));
}

inline CheckOutcome check_irred(const nlohmann::json& b) {
  Audit a;
  const int maxdeg = b.value("maxdeg", 3), maxharm = b.value("maxharm", 6);
  for (int r = 0; r <= maxdeg; ++r) {
    auto rep = irreducibility_probe(r, 1, maxharm);
    a.require(rep.all_reached && !rep.degenerate_seed,
              "orbit at degree " + std::to_string(r) +
                  " does not cover the harmonic window");
  }
  a.require(irreducibility_probe(0, 0, maxharm).degenerate_seed,
            "constant seed was not flagged as degenerate");
  return done(a, CheckStatus::pass,
              "ladder orbits from seed 1 cover |m| <= " + std::to_string(maxharm) +
                  " at degrees 0.." + std::to_string(maxdeg) +
                  "; constant seed flagged degenerate");
}

inline CheckOutcome check_p1_maximal(const nlohmann::json& b) {
  Audit a;
  const Cutoff box{b.value("maxdeg", 3), b.value("maxharm", 5)};
  auto gens = preset_B();
  gens.push_back(ell2());
  auto basis = closure(gens, box);
  a.require(basis.dim() == box.size(),
            "closure dimension " + std::to_string(basis.dim()) +
                " does not fill the box of size " + std::to_string(box.size()));
  return done(a, CheckStatus::pass,
              "adjoining l^2 to the affine window fills the whole box (dimension " +
                  std::to_string(box.size()) + ")");
}

inline CheckOutcome check_walpha_structure(const nlohmann::json& b) {
  Audit a;
  const Cutoff box{b.value("maxdeg", 3), b.value("maxharm", 5)};
  a.require(box.maxdeg == 3 && box.maxharm == 5,
            "structure counts are calibrated for cutoff (3, 5)");
  for (const GRat& alpha : manifest_alphas(b)) {
    const Scalar al(alpha);
    const std::string tag = " at alpha = " + al.str();
    auto basis = closure(preset_walpha(alpha, box.maxharm), box);
    a.require(basis.dim() == 23,
              "closure dimension " + std::to_string(basis.dim()) + tag);
    for (int m : {-5, -3, -1, 1, 3, 5}) {
      a.require(basis
                    .member(ClassicalElement::monomial(2, m) +
                            (Scalar(2) * al) * ClassicalElement::monomial(1, m))
                    .certified(),
                "tied quadratic generator missing" + tag);
      a.require(basis.member(ClassicalElement::monomial(0, m)).certified(),
                "odd bare harmonic missing" + tag);
    }
    for (int m : {-4, -2, 0, 2, 4})
      a.require(basis
                    .member(ClassicalElement::monomial(3, m) +
                            (Scalar(3) * al) * ClassicalElement::monomial(2, m) +
                            (Scalar(2) * al * al) * ClassicalElement::monomial(1, m))
                    .certified(),
                "tied cubic combination missing" + tag);
    auto scan = leading_term_scan(basis, alpha);
    a.require(scan.entries.size() == 22 && scan.all_found,
              "leading-term slots not all realized" + tag + " (" +
                  std::to_string(scan.found_count) + "/" +
                  std::to_string(scan.entries.size()) + ")");
  }
  return done(a, CheckStatus::pass,
              "dimension 23 with all 22 opposite-parity leading slots realized "
              "at each instantiated shift");
}

inline CheckOutcome check_bootstrap(const nlohmann::json& b) {
  Audit a;
  const Cutoff box{b.value("maxdeg", 3), b.value("maxharm", 5)};
  for (const GRat& alpha : manifest_alphas(b)) {
    const Scalar al(alpha);
    const std::string tag = " at alpha = " + al.str();
    auto basis = closure(preset_walpha(alpha, box.maxharm), box);
    for (int m : {-4, -2, 2, 4}) {
      a.require(!basis.member(ClassicalElement::monomial(0, m)).certified(),
                "bare even harmonic certified" + tag);
      a.require(basis
                    .member(ClassicalElement::monomial(1, m) +
                            al * ClassicalElement::monomial(0, m))
                    .certified(),
                "tied affine combination missing" + tag);
    }
  }
  return done(a, CheckStatus::pass,
              "no bare even harmonic e^0_{2N} is a member (2N = +-2, +-4); "
              "only the alpha-tied combinations appear");
}

}  // namespace detail_checks

inline const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> defs = {
      {"aside-discrepancy", "mixed-rule-route-comparison", CheckStatus::pass,
       detail_checks::check_aside},
      {"b-zero", "affine-rule-normalization", CheckStatus::pass,
       detail_checks::check_b_zero},
      {"bootstrap", "even-harmonic-exclusion", CheckStatus::pass,
       detail_checks::check_bootstrap},
      {"bprime-cprime", "cubic-rule-normalization", CheckStatus::pass,
       detail_checks::check_bprime_cprime},
      {"iden", "curvature-double-bracket-identity", CheckStatus::pass,
       detail_checks::check_iden},
      {"irred", "ladder-orbit-coverage", CheckStatus::pass,
       detail_checks::check_irred},
      {"newiden", "cubic-double-bracket-identity", CheckStatus::pass,
       detail_checks::check_newiden},
      {"nogo-main", "degree-three-obstruction",
       CheckStatus::inconsistent_as_expected, detail_checks::check_nogo_main},
      {"nogo-valpha", "degree-four-obstruction",
       CheckStatus::inconsistent_as_expected, detail_checks::check_nogo_valpha},
      {"p1-maximal", "affine-window-maximality", CheckStatus::pass,
       detail_checks::check_p1_maximal},
      {"posrep-hom", "position-representation-homomorphism", CheckStatus::pass,
       detail_checks::check_posrep_hom},
      {"recursion", "diagonal-eigenvalue-recursion", CheckStatus::pass,
       detail_checks::check_recursion},
      {"trivial-p", "collapse-of-the-constant",
       CheckStatus::inconsistent_as_expected, detail_checks::check_trivial_p},
      {"trivial-valpha", "shifted-family-character", CheckStatus::pass,
       detail_checks::check_trivial_valpha},
      {"uniqueness-constraints", "affine-image-rigidity", CheckStatus::pass,
       detail_checks::check_uniqueness},
      {"vn-l2-underdetermined", "quadratic-rule-free-parameters",
       CheckStatus::pass, detail_checks::check_vn_l2},
      {"walpha-structure", "shifted-family-closure", CheckStatus::pass,
       detail_checks::check_walpha_structure},
  };
  return defs;
}

inline const CheckDef* find_check(const std::string& name) {
  for (const auto& d : check_registry())
    if (d.name == name) return &d;
  return nullptr;
}

// Runs the selected checks (all when `only` is empty) against the manifest
// bindings, optionally on several worker threads. Results come back sorted by
// name; a thrown exception inside a check surfaces as a failed result.
inline std::vector<CheckResult> run_checks(const Manifest& mf,
                                           const std::vector<std::string>& only = {},
                                           int jobs = 1) {
  std::vector<const CheckDef*> selected;
  if (only.empty()) {
    for (const auto& d : check_registry()) selected.push_back(&d);
  } else {
    for (const auto& name : only) {
      const CheckDef* d = find_check(name);
      if (!d) throw std::invalid_argument("unknown check: " + name);
      selected.push_back(d);
    }
    std::sort(selected.begin(), selected.end(),
              [](const CheckDef* x, const CheckDef* y) { return x->name < y->name; });
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  }

  std::vector<CheckResult> results(selected.size());
  auto run_one = [&](std::size_t i) {
    const CheckDef& d = *selected[i];
    CheckResult r;
    r.name = d.name;
    r.paper_anchor = d.anchor;
    r.expected = check_status_str(d.expected);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const CheckOutcome out = d.run(mf.bindings(d.name));
      r.status = check_status_str(out.status);
      r.witness = out.witness;
    } catch (const std::exception& e) {
      r.status = check_status_str(CheckStatus::fail);
      r.witness = std::string("exception: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    results[i] = std::move(r);
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    const int nworkers = std::min<std::size_t>(jobs, selected.size());
    for (int w = 0; w < nworkers; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next.fetch_add(1); i < selected.size();
             i = next.fetch_add(1))
          run_one(i);
      }));
    for (auto& f : workers) f.get();
  }
  return results;
}

inline bool all_as_expected(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.as_expected()) return false;
  return true;
}

}  // namespace cylnogo
