#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cylnogo/operator.hpp"
#include "cylnogo/scalar.hpp"

namespace cylnogo {

// One equation `lhs == 0`, tagged with the word or site it came from.
struct Constraint {
  std::string site;
  Scalar lhs;
};

struct ConstraintSet {
  std::vector<Constraint> eqs;

  bool empty() const { return eqs.empty(); }

  void add(std::string site, Scalar lhs) {
    if (!lhs.is_zero()) eqs.push_back({std::move(site), std::move(lhs)});
  }

  // One constraint per normal-ordered word of a residual operator.
  static ConstraintSet from_operator(const OperatorElement& r, const std::string& prefix = "") {
    ConstraintSet cs;
    for (const auto& [w, v] : r.terms()) {
      std::string site = prefix;
      auto push = [&site](const std::string& f) {
        if (!site.empty() && site.back() != ' ') site += "*";
        site += f;
      };
      if (w.m != 0) push("E[" + std::to_string(w.m) + "]");
      if (w.p > 0) push(w.p == 1 ? "Xi" : "Xi^" + std::to_string(w.p));
      if (w.k > 0) push(w.k == 1 ? "D" : "D^" + std::to_string(w.k));
      if (site.empty() || site.back() == ' ') push("I");
      cs.eqs.push_back({site, v});
    }
    return cs;
  }

  void merge(const ConstraintSet& o) {
    eqs.insert(eqs.end(), o.eqs.begin(), o.eqs.end());
  }
};

struct SolveResult {
  enum class Kind { unique, underdetermined, inconsistent };
  Kind kind = Kind::unique;
  // Solved unknowns (values are Scalars in the non-unknown parameters; in the
  // underdetermined case they may also mention free unknowns).
  std::map<ParamId, Scalar> assignment;
  std::vector<ParamId> free_params;   // underdetermined only
  Constraint certificate;             // inconsistent only: unsatisfiable equation

  std::string str() const {
    switch (kind) {
      case Kind::inconsistent:
        return "inconsistent at " + certificate.site + ": " + certificate.lhs.str() + " = 0";
      case Kind::underdetermined: {
        std::string out = "underdetermined; free:";
        for (ParamId p : free_params) out += " " + param_label(p);
        for (const auto& [p, v] : assignment)
          out += "; " + param_label(p) + " = " + v.str();
        return out;
      }
      case Kind::unique: {
        std::string out;
        for (const auto& [p, v] : assignment) {
          if (!out.empty()) out += ", ";
          out += param_label(p) + " = " + v.str();
        }
        return out.empty() ? "no unknowns" : out;
      }
    }
    return "";
  }
};

// Solve a linear system in the given unknowns by substitution elimination.
// Pivots are only taken where the unknown's coefficient is a nonzero rational
// constant; equations nonlinear in the unknowns throw. After elimination:
// a nonzero unknown-free equation is an inconsistency certificate, remaining
// untouched unknowns make the system underdetermined.
inline SolveResult solve_linear(const ConstraintSet& cs, std::span<const ParamId> unknowns) {
  std::vector<Constraint> eqs = cs.eqs;
  std::vector<ParamId> remaining(unknowns.begin(), unknowns.end());
  std::map<ParamId, Scalar> assignment;

  auto substitute_everywhere = [&](ParamId u, const Scalar& value) {
    std::map<ParamId, Scalar> bind{{u, value}};
    for (auto& e : eqs) e.lhs = e.lhs.substitute(bind);
    for (auto& [p, v] : assignment) v = v.substitute(bind);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& e : eqs) {
      if (e.lhs.is_zero()) continue;
      auto view = affine_split(e.lhs, remaining);  // throws if nonlinear
      for (auto it = remaining.begin(); it != remaining.end(); ++it) {
        auto lc = view.linear.find(*it);
        if (lc == view.linear.end() || !lc->second.is_constant()) continue;
        GRat c = lc->second.constant_value();
        if (c.is_zero()) continue;
        // u = -(lhs - c*u) / c
        Scalar value = Scalar(c.inverse()) * -(e.lhs - lc->second * Scalar::param(*it));
        ParamId u = *it;
        remaining.erase(it);
        assignment[u] = value;
        substitute_everywhere(u, value);
        progress = true;
        break;
      }
      if (progress) break;
    }
  }

  SolveResult out;
  auto mentions_unknown = [&](const Scalar& s) {
    for (ParamId u : remaining)
      if (s.depends_on(u)) return true;
    return false;
  };
  for (const auto& e : eqs) {
    if (e.lhs.is_zero() || mentions_unknown(e.lhs)) continue;
    out.kind = SolveResult::Kind::inconsistent;
    out.certificate = e;
    out.assignment = std::move(assignment);
    return out;
  }
  for (const auto& e : eqs) {
    if (e.lhs.is_zero()) continue;
    // A live equation whose unknown coefficients are all parameter-laden:
    // solving it would require case analysis on parameters. Out of scope.
    throw std::domain_error("no constant pivot for equation at " + e.site + ": " +
                            e.lhs.str());
  }
  out.assignment = std::move(assignment);
  if (!remaining.empty()) {
    out.kind = SolveResult::Kind::underdetermined;
    out.free_params = std::move(remaining);
  }
  return out;
}

}  // namespace cylnogo
