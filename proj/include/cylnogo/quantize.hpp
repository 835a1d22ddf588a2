#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylnogo/classical.hpp"
#include "cylnogo/operator.hpp"
#include "cylnogo/solve.hpp"

namespace cylnogo {

// Partial binding of the formal parameters. Unbound parameters stay formal.
class ParamEnv {
 public:
  ParamEnv() = default;
  bool has(ParamId p) const { return bound_.count(p) > 0; }
  ParamEnv& bind(ParamId p, const Scalar& v) {
    bound_[p] = v;
    return *this;
  }
  Scalar get(ParamId p) const {
    auto it = bound_.find(p);
    return it == bound_.end() ? Scalar::param(p) : it->second;
  }
  const std::map<ParamId, Scalar>& bindings() const { return bound_; }

 private:
  std::map<ParamId, Scalar> bound_;
};

enum class SchemeKind { type_i, type_ii, pos_rep, vn_table };

// Table-extension rules for composite observables. Each installs one fixed
// operator expression for one classical key.
enum class VnRule { l2, ls, lc, l2s, l2c, cubic, l2s_p, l2c_p, l4s, l4c };

inline const char* vn_rule_name(VnRule r) {
  switch (r) {
    case VnRule::l2: return "l2";
    case VnRule::ls: return "ls";
    case VnRule::lc: return "lc";
    case VnRule::l2s: return "l2s";
    case VnRule::l2c: return "l2c";
    case VnRule::cubic: return "cubic";
    case VnRule::l2s_p: return "l2sp";
    case VnRule::l2c_p: return "l2cp";
    case VnRule::l4s: return "l4s";
    case VnRule::l4c: return "l4c";
  }
  return "?";
}

inline std::optional<VnRule> vn_rule_from_name(const std::string& s) {
  static const std::map<std::string, VnRule> tbl = {
      {"l2", VnRule::l2},     {"ls", VnRule::ls},     {"lc", VnRule::lc},
      {"l2s", VnRule::l2s},   {"l2c", VnRule::l2c},   {"cubic", VnRule::cubic},
      {"l2sp", VnRule::l2s_p}, {"l2cp", VnRule::l2c_p}, {"l4s", VnRule::l4s},
      {"l4c", VnRule::l4c}};
  auto it = tbl.find(s);
  if (it == tbl.end()) return std::nullopt;
  return it->second;
}

// A linear quantization map, stored as a table of (classical key -> operator)
// entries and extended to general elements by exact linear algebra on the
// leading l-degree layers. Position-representation schemes synthesize their
// monomial entries instead of storing them.
class QuantScheme {
 public:
  struct Entry {
    ClassicalElement key;
    OperatorElement image;
  };

  static QuantScheme type_i(ParamEnv env = {}) {
    if (!env.has(kLambda)) env.bind(kLambda, Scalar(1));
    QuantScheme s;
    s.kind_ = SchemeKind::type_i;
    s.env_ = env;
    const Scalar lam = env.get(kLambda);
    s.table_.push_back({ClassicalElement::one(), OperatorElement::identity()});
    s.table_.push_back(
        {ClassicalElement::ell(), OperatorElement::D() + OperatorElement(env.get(kNu))});
    s.table_.push_back({ClassicalElement::harmonic(1), lam * OperatorElement::E(1)});
    s.table_.push_back({ClassicalElement::harmonic(-1), lam * OperatorElement::E(-1)});
    return s;
  }

  static QuantScheme type_ii(ParamEnv env = {}) {
    QuantScheme s;
    s.kind_ = SchemeKind::type_ii;
    s.env_ = env;
    s.table_.push_back({ClassicalElement::one(), OperatorElement::identity()});
    s.table_.push_back({ClassicalElement::ell(), OperatorElement(env.get(kMu))});
    s.table_.push_back({ClassicalElement::harmonic(1), OperatorElement()});
    s.table_.push_back({ClassicalElement::harmonic(-1), OperatorElement()});
    return s;
  }

  static QuantScheme pos_rep(ParamEnv env = {}) {
    QuantScheme s;
    s.kind_ = SchemeKind::pos_rep;
    s.env_ = env;
    return s;
  }

  SchemeKind kind() const { return kind_; }
  const ParamEnv& env() const { return env_; }
  const std::vector<Entry>& table() const { return table_; }
  const std::vector<VnRule>& rules() const { return rules_; }

  // Extend the table with an explicit (key, image) pair.
  QuantScheme with_entry(const ClassicalElement& key, const OperatorElement& image) const {
    if (key.is_zero()) throw std::domain_error("zero classical key in scheme entry");
    QuantScheme out = *this;
    out.table_.push_back({key, image});
    return out;
  }

  // Install one composite-observable rule, expressed through this scheme's own
  // images of l, sin and cos, with rule parameters taken from the environment.
  QuantScheme with_rule(VnRule r) const {
    if (kind_ == SchemeKind::pos_rep)
      throw std::domain_error("rules extend table-based schemes only");
    const Scalar al = env_.get(kAlpha), b = env_.get(kB), c = env_.get(kC),
                 bp = env_.get(kBp), cp = env_.get(kCp);
    const Scalar i = Scalar::i(), half(Rat(1, 2)), quarter(Rat(1, 4)),
        third(Rat(1, 3));
    const ClassicalElement l = ClassicalElement::ell(),
                           sn = ClassicalElement::sin_theta(),
                           cs = ClassicalElement::cos_theta();
    const ClassicalElement u = l.pow(2) + (Scalar(2) * al) * l;
    const OperatorElement L = quantize(l), S = quantize(sn), C = quantize(cs);
    const OperatorElement L2 = L.pow(2), L3 = L.pow(3), L4 = L.pow(4);

    ClassicalElement key;
    OperatorElement image;
    switch (r) {
      case VnRule::l2:
        key = l.pow(2);
        image = L2 + b * L + OperatorElement(c);
        break;
      case VnRule::ls:
        key = l * sn;
        image = S * L - (i * half) * C + (b * half) * S;
        break;
      case VnRule::lc:
        key = l * cs;
        image = C * L + (i * half) * S + (b * half) * C;
        break;
      case VnRule::l2s:
        key = l.pow(2) * sn;
        image = S * L2 - i * (C * L) + quarter * S;
        break;
      case VnRule::l2c:
        key = l.pow(2) * cs;
        image = C * L2 + i * (S * L) + quarter * C;
        break;
      case VnRule::cubic:
        key = l.pow(3) + (Scalar(3) * al) * l.pow(2);
        image = L3 + (Scalar(3) * al) * L2 + bp * L + OperatorElement(cp);
        break;
      case VnRule::l2s_p:
        key = u * sn;
        image = S * L2 + (Scalar(2) * al) * (S * L) - i * (C * L) +
                ((Scalar(1) + bp) * third) * S - (i * al) * C;
        break;
      case VnRule::l2c_p:
        key = u * cs;
        image = C * L2 + (Scalar(2) * al) * (C * L) + i * (S * L) +
                ((Scalar(1) + bp) * third) * C + (i * al) * S;
        break;
      case VnRule::l4s:
        key = u.pow(2) * sn;
        image = S * L4 + (Scalar(4) * al) * (S * L3) - (Scalar(2) * i) * (C * L3) +
                (Scalar(4) * al * al + Scalar(2)) * (S * L2) -
                (Scalar(6) * i * al) * (C * L2) + (Scalar(4) * al) * (S * L) -
                i * (Scalar(4) * al * al + Scalar(1)) * (C * L) +
                (quarter + al * al) * S - (i * al) * C;
        break;
      case VnRule::l4c:
        key = u.pow(2) * cs;
        image = C * L4 + (Scalar(4) * al) * (C * L3) + (Scalar(2) * i) * (S * L3) +
                (Scalar(4) * al * al + Scalar(2)) * (C * L2) +
                (Scalar(6) * i * al) * (S * L2) + (Scalar(4) * al) * (C * L) +
                i * (Scalar(4) * al * al + Scalar(1)) * (S * L) +
                (quarter + al * al) * C + (i * al) * S;
        break;
    }
    QuantScheme out = *this;
    out.table_.push_back({key, image});
    out.rules_.push_back(r);
    if (out.kind_ == SchemeKind::type_i) out.kind_ = SchemeKind::vn_table;
    return out;
  }

  QuantScheme with_rules(std::initializer_list<VnRule> rs) const {
    QuantScheme out = *this;
    for (VnRule r : rs) out = out.with_rule(r);
    return out;
  }

  // Linear extension: peel the top l-degree layer of f, match it exactly
  // against the leading layers of same-degree table keys, subtract the full
  // keys and recurse. Elements not reachable this way are a domain error.
  OperatorElement quantize(const ClassicalElement& f) const {
    if (kind_ == SchemeKind::pos_rep) return quantize_posrep(f);
    OperatorElement out;
    ClassicalElement rem = f;
    while (!rem.is_zero()) {
      const int d = rem.degree_ell();
      const ClassicalElement top = rem.homogeneous_part(d);
      std::vector<const Entry*> cand;
      for (const auto& e : table_)
        if (e.key.degree_ell() == d) cand.push_back(&e);
      const std::vector<Scalar> x = solve_top_layer(top, cand, d);
      for (size_t j = 0; j < cand.size(); ++j) {
        if (x[j].is_zero()) continue;
        rem -= x[j] * cand[j]->key;
        out += x[j] * cand[j]->image;
      }
      if (!rem.is_zero() && rem.degree_ell() >= d)
        throw std::logic_error("leading layer not eliminated");
    }
    return out;
  }

 private:
  SchemeKind kind_ = SchemeKind::type_i;
  ParamEnv env_;
  std::vector<Entry> table_;
  std::vector<VnRule> rules_;

  OperatorElement quantize_posrep(const ClassicalElement& f) const {
    OperatorElement out;
    const Scalar nu = env_.get(kNu), eta = env_.get(kEta);
    for (const auto& [k, v] : f.terms()) {
      if (k.r == 0) {
        out += v * OperatorElement::E(k.m);
      } else if (k.r == 1) {
        const Scalar kappa =
            nu + Scalar(Rat(k.m, 2)) + Scalar::i() * Scalar(k.m) * eta;
        out += v * (OperatorElement::word(k.m, 0, 1) + kappa * OperatorElement::E(k.m));
      } else {
        throw std::domain_error(
            "element outside the scheme's quantization domain: l-degree " +
            std::to_string(k.r));
      }
    }
    return out;
  }

  // Express `top` (homogeneous of degree d) as a combination of the leading
  // layers of the candidate keys. The leading layers must have constant
  // rational coefficients; the combination coefficients may carry parameters.
  std::vector<Scalar> solve_top_layer(const ClassicalElement& top,
                                      const std::vector<const Entry*>& cand,
                                      int d) const {
    std::set<CMono> row_set;
    std::vector<ClassicalElement> ctop;
    ctop.reserve(cand.size());
    for (const Entry* e : cand) {
      ClassicalElement t = e->key.homogeneous_part(d);
      for (const auto& [k, v] : t.terms()) {
        if (!v.is_constant())
          throw std::domain_error("scheme key has a parameter-laden leading layer: " +
                                  e->key.str());
        row_set.insert(k);
      }
      ctop.push_back(std::move(t));
    }
    for (const auto& [k, v] : top.terms()) row_set.insert(k);
    const std::vector<CMono> rows(row_set.begin(), row_set.end());

    const size_t R = rows.size(), N = cand.size();
    std::vector<std::vector<GRat>> A(R, std::vector<GRat>(N, GRat(0)));
    std::vector<Scalar> rhs(R);
    for (size_t r = 0; r < R; ++r) {
      for (size_t j = 0; j < N; ++j)
        A[r][j] = ctop[j].coeff(rows[r].r, rows[r].m).constant_value();
      rhs[r] = top.coeff(rows[r].r, rows[r].m);
    }

    std::vector<size_t> pivot_row(N, SIZE_MAX);
    size_t prow = 0;
    for (size_t col = 0; col < N && prow < R; ++col) {
      size_t sel = SIZE_MAX;
      for (size_t r = prow; r < R; ++r)
        if (!A[r][col].is_zero()) {
          sel = r;
          break;
        }
      if (sel == SIZE_MAX) continue;
      std::swap(A[prow], A[sel]);
      std::swap(rhs[prow], rhs[sel]);
      const GRat inv = A[prow][col].inverse();
      for (size_t j = col; j < N; ++j) A[prow][j] = A[prow][j] * inv;
      rhs[prow] = Scalar(inv) * rhs[prow];
      for (size_t r = 0; r < R; ++r) {
        if (r == prow || A[r][col].is_zero()) continue;
        const GRat f = A[r][col];
        for (size_t j = col; j < N; ++j) A[r][j] = A[r][j] - f * A[prow][j];
        rhs[r] = rhs[r] - Scalar(f) * rhs[prow];
      }
      pivot_row[col] = prow;
      ++prow;
    }
    for (size_t r = prow; r < R; ++r)
      if (!rhs[r].is_zero())
        throw std::domain_error(
            "element outside the scheme's quantization domain (l-degree " +
            std::to_string(d) + " layer " + top.str() + ")");
    std::vector<Scalar> x(N);
    for (size_t col = 0; col < N; ++col)
      if (pivot_row[col] != SIZE_MAX) x[col] = rhs[pivot_row[col]];
    return x;
  }
};

// Q({f,g}) - i [Q(f), Q(g)]; exactly zero iff the bracket axiom holds on (f,g).
inline OperatorElement bracket_residual(const QuantScheme& q, const ClassicalElement& f,
                                        const ClassicalElement& g) {
  return q.quantize(poisson_bracket(f, g)) -
         Scalar::i() * commutator(q.quantize(f), q.quantize(g));
}

// Operator image of a nested bracket {{f,g},h}: applying the axiom twice gives
// Q({{f,g},h}) = -[[Q(f),Q(g)],Q(h)].
inline OperatorElement nested_bracket_image(const OperatorElement& qf,
                                            const OperatorElement& qg,
                                            const OperatorElement& qh) {
  return Scalar(-1) * commutator(commutator(qf, qg), qh);
}

// Decomposition of an operator as sum_j (s_j*Q(sin) + c_j*Q(cos)) * Q(l)^j,
// where Q(l) = D + nu. Words outside span{E^{+1} D^k, E^{-1} D^k} are
// collected untouched in `leftover`.
struct TrigPolyDecomp {
  std::vector<Scalar> sin_coeff, cos_coeff;  // index = power of Q(l)
  OperatorElement leftover;

  bool total() const { return leftover.is_zero(); }
  int degree() const { return static_cast<int>(sin_coeff.size()) - 1; }
  Scalar sin_at(size_t j) const {
    return j < sin_coeff.size() ? sin_coeff[j] : Scalar();
  }
  Scalar cos_at(size_t j) const {
    return j < cos_coeff.size() ? cos_coeff[j] : Scalar();
  }

  std::string str() const {
    std::string out;
    bool first = true;
    for (int j = degree(); j >= 0; --j) {
      const std::string lpow =
          j == 0 ? "" : (j == 1 ? "*Q(l)" : "*Q(l)^" + std::to_string(j));
      if (!sin_coeff[j].is_zero())
        detail::append_term(out, first, sin_coeff[j], "Q(sin)" + lpow);
      if (!cos_coeff[j].is_zero())
        detail::append_term(out, first, cos_coeff[j], "Q(cos)" + lpow);
    }
    if (!leftover.is_zero()) detail::append_term(out, first, Scalar(1), "[" + leftover.str() + "]");
    return first ? "0" : out;
  }
};

inline TrigPolyDecomp trig_decompose(const OperatorElement& x, const Scalar& nu) {
  TrigPolyDecomp out;
  unsigned kmax = 0;
  std::map<unsigned, Scalar> plus, minus;  // D-power -> coefficient
  for (const auto& [w, v] : x.terms()) {
    if (w.p == 0 && (w.m == 1 || w.m == -1)) {
      (w.m == 1 ? plus : minus)[w.k] += v;
      kmax = std::max(kmax, w.k);
    } else {
      out.leftover += OperatorElement::word(w.m, w.p, w.k, v);
    }
  }
  // Rebase the D-polynomials into powers of L = D + nu: D^k = (L - nu)^k.
  auto rebase = [&](const std::map<unsigned, Scalar>& poly) {
    std::vector<Scalar> p(kmax + 1);
    for (const auto& [k, a] : poly) {
      Rat binom = 1;
      Scalar nu_pow(1);  // (-nu)^(k-j), built from j = k down
      std::vector<Scalar> pows(k + 1);
      for (unsigned j = 0; j <= k; ++j) {
        pows[k - j] = nu_pow;
        nu_pow *= -nu;
      }
      for (unsigned j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        p[j] += Scalar(binom) * pows[j] * a;
      }
    }
    return p;
  };
  const std::vector<Scalar> p = rebase(plus), q = rebase(minus);
  out.sin_coeff.resize(kmax + 1);
  out.cos_coeff.resize(kmax + 1);
  for (unsigned j = 0; j <= kmax; ++j) {
    out.sin_coeff[j] = Scalar::i() * (p[j] - q[j]);
    out.cos_coeff[j] = p[j] + q[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named derivation flows. Each mirrors one parameter determination or
// contradiction, as (install rules formal) -> residual -> linear solve.
// ---------------------------------------------------------------------------

struct Determination {
  ConstraintSet constraints;
  SolveResult result;
  OperatorElement residual;
};

// {l cos, l sin} = l with the affine rules installed and b formal: the
// residual is a multiple of the identity and forces b = 0.
inline Determination determine_b_zero() {
  const auto scheme = QuantScheme::type_i().with_rules({VnRule::ls, VnRule::lc});
  const ClassicalElement l = ClassicalElement::ell();
  const OperatorElement r = bracket_residual(scheme, l * ClassicalElement::cos_theta(),
                                             l * ClassicalElement::sin_theta());
  Determination d;
  d.residual = r;
  d.constraints = ConstraintSet::from_operator(r);
  const ParamId unknowns[] = {kB};
  d.result = solve_linear(d.constraints, unknowns);
  return d;
}

// Self-consistency of the cubic rule against the bracket
// {(l^2+2*alpha*l)cos, (l^2+2*alpha*l)sin} with bp, cp formal: forces
// bp = 1/2 and cp = alpha/2.
inline Determination determine_bprime_cprime() {
  const auto scheme =
      QuantScheme::type_i().with_rules({VnRule::cubic, VnRule::l2s_p, VnRule::l2c_p});
  const Scalar al = Scalar::param(kAlpha);
  const ClassicalElement l = ClassicalElement::ell();
  const ClassicalElement u = l.pow(2) + (Scalar(2) * al) * l;
  const OperatorElement r = bracket_residual(scheme, u * ClassicalElement::cos_theta(),
                                             u * ClassicalElement::sin_theta());
  Determination d;
  d.residual = r;
  d.constraints = ConstraintSet::from_operator(r);
  const ParamId unknowns[] = {kBp, kCp};
  d.result = solve_linear(d.constraints, unknowns);
  return d;
}

// The double-bracket identity that evaluates classically to the constant 2,
// quantized with the quadratic rule left fully formal: the residual vanishes
// identically, so b and c remain free.
inline Determination determine_l2_freedom() {
  const auto scheme = QuantScheme::type_i().with_rule(VnRule::l2);
  const ClassicalElement l2 = ClassicalElement::ell().pow(2);
  const OperatorElement ql2 = scheme.quantize(l2);
  const OperatorElement s = scheme.quantize(ClassicalElement::sin_theta());
  const OperatorElement c = scheme.quantize(ClassicalElement::cos_theta());
  const OperatorElement lhs =
      nested_bracket_image(ql2, s, s) + nested_bracket_image(ql2, c, c);
  const OperatorElement r = scheme.quantize(ClassicalElement(2)) - lhs;
  Determination d;
  d.residual = r;
  d.constraints = ConstraintSet::from_operator(r);
  const ParamId unknowns[] = {kB, kC};
  d.result = solve_linear(d.constraints, unknowns);
  return d;
}

// Main contradiction: 2{{l^2 sin, l^2 cos}, cos} = 12 l^2 sin quantized with
// the degree-two rules (b = 0, c formal). Both sides and their difference are
// returned; the difference is 2*Q(sin), nonzero.
struct NogoMainReport {
  OperatorElement lhs, rhs, residual;
  TrigPolyDecomp lhs_decomp, rhs_decomp, residual_decomp;
  ClassicalElement classical_lhs, classical_rhs;
};

inline NogoMainReport nogo_main(ParamEnv env = {}) {
  env.bind(kB, Scalar(0));
  const auto scheme = QuantScheme::type_i(env).with_rules(
      {VnRule::l2, VnRule::ls, VnRule::lc, VnRule::l2s, VnRule::l2c});
  const ClassicalElement l = ClassicalElement::ell(),
                         sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  const ClassicalElement f = l.pow(2) * sn, g = l.pow(2) * cs;

  NogoMainReport rep;
  rep.classical_lhs =
      Scalar(2) * poisson_bracket(poisson_bracket(f, g), cs);
  rep.classical_rhs = Scalar(12) * f;
  rep.lhs = Scalar(2) * nested_bracket_image(scheme.quantize(f), scheme.quantize(g),
                                             scheme.quantize(cs));
  rep.rhs = scheme.quantize(Scalar(12) * f);
  rep.residual = rep.lhs - rep.rhs;
  const Scalar nu = env.get(kNu);
  rep.lhs_decomp = trig_decompose(rep.lhs, nu);
  rep.rhs_decomp = trig_decompose(rep.rhs, nu);
  rep.residual_decomp = trig_decompose(rep.residual, nu);
  return rep;
}

// Degree-four contradiction for the extended family, alpha formal by default
// and bp = 1/2, cp = alpha/2 bound. u = l^2 + 2 alpha l; the relation is
// {{u cos, u^2 sin}, cos} + {{u^2 cos, u sin}, cos} = -30 u^2 sin - 24 alpha^2 u sin.
struct NogoValphaReport {
  OperatorElement lhs, rhs, residual;
  TrigPolyDecomp lhs_decomp, rhs_decomp, residual_decomp;
  ClassicalElement classical_lhs, classical_rhs;
};

inline NogoValphaReport nogo_valpha(ParamEnv env = {}) {
  const Scalar al = env.get(kAlpha);
  env.bind(kBp, Scalar(Rat(1, 2)));
  env.bind(kCp, al * Scalar(Rat(1, 2)));
  const auto scheme = QuantScheme::type_i(env).with_rules(
      {VnRule::cubic, VnRule::l2s_p, VnRule::l2c_p, VnRule::l4s, VnRule::l4c});
  const ClassicalElement l = ClassicalElement::ell(),
                         sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  const ClassicalElement u = l.pow(2) + (Scalar(2) * al) * l;
  const ClassicalElement u2 = u.pow(2);

  NogoValphaReport rep;
  rep.classical_lhs = poisson_bracket(poisson_bracket(u * cs, u2 * sn), cs) +
                      poisson_bracket(poisson_bracket(u2 * cs, u * sn), cs);
  rep.classical_rhs =
      Scalar(-30) * (u2 * sn) - (Scalar(24) * al * al) * (u * sn);
  const OperatorElement qc = scheme.quantize(cs);
  rep.lhs = nested_bracket_image(scheme.quantize(u * cs), scheme.quantize(u2 * sn), qc) +
            nested_bracket_image(scheme.quantize(u2 * cs), scheme.quantize(u * sn), qc);
  rep.rhs = scheme.quantize(rep.classical_rhs);
  rep.residual = rep.lhs - rep.rhs;
  const Scalar nu = env.get(kNu);
  rep.lhs_decomp = trig_decompose(rep.lhs, nu);
  rep.rhs_decomp = trig_decompose(rep.rhs, nu);
  rep.residual_decomp = trig_decompose(rep.residual, nu);
  return rep;
}

// One-dimensional scheme against the full algebra: quantizing
// cos^2 = (1/2){{l^2, sin}, sin} and sin^2 = (1/2){{l^2, cos}, cos} sends both
// squares to zero, so Q(1) = Q(cos^2 + sin^2) collapses to the certificate 1 = 0.
struct TrivialPReport {
  bool classical_ok = false;       // the two double-bracket identities
  OperatorElement q_cos2, q_sin2;  // both zero
  ConstraintSet constraints;
  SolveResult result;              // inconsistent, certificate 1 = 0
};

inline TrivialPReport trivial_p() {
  const auto scheme = QuantScheme::type_ii().with_rule(VnRule::l2);
  const ClassicalElement l2 = ClassicalElement::ell().pow(2),
                         sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  const Scalar half(Rat(1, 2));
  TrivialPReport rep;
  rep.classical_ok =
      (cs * cs == half * poisson_bracket(poisson_bracket(l2, sn), sn)) &&
      (sn * sn == half * poisson_bracket(poisson_bracket(l2, cs), cs));
  const OperatorElement ql2 = scheme.quantize(l2), qs = scheme.quantize(sn),
                        qc = scheme.quantize(cs);
  rep.q_cos2 = half * nested_bracket_image(ql2, qs, qs);
  rep.q_sin2 = half * nested_bracket_image(ql2, qc, qc);
  rep.constraints = ConstraintSet::from_operator(
      scheme.quantize(ClassicalElement::one()) - rep.q_cos2 - rep.q_sin2);
  rep.result = solve_linear(rep.constraints, std::span<const ParamId>{});
  return rep;
}

// One-dimensional scheme on the alpha-family subalgebra: the double-bracket
// identity at w = l^3 + 3 alpha l^2 + 2 alpha^2 l forces 6 mu + 6 alpha = 0,
// every generator g_a = e^2_a + 2 alpha e^1_a is itself a bracket and maps to
// zero, and the resulting character is consistent on all generator pairs.
struct TrivialValphaReport {
  bool classical_newiden_ok = false;  // {{w,s},s}+{{w,c},c} = 6l + 6alpha
  SolveResult mu_solve;               // mu = -alpha
  Scalar q_ell;                       // -alpha
  OperatorElement q_affine;           // (c - alpha b) * I
  bool family_identity_ok = false;    // g_{2N+1} arises as a bracket, |N| <= range
  bool character_consistent = false;  // bracket residual zero on generator pairs
  int pairs_checked = 0;
};

inline TrivialValphaReport trivial_valpha(int family_range = 4) {
  const Scalar al = Scalar::param(kAlpha);
  const ClassicalElement l = ClassicalElement::ell(),
                         sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  const ClassicalElement w =
      l.pow(3) + (Scalar(3) * al) * l.pow(2) + (al * al * Scalar(2)) * l;
  TrivialValphaReport rep;
  rep.classical_newiden_ok =
      poisson_bracket(poisson_bracket(w, sn), sn) +
          poisson_bracket(poisson_bracket(w, cs), cs) ==
      Scalar(6) * l + ClassicalElement(Scalar(6) * al);

  // Scaffolding scheme, mu formal, to run the determination.
  const auto scheme0 = QuantScheme::type_ii().with_rule(VnRule::cubic);
  const OperatorElement qw = scheme0.quantize(w), qs = scheme0.quantize(sn),
                        qc = scheme0.quantize(cs);
  const OperatorElement lhs =
      nested_bracket_image(qw, qs, qs) + nested_bracket_image(qw, qc, qc);
  const OperatorElement resid =
      scheme0.quantize(Scalar(6) * l + ClassicalElement(Scalar(6) * al)) - lhs;
  const ParamId unknowns[] = {kMu};
  rep.mu_solve = solve_linear(ConstraintSet::from_operator(resid), unknowns);
  Scalar mu_value = Scalar::param(kMu);
  if (rep.mu_solve.kind == SolveResult::Kind::unique &&
      rep.mu_solve.assignment.count(kMu))
    mu_value = rep.mu_solve.assignment.at(kMu);

  // The determined character: 1 -> 1, l -> mu = -alpha, all bracket-generated
  // basis directions -> 0.
  QuantScheme character = QuantScheme::type_ii(ParamEnv{}.bind(kMu, mu_value));
  const int amax = 2 * family_range + 1;
  std::vector<ClassicalElement> gens = {ClassicalElement::one(), l,
                                        ClassicalElement::harmonic(1),
                                        ClassicalElement::harmonic(-1)};
  auto g_of = [&](int a) {
    return ClassicalElement::monomial(2, a) +
           (Scalar(2) * al) * ClassicalElement::monomial(1, a);
  };
  auto w_of = [&](int m) {
    return ClassicalElement::monomial(3, m) +
           (Scalar(3) * al) * ClassicalElement::monomial(2, m) +
           (Scalar(2) * al * al) * ClassicalElement::monomial(1, m);
  };
  auto affine_of = [&](int m) {
    return ClassicalElement::monomial(1, m) + al * ClassicalElement::monomial(0, m);
  };
  for (int a = -amax; a <= amax; ++a) {
    if (a % 2 == 0) continue;
    character = character.with_entry(g_of(a), OperatorElement());
    gens.push_back(g_of(a));
  }
  for (int m = -2 * amax; m <= 2 * amax; m += 2)
    character = character.with_entry(w_of(m), OperatorElement());
  for (int m = -2 * amax; m <= 2 * amax; m += 2)
    if (m != 0) character = character.with_entry(affine_of(m), OperatorElement());

  rep.q_ell = character.quantize(l).coeff({0, 0, 0});
  rep.q_affine = character.quantize(Scalar::param(kB) * l +
                                    ClassicalElement(Scalar::param(kC)));

  rep.family_identity_ok = true;
  for (int n = -family_range; n <= family_range; ++n) {
    const ClassicalElement h =
        ClassicalElement::monomial(3, 2 * n) +
        (Scalar(3) * al) * ClassicalElement::monomial(2, 2 * n) -
        (Scalar(2) * al * al * al) * ClassicalElement::monomial(0, 2 * n);
    const ClassicalElement want =
        (Scalar(3) * Scalar::i()) * g_of(2 * n + 1);
    if (poisson_bracket(h, ClassicalElement::harmonic(1)) != want)
      rep.family_identity_ok = false;
  }

  rep.character_consistent = true;
  for (const auto& f : gens)
    for (const auto& g : gens) {
      ++rep.pairs_checked;
      if (!bracket_residual(character, f, g).is_zero())
        rep.character_consistent = false;
    }
  return rep;
}

// Position-representation homomorphism: the bracket residual vanishes on all
// monomial pairs of the affine-in-l subalgebra within the harmonic range.
struct PosrepHomReport {
  int pairs_checked = 0;          // (N, M) pairs
  int residuals_checked = 0;      // including the four degree combinations
  bool all_zero = true;
  std::string first_failure;
};

inline PosrepHomReport posrep_hom(int range = 8) {
  const auto q = QuantScheme::pos_rep();
  PosrepHomReport rep;
  for (int n = -range; n <= range; ++n)
    for (int m = -range; m <= range; ++m) {
      ++rep.pairs_checked;
      for (int r = 0; r <= 1; ++r)
        for (int s = 0; s <= 1; ++s) {
          ++rep.residuals_checked;
          const OperatorElement resid = bracket_residual(
              q, ClassicalElement::monomial(r, n), ClassicalElement::monomial(s, m));
          if (!resid.is_zero()) {
            rep.all_zero = false;
            if (rep.first_failure.empty())
              rep.first_failure = "residual at r=" + std::to_string(r) +
                                  ",N=" + std::to_string(n) + " x s=" +
                                  std::to_string(s) + ",M=" + std::to_string(m) +
                                  ": " + resid.str();
          }
        }
    }
  return rep;
}

// Matrix-element constraint system of the uniqueness argument, evaluated on
// the position representation with nu, eta formal.
struct UniquenessReport {
  bool all_ok = true;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      all_ok = false;
      failures.push_back(what);
    }
  }
};

inline UniquenessReport uniqueness_constraints(int range = 6) {
  const auto q = QuantScheme::pos_rep();
  const Scalar nu = Scalar::param(kNu), eta = Scalar::param(kEta);
  UniquenessReport rep;

  auto qs0 = [&](int n) { return q.quantize(ClassicalElement::monomial(0, n)); };
  auto qs1 = [&](int n) { return q.quantize(ClassicalElement::monomial(1, n)); };
  auto dd = [&](int nn, int n) { return matrix_element(qs1(nn), n + nn, n); };

  for (int N = -range; N <= range; ++N) {
    // Band structure and constancy of the shift coefficients.
    for (int n = -range; n <= range; ++n)
      for (int m = -range; m <= range; ++m) {
        const Scalar v = matrix_element(qs0(N), m, n);
        rep.require(v == (m == n + N ? Scalar(1) : Scalar()),
                    "shift coefficient at N=" + std::to_string(N));
      }
    const Scalar d0 = dd(N, 0);
    for (int n = -range; n <= range; ++n) {
      const Scalar dn = dd(N, n);
      rep.require(dn == d0 + Scalar(n), "affine row dependence at N=" + std::to_string(N));
      for (int M = -range; M <= range; ++M)
        rep.require(dd(N, n + M) - dn == Scalar(M),
                    "step relation at N=" + std::to_string(N) + ",M=" + std::to_string(M));
      // Full ket action.
      const Scalar kappa = Scalar(n) + Scalar::i() * Scalar(N) * eta +
                           Scalar(Rat(N, 2)) + nu;
      rep.require(apply_ket(qs1(N), n) == KetCombination::ket(n + N, kappa),
                  "ket action at N=" + std::to_string(N) + ",n=" + std::to_string(n));
    }
    for (int M = -range; M <= range; ++M)
      rep.require(Scalar(M) * dd(M, 0) - Scalar(N) * d0 ==
                      Scalar(M - N) * dd(M + N, 0),
                  "two-index recursion at N=" + std::to_string(N));
    rep.require(d0 + dd(-N, 0) == Scalar(2) * nu,
                "reflection sum at N=" + std::to_string(N));
    rep.require(d0 == Scalar(N) * dd(1, 0) + Scalar(1 - N) * nu,
                "linear recursion at N=" + std::to_string(N));
    rep.require(d0.conj() - dd(-N, 0) == Scalar(N),
                "conjugate reflection at N=" + std::to_string(N));
    rep.require(d0 + d0.conj() == Scalar(2) * nu + Scalar(N),
                "real part at N=" + std::to_string(N));
    rep.require(d0 - d0.conj() == Scalar(2) * Scalar::i() * Scalar(N) * eta,
                "imaginary part at N=" + std::to_string(N));
  }
  return rep;
}

// Diagonal matrix element of K = [[Xi,Q(sin)],Q(sin)] + [[Xi,Q(cos)],Q(cos)],
// assembled from operator chains because Xi does not reorder past E symbolically.
inline Scalar recursion_diagonal(long long n) {
  const OperatorElement s = Scalar(GRat(Rat(0), Rat(-1, 2))) * OperatorElement::E(1) +
                            Scalar(GRat(Rat(0), Rat(1, 2))) * OperatorElement::E(-1);
  const OperatorElement c = Scalar(Rat(1, 2)) * OperatorElement::E(1) +
                            Scalar(Rat(1, 2)) * OperatorElement::E(-1);
  const OperatorElement xi = OperatorElement::Xi();
  Scalar out;
  for (const OperatorElement& a : {s, c}) {
    const OperatorElement xaa[] = {xi, a, a};
    const OperatorElement axa[] = {a, xi, a};
    const OperatorElement aax[] = {a, a, xi};
    auto diag = [&](std::span<const OperatorElement> chain) {
      return apply_chain(chain, n).at(n);
    };
    out += diag(xaa) - Scalar(2) * diag(axa) + diag(aax);
  }
  return out;
}

// Degree-zero discrepancy between the two routes to the mixed quadratic rule:
// (l2s) + 2 alpha (ls at b=0) minus (l2s' at bp=1/2), and the cosine twin.
struct AsideReport {
  OperatorElement sin_diff, cos_diff;  // -1/4 Q(sin) and -1/4 Q(cos)
  bool degree_zero_only = true;
};

inline AsideReport aside_discrepancy() {
  const Scalar al = Scalar::param(kAlpha);
  const auto direct = QuantScheme::type_i(ParamEnv{}.bind(kB, Scalar(0)))
                          .with_rules({VnRule::ls, VnRule::lc, VnRule::l2s, VnRule::l2c});
  const auto primed = QuantScheme::type_i(ParamEnv{}.bind(kBp, Scalar(Rat(1, 2))))
                          .with_rules({VnRule::l2s_p, VnRule::l2c_p});
  const ClassicalElement l = ClassicalElement::ell(),
                         sn = ClassicalElement::sin_theta(),
                         cs = ClassicalElement::cos_theta();
  AsideReport rep;
  rep.sin_diff = direct.quantize(l.pow(2) * sn) +
                 (Scalar(2) * al) * direct.quantize(l * sn) -
                 primed.quantize((l.pow(2) + (Scalar(2) * al) * l) * sn);
  rep.cos_diff = direct.quantize(l.pow(2) * cs) +
                 (Scalar(2) * al) * direct.quantize(l * cs) -
                 primed.quantize((l.pow(2) + (Scalar(2) * al) * l) * cs);
  for (const auto* d : {&rep.sin_diff, &rep.cos_diff})
    for (const auto& [wkey, v] : d->terms())
      if (wkey.k != 0) rep.degree_zero_only = false;
  return rep;
}

}  // namespace cylnogo
