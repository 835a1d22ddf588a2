#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylnogo/rational.hpp"

namespace cylnogo {

// Commuting formal parameters of the scalar ring, all declared real.
// Named ones come first (alphabetical), then the diagonal eigenvalue
// family xi[n] for |n| <= kXiBound, ordered by index.
using ParamId = int;

inline constexpr ParamId kAlpha = 0;   // alpha
inline constexpr ParamId kB = 1;       // b
inline constexpr ParamId kBp = 2;      // bp
inline constexpr ParamId kC = 3;       // c
inline constexpr ParamId kCp = 4;      // cp
inline constexpr ParamId kEta = 5;     // eta
inline constexpr ParamId kLambda = 6;  // lambda
inline constexpr ParamId kMu = 7;      // mu
inline constexpr ParamId kNu = 8;      // nu
inline constexpr int kNamedParams = 9;
inline constexpr int kXiBound = 64;
inline constexpr int kParamCount = kNamedParams + 2 * kXiBound + 1;

inline ParamId xi_id(int n) {
  if (n < -kXiBound || n > kXiBound)
    throw std::out_of_range("xi index out of range: " + std::to_string(n));
  return kNamedParams + (n + kXiBound);
}

inline bool is_xi(ParamId p) { return p >= kNamedParams && p < kParamCount; }

inline int xi_index(ParamId p) { return p - kNamedParams - kXiBound; }

inline std::string param_label(ParamId p) {
  static const char* names[kNamedParams] = {"alpha", "b",      "bp", "c", "cp",
                                            "eta",   "lambda", "mu", "nu"};
  if (p >= 0 && p < kNamedParams) return names[p];
  if (is_xi(p)) return "xi[" + std::to_string(xi_index(p)) + "]";
  throw std::out_of_range("bad ParamId");
}

inline std::optional<ParamId> named_param_from(const std::string& s) {
  static const std::map<std::string, ParamId> tbl = {
      {"alpha", kAlpha}, {"b", kB},           {"bp", kBp}, {"c", kC},   {"cp", kCp},
      {"eta", kEta},     {"lambda", kLambda}, {"mu", kMu}, {"nu", kNu}};
  auto it = tbl.find(s);
  if (it == tbl.end()) return std::nullopt;
  return it->second;
}

// A power product of parameters: sorted (id, exp) pairs, exp > 0.
using Mono = std::vector<std::pair<ParamId, unsigned>>;

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      out.push_back(a[i++]);
    else if (b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

// Element of Q(i)[alpha, b, bp, c, cp, eta, lambda, mu, nu, xi[-64..64]],
// stored in canonical sparse form: no zero coefficients, monomials ordered.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n) {  // NOLINT
    if (n != 0) terms_[{}] = GRat(n);
  }
  Scalar(const Rat& r) {  // NOLINT
    if (r != 0) terms_[{}] = GRat(r);
  }
  Scalar(const GRat& v) {  // NOLINT
    if (!v.is_zero()) terms_[{}] = v;
  }

  static Scalar param(ParamId p) {
    Scalar s;
    s.terms_[Mono{{p, 1u}}] = GRat(1);
    return s;
  }
  static Scalar xi(int n) { return param(xi_id(n)); }
  static Scalar i() { return Scalar(GRat::i()); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  // Pre: is_constant().
  GRat constant_value() const {
    if (terms_.empty()) return GRat(0);
    if (!is_constant()) throw std::logic_error("Scalar is not constant: " + str());
    return terms_.begin()->second;
  }

  GRat coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GRat(0) : it->second;
  }

  const std::map<Mono, GRat>& terms() const { return terms_; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar out = a;
    for (const auto& [m, v] : b.terms_) out.add_term(m, v);
    return out;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    Scalar out = a;
    for (const auto& [m, v] : b.terms_) out.add_term(m, -v);
    return out;
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar out;
    for (const auto& [m, v] : a.terms_) out.terms_[m] = -v;
    return out;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ma, va] : a.terms_)
      for (const auto& [mb, vb] : b.terms_) out.add_term(mono_mul(ma, mb), va * vb);
    return out;
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Canonical order (for use as map keys); not a magnitude comparison.
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.terms_ < b.terms_; }

  Scalar pow(unsigned e) const {
    Scalar acc(1), base = *this;
    while (e) {
      if (e & 1u) acc *= base;
      base *= base;
      e >>= 1u;
    }
    return acc;
  }

  // Complex conjugation: i -> -i, every parameter fixed (all real).
  Scalar conj() const {
    Scalar out;
    for (const auto& [m, v] : terms_) out.terms_[m] = v.conj();
    return out;
  }

  // Substitute parameters by scalars (partial maps allowed).
  Scalar substitute(const std::map<ParamId, Scalar>& binding) const {
    Scalar out;
    for (const auto& [m, v] : terms_) {
      Scalar term{v};
      for (const auto& [p, e] : m) {
        auto it = binding.find(p);
        if (it == binding.end())
          term *= Scalar::param(p).pow(e);
        else
          term *= it->second.pow(e);
      }
      out += term;
    }
    return out;
  }

  bool depends_on(ParamId p) const {
    for (const auto& [m, v] : terms_)
      for (const auto& [q, e] : m)
        if (q == p) return true;
    return false;
  }

  // Maximum combined degree in the given parameters.
  int degree_in(std::span<const ParamId> params) const {
    int deg = 0;
    for (const auto& [m, v] : terms_) {
      int d = 0;
      for (const auto& [q, e] : m)
        if (std::find(params.begin(), params.end(), q) != params.end()) d += static_cast<int>(e);
      deg = std::max(deg, d);
    }
    return deg;
  }

  // Canonical, re-parseable rendering, e.g. "1 - 1/2*i*alpha^2*xi[3]".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, v] : terms_) {
      std::string factors;
      for (const auto& [p, e] : m) {
        if (!factors.empty()) factors += "*";
        factors += param_label(p);
        if (e > 1) factors += "^" + std::to_string(e);
      }
      std::string cs = v.str();
      std::string body;
      bool neg = false;
      if (factors.empty()) {
        body = cs;
      } else if (v == GRat(1)) {
        body = factors;
      } else if (v == GRat(-1)) {
        body = factors;
        neg = true;
      } else if (v.re != 0 && v.im != 0) {
        body = "(" + cs + ")*" + factors;
      } else {
        body = cs + "*" + factors;
      }
      if (!neg && !body.empty() && body[0] == '-') {
        neg = true;
        body = body.substr(1);
      }
      if (first) {
        out += (neg ? "-" : "") + body;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + body;
      }
    }
    return out;
  }

 private:
  void add_term(const Mono& m, const GRat& v) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_[m] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<Mono, GRat> terms_;
};

inline Scalar operator*(const GRat& a, const Scalar& b) { return Scalar(a) * b; }

// *this == constant_part + sum_j linear[u_j] * u_j over the chosen unknowns.
struct AffineView {
  Scalar constant_part;
  std::map<ParamId, Scalar> linear;
};

// Split a scalar as an affine function of the given unknowns; throws if any
// term is quadratic or higher in them (jointly).
inline AffineView affine_split(const Scalar& s, std::span<const ParamId> unknowns) {
  AffineView out;
  for (const auto& [m, v] : s.terms()) {
    ParamId hit = -1;
    int hit_deg = 0;
    Scalar rest{v};
    for (const auto& [q, e] : m) {
      if (std::find(unknowns.begin(), unknowns.end(), q) != unknowns.end()) {
        hit = q;
        hit_deg += static_cast<int>(e);
      } else {
        rest *= Scalar::param(q).pow(e);
      }
    }
    if (hit_deg > 1)
      throw std::domain_error("constraint is nonlinear in unknowns: " + s.str());
    if (hit < 0)
      out.constant_part += rest;
    else
      out.linear[hit] += rest;
  }
  for (auto it = out.linear.begin(); it != out.linear.end();)
    it = it->second.is_zero() ? out.linear.erase(it) : std::next(it);
  return out;
}

namespace detail {

// Render `coeff * factors` and append it to a running sum string with the
// sign folded into the separator. Parenthesizes coefficients that would not
// splice unambiguously with '*'. Used by every element printer.
inline void append_term(std::string& out, bool& first, const Scalar& v,
                        const std::string& factors) {
  bool simple = v.terms().size() == 1;
  if (simple) {
    const GRat& g = v.terms().begin()->second;
    if (g.re != 0 && g.im != 0) simple = false;  // complex coeff needs parens
  }
  std::string cs = v.str();
  std::string body;
  bool neg = false;
  if (factors.empty()) {
    body = simple ? cs : "(" + cs + ")";
  } else if (v == Scalar(1)) {
    body = factors;
  } else if (v == Scalar(-1)) {
    body = factors;
    neg = true;
  } else if (simple) {
    body = cs + "*" + factors;
  } else {
    body = "(" + cs + ")*" + factors;
  }
  if (!neg && !body.empty() && body[0] == '-') {
    neg = true;
    body = body.substr(1);
  }
  if (first) {
    out += (neg ? "-" : "") + body;
    first = false;
  } else {
    out += (neg ? " - " : " + ") + body;
  }
}

}  // namespace detail

}  // namespace cylnogo
