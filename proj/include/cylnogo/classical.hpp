#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "cylnogo/scalar.hpp"

namespace cylnogo {

// Basis monomial e^r_m = l^r * exp(i*m*theta) of the cylinder Poisson algebra.
struct CMono {
  int r = 0;  // degree in the fiber coordinate l, r >= 0
  int m = 0;  // circle harmonic, any sign
  auto operator<=>(const CMono&) const = default;
};

// Finite sum of basis monomials with Scalar coefficients, canonical sparse form.
class ClassicalElement {
 public:
  ClassicalElement() = default;
  ClassicalElement(const Scalar& s) {  // NOLINT: scalars embed as multiples of 1
    if (!s.is_zero()) terms_[{0, 0}] = s;
  }
  ClassicalElement(long long n) : ClassicalElement(Scalar(n)) {}  // NOLINT

  static ClassicalElement monomial(int r, int m, const Scalar& coeff = Scalar(1)) {
    if (r < 0) throw std::domain_error("negative l-degree");
    ClassicalElement f;
    if (!coeff.is_zero()) f.terms_[{r, m}] = coeff;
    return f;
  }
  static ClassicalElement one() { return monomial(0, 0); }
  static ClassicalElement ell() { return monomial(1, 0); }
  static ClassicalElement harmonic(int m) { return monomial(0, m); }
  // sin(k*theta) = (E^k - E^-k) / 2i,  cos(k*theta) = (E^k + E^-k) / 2
  static ClassicalElement sin_k(int k) {
    if (k == 0) return ClassicalElement();
    GRat half_over_i(Rat(0), Rat(-1, 2));  // 1/(2i) = -i/2
    return monomial(0, k, Scalar(half_over_i)) + monomial(0, -k, Scalar(-half_over_i));
  }
  static ClassicalElement cos_k(int k) {
    if (k == 0) return one();
    Scalar half{Rat(1, 2)};
    return monomial(0, k, half) + monomial(0, -k, half);
  }
  static ClassicalElement sin_theta() { return sin_k(1); }
  static ClassicalElement cos_theta() { return cos_k(1); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<CMono, Scalar>& terms() const { return terms_; }
  Scalar coeff(int r, int m) const {
    auto it = terms_.find({r, m});
    return it == terms_.end() ? Scalar() : it->second;
  }

  friend ClassicalElement operator+(const ClassicalElement& a, const ClassicalElement& b) {
    ClassicalElement out = a;
    for (const auto& [k, v] : b.terms_) out.add_term(k, v);
    return out;
  }
  friend ClassicalElement operator-(const ClassicalElement& a, const ClassicalElement& b) {
    ClassicalElement out = a;
    for (const auto& [k, v] : b.terms_) out.add_term(k, -v);
    return out;
  }
  friend ClassicalElement operator-(const ClassicalElement& a) {
    ClassicalElement out;
    for (const auto& [k, v] : a.terms_) out.terms_[k] = -v;
    return out;
  }
  // Pointwise product: e^r_m * e^s_n = e^{r+s}_{m+n}.
  friend ClassicalElement operator*(const ClassicalElement& a, const ClassicalElement& b) {
    ClassicalElement out;
    for (const auto& [ka, va] : a.terms_)
      for (const auto& [kb, vb] : b.terms_)
        out.add_term({ka.r + kb.r, ka.m + kb.m}, va * vb);
    return out;
  }
  friend ClassicalElement operator*(const Scalar& s, const ClassicalElement& a) {
    ClassicalElement out;
    for (const auto& [k, v] : a.terms_) {
      Scalar w = s * v;
      if (!w.is_zero()) out.terms_[k] = w;
    }
    return out;
  }
  ClassicalElement& operator+=(const ClassicalElement& o) { return *this = *this + o; }
  ClassicalElement& operator-=(const ClassicalElement& o) { return *this = *this - o; }
  ClassicalElement& operator*=(const ClassicalElement& o) { return *this = *this * o; }

  friend bool operator==(const ClassicalElement& a, const ClassicalElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ClassicalElement& a, const ClassicalElement& b) {
    return !(a == b);
  }

  ClassicalElement pow(unsigned e) const {
    ClassicalElement acc = one(), base = *this;
    while (e) {
      if (e & 1u) acc *= base;
      base *= base;
      e >>= 1u;
    }
    return acc;
  }

  // {e^r_m, e^s_n} = i (r n - m s) e^{r+s-1}_{m+n}; the prefactor vanishes
  // whenever r + s - 1 would be negative (r = s = 0), so degrees stay valid.
  friend ClassicalElement poisson_bracket(const ClassicalElement& f, const ClassicalElement& g) {
    ClassicalElement out;
    for (const auto& [kf, vf] : f.terms_)
      for (const auto& [kg, vg] : g.terms_) {
        long long pre = static_cast<long long>(kf.r) * kg.m - static_cast<long long>(kf.m) * kg.r;
        if (pre == 0) continue;
        Scalar c = Scalar(GRat(Rat(0), Rat(pre))) * vf * vg;
        out.add_term({kf.r + kg.r - 1, kf.m + kg.m}, c);
      }
    return out;
  }

  // Complex conjugate of the underlying real-variable function:
  // conj(e^r_m) = e^r_{-m}, coefficients conjugated.
  ClassicalElement conj() const {
    ClassicalElement out;
    for (const auto& [k, v] : terms_) out.add_term({k.r, -k.m}, v.conj());
    return out;
  }
  bool is_real() const { return conj() == *this; }

  int degree_ell() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, k.r);
    return d;
  }
  ClassicalElement homogeneous_part(int r) const {
    ClassicalElement out;
    for (const auto& [k, v] : terms_)
      if (k.r == r) out.terms_[k] = v;
    return out;
  }
  ClassicalElement harmonic_part(int m) const {
    ClassicalElement out;
    for (const auto& [k, v] : terms_)
      if (k.m == m) out.terms_[k] = v;
    return out;
  }
  std::set<int> harmonics() const {
    std::set<int> out;
    for (const auto& [k, v] : terms_) out.insert(k.m);
    return out;
  }

  // Ladder operator L_k = {l e^{ik theta}, .}: e^r_m -> i (m - k r) e^r_{m+k}.
  ClassicalElement ladder(int k) const {
    ClassicalElement out;
    for (const auto& [key, v] : terms_) {
      long long pre = key.m - static_cast<long long>(k) * key.r;
      if (pre == 0) continue;
      out.add_term({key.r, key.m + k}, Scalar(GRat(Rat(0), Rat(pre))) * v);
    }
    return out;
  }

  // For an l-homogeneous element, strip every harmonic except `target` by
  // iterating p -> L_0(p) - i*M*p. Result is a nonzero multiple of
  // e^r_target whenever the target coefficient was nonzero.
  ClassicalElement eliminate_to_monomial(int target) const {
    if (is_zero()) return *this;
    int r = terms_.begin()->first.r;
    for (const auto& [k, v] : terms_)
      if (k.r != r) throw std::domain_error("eliminate_to_monomial needs an l-homogeneous element");
    ClassicalElement p = *this;
    for (int M : harmonics()) {
      if (M == target) continue;
      p = p.ladder(0) - Scalar(GRat(Rat(0), Rat(M))) * p;
    }
    return p;
  }

  // Canonical rendering in the expression grammar, e.g.
  // "-1/2*i*l^2*E[1] + (1/2 + alpha)*l".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, v] : terms_) {
      std::string factors;
      if (k.r == 1)
        factors = "l";
      else if (k.r > 1)
        factors = "l^" + std::to_string(k.r);
      if (k.m != 0) {
        if (!factors.empty()) factors += "*";
        factors += "E[" + std::to_string(k.m) + "]";
      }
      detail::append_term(out, first, v, factors);
    }
    return out;
  }

 private:
  void add_term(const CMono& k, const Scalar& v) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_[k] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<CMono, Scalar> terms_;
};

}  // namespace cylnogo
