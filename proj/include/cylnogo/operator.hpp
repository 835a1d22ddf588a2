#pragma once

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylnogo/scalar.hpp"

namespace cylnogo {

// Raised when a product or adjoint would have to commute the diagonal symbol
// Xi past a shift E^m. That exchange is index-shifting and is only resolved
// against concrete kets (see apply_ket); it is not representable in the
// normal-ordered word algebra.
struct XiOrderError : std::domain_error {
  using std::domain_error::domain_error;
};

struct XiIndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Normal-ordered word E^m * Xi^p * D^k on circle Fourier modes.
//   E   = multiplication by exp(i*theta)   (shift |n> -> |n+1>)
//   D   = -i d/dtheta                      (diagonal, D|n> = n|n>)
//   Xi  = abstract diagonal symbol         (Xi|n> = xi[n] |n>)
struct OpWord {
  long long m = 0;
  unsigned p = 0;
  unsigned k = 0;
  auto operator<=>(const OpWord&) const = default;
};

class OperatorElement {
 public:
  OperatorElement() = default;
  OperatorElement(const Scalar& s) {  // NOLINT: scalars embed as multiples of I
    if (!s.is_zero()) terms_[{0, 0, 0}] = s;
  }
  OperatorElement(long long n) : OperatorElement(Scalar(n)) {}  // NOLINT

  static OperatorElement identity() { return OperatorElement(Scalar(1)); }
  static OperatorElement E(long long m) { return word(m, 0, 0); }
  static OperatorElement D() { return word(0, 0, 1); }
  static OperatorElement Xi() { return word(0, 1, 0); }
  static OperatorElement word(long long m, unsigned p, unsigned k,
                              const Scalar& coeff = Scalar(1)) {
    OperatorElement a;
    if (!coeff.is_zero()) a.terms_[{m, p, k}] = coeff;
    return a;
  }

  bool is_zero() const { return terms_.empty(); }
  bool xi_free() const {
    for (const auto& [w, v] : terms_)
      if (w.p > 0) return false;
    return true;
  }
  const std::map<OpWord, Scalar>& terms() const { return terms_; }
  Scalar coeff(const OpWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
  }

  friend OperatorElement operator+(const OperatorElement& a, const OperatorElement& b) {
    OperatorElement out = a;
    for (const auto& [w, v] : b.terms_) out.add_term(w, v);
    return out;
  }
  friend OperatorElement operator-(const OperatorElement& a, const OperatorElement& b) {
    OperatorElement out = a;
    for (const auto& [w, v] : b.terms_) out.add_term(w, -v);
    return out;
  }
  friend OperatorElement operator-(const OperatorElement& a) {
    OperatorElement out;
    for (const auto& [w, v] : a.terms_) out.terms_[w] = -v;
    return out;
  }
  friend OperatorElement operator*(const Scalar& s, const OperatorElement& a) {
    OperatorElement out;
    for (const auto& [w, v] : a.terms_) {
      Scalar c = s * v;
      if (!c.is_zero()) out.terms_[w] = c;
    }
    return out;
  }

  // Word product with renormal ordering via D^k E^m = E^m (D + m)^k.
  // Xi commutes with D and scalars but not symbolically with E; a left
  // factor containing Xi cannot absorb a right factor with a shift.
  friend OperatorElement operator*(const OperatorElement& a, const OperatorElement& b) {
    OperatorElement out;
    for (const auto& [wa, va] : a.terms_)
      for (const auto& [wb, vb] : b.terms_) {
        if (wa.p > 0 && wb.m != 0)
          throw XiOrderError(
              "product needs Xi*E^m exchange; use apply_ket/matrix_element on the factors");
        // E^{ma} [Xi^{pa}] D^{ka} E^{mb} Xi^{pb} D^{kb}
        //   = sum_j C(ka,j) mb^(ka-j) E^{ma+mb} Xi^{pa+pb} D^{kb+j}
        Scalar base = va * vb;
        Rat mb_pow = 1;           // mb^(ka-j), built from the top power down
        std::vector<Rat> powers(wa.k + 1);
        for (unsigned j = 0; j <= wa.k; ++j) {
          powers[wa.k - j] = mb_pow;
          mb_pow *= wb.m;
        }
        Rat binom = 1;
        for (unsigned j = 0; j <= wa.k; ++j) {
          if (j > 0) binom = binom * (wa.k - j + 1) / j;
          if (powers[j] == 0 && j < wa.k) continue;  // mb == 0 contributes only j == ka
          Scalar c = Scalar(binom * powers[j]) * base;
          if (!c.is_zero()) out.add_term({wa.m + wb.m, wa.p + wb.p, wb.k + j}, c);
        }
      }
    return out;
  }
  OperatorElement& operator+=(const OperatorElement& o) { return *this = *this + o; }
  OperatorElement& operator-=(const OperatorElement& o) { return *this = *this - o; }
  OperatorElement& operator*=(const OperatorElement& o) { return *this = *this * o; }

  friend bool operator==(const OperatorElement& a, const OperatorElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorElement& a, const OperatorElement& b) {
    return !(a == b);
  }

  OperatorElement pow(unsigned e) const {
    OperatorElement acc = identity(), base = *this;
    while (e) {
      if (e & 1u) acc *= base;
      base *= base;
      e >>= 1u;
    }
    return acc;
  }

  // (s E^m Xi^p D^k)^dagger = conj(s) D^k Xi^p E^{-m} = conj(s) E^{-m} Xi^p (D-m)^k,
  // using that D and Xi are self-adjoint (xi[n] are real parameters).
  OperatorElement adjoint() const {
    OperatorElement out;
    for (const auto& [w, v] : terms_) {
      if (w.p > 0 && w.m != 0)
        throw XiOrderError("adjoint needs Xi*E^m exchange; not representable symbolically");
      Scalar cv = v.conj();
      // expand (D - m)^k
      Rat mm = -Rat(w.m);
      std::vector<Rat> powers(w.k + 1);
      Rat acc = 1;
      for (unsigned j = 0; j <= w.k; ++j) {
        powers[w.k - j] = acc;
        acc *= mm;
      }
      Rat binom = 1;
      for (unsigned j = 0; j <= w.k; ++j) {
        if (j > 0) binom = binom * (w.k - j + 1) / j;
        Scalar c = Scalar(binom * powers[j]) * cv;
        if (!c.is_zero()) out.add_term({-w.m, w.p, j}, c);
      }
    }
    return out;
  }

  std::string str() const;

 private:
  void add_term(const OpWord& w, const Scalar& v) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_[w] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<OpWord, Scalar> terms_;
};

inline OperatorElement commutator(const OperatorElement& a, const OperatorElement& b) {
  return a * b - b * a;
}

// Finite combination of Fourier kets |n> with Scalar coefficients.
class KetCombination {
 public:
  KetCombination() = default;
  static KetCombination ket(long long n, const Scalar& coeff = Scalar(1)) {
    KetCombination k;
    if (!coeff.is_zero()) k.coeff_[n] = coeff;
    return k;
  }

  bool is_zero() const { return coeff_.empty(); }
  const std::map<long long, Scalar>& coeff() const { return coeff_; }
  Scalar at(long long n) const {
    auto it = coeff_.find(n);
    return it == coeff_.end() ? Scalar() : it->second;
  }

  friend KetCombination operator+(const KetCombination& a, const KetCombination& b) {
    KetCombination out = a;
    for (const auto& [n, v] : b.coeff_) out.add(n, v);
    return out;
  }
  friend KetCombination operator-(const KetCombination& a, const KetCombination& b) {
    KetCombination out = a;
    for (const auto& [n, v] : b.coeff_) out.add(n, -v);
    return out;
  }
  friend KetCombination operator*(const Scalar& s, const KetCombination& a) {
    KetCombination out;
    for (const auto& [n, v] : a.coeff_) {
      Scalar c = s * v;
      if (!c.is_zero()) out.coeff_[n] = c;
    }
    return out;
  }
  friend bool operator==(const KetCombination& a, const KetCombination& b) {
    return a.coeff_ == b.coeff_;
  }

  void add(long long n, const Scalar& v) {
    auto it = coeff_.find(n);
    if (it == coeff_.end()) {
      if (!v.is_zero()) coeff_[n] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) coeff_.erase(it);
    }
  }

  std::string str() const {
    if (coeff_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [n, v] : coeff_) {
      if (!first) out += " + ";
      out += "(" + v.str() + ")|" + std::to_string(n) + ">";
      first = false;
    }
    return out;
  }

 private:
  std::map<long long, Scalar> coeff_;
};

// E^m Xi^p D^k |n> = n^k xi[n]^p |n+m>. The Xi eigenvalue is read at the
// incoming index, before the shift; indices must stay within the xi table.
inline KetCombination apply_ket(const OperatorElement& a, long long n) {
  KetCombination out;
  for (const auto& [w, v] : a.terms()) {
    Scalar c = v;
    if (w.k > 0) c *= Scalar(Rat(n)).pow(w.k);
    if (w.p > 0) {
      if (n < -kXiBound || n > kXiBound)
        throw XiIndexError("xi index " + std::to_string(n) + " outside table");
      c *= Scalar::xi(static_cast<int>(n)).pow(w.p);
    }
    out.add(n + w.m, c);
  }
  return out;
}

inline KetCombination apply_ket(const OperatorElement& a, const KetCombination& k) {
  KetCombination out;
  for (const auto& [n, v] : k.coeff()) {
    KetCombination piece = apply_ket(a, n);
    out = out + v * piece;
  }
  return out;
}

// Right-to-left application of a product chain A_0 * A_1 * ... * A_last |n>.
// Chains sidestep the Xi-E ordering restriction: each factor acts on kets.
inline KetCombination apply_chain(std::span<const OperatorElement> chain, long long n) {
  KetCombination k = KetCombination::ket(n);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) k = apply_ket(*it, k);
  return k;
}

inline Scalar matrix_element(const OperatorElement& a, long long bra, long long ket) {
  return apply_ket(a, ket).at(bra);
}

inline std::string OperatorElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, v] : terms_) {
    std::string factors;
    auto push = [&factors](const std::string& f) {
      if (!factors.empty()) factors += "*";
      factors += f;
    };
    if (w.m != 0) push("E[" + std::to_string(w.m) + "]");
    if (w.p == 1)
      push("Xi");
    else if (w.p > 1)
      push("Xi^" + std::to_string(w.p));
    if (w.k == 1)
      push("D");
    else if (w.k > 1)
      push("D^" + std::to_string(w.k));
    if (factors.empty() && v == Scalar(1)) {
      if (first) {
        out += "I";
        first = false;
      } else {
        out += " + I";
      }
      continue;
    }
    detail::append_term(out, first, v, factors);
  }
  return out;
}

}  // namespace cylnogo
