#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cylnogo {

using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// "p" or "p/q" (q > 0 after normalization).
inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) bad();
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '-' || s[pos] == '+') {
    neg = (s[pos] == '-');
    ++pos;
  }
  auto digits = [&]() -> boost::multiprecision::cpp_int {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) bad();
    boost::multiprecision::cpp_int v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return v;
  };
  boost::multiprecision::cpp_int num = digits(), den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    den = digits();
    if (den == 0) bad();
  }
  if (pos != s.size()) bad();
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

// Exact element of Q(i): rational real and imaginary parts.
struct GRat {
  Rat re{0};
  Rat im{0};

  GRat() = default;
  GRat(long long n) : re(n) {}          // NOLINT: implicit by design
  GRat(Rat r) : re(std::move(r)) {}     // NOLINT
  GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GRat(long long p, long long q) : re(Rat(p, q)) {}

  static GRat i() { return GRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GRat conj() const { return GRat(re, -im); }

  GRat inverse() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return GRat(re / n, -im / n);
  }

  friend GRat operator+(const GRat& a, const GRat& b) { return GRat(a.re + b.re, a.im + b.im); }
  friend GRat operator-(const GRat& a, const GRat& b) { return GRat(a.re - b.re, a.im - b.im); }
  friend GRat operator-(const GRat& a) { return GRat(-a.re, -a.im); }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GRat operator/(const GRat& a, const GRat& b) { return a * b.inverse(); }
  GRat& operator+=(const GRat& o) { return *this = *this + o; }
  GRat& operator-=(const GRat& o) { return *this = *this - o; }
  GRat& operator*=(const GRat& o) { return *this = *this * o; }

  friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
  // Lexicographic; used only for canonical ordering, not magnitude.
  friend bool operator<(const GRat& a, const GRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  GRat pow(unsigned e) const {
    GRat acc(1), base = *this;
    while (e) {
      if (e & 1u) acc *= base;
      base *= base;
      e >>= 1u;
    }
    return acc;
  }

  // "0", "3/2", "i", "-i", "1/2*i", "3/2 + 1/2*i", "3/2 - 1/2*i".
  // Every form re-parses under the expression grammar.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out = rat_str(re);
    if (im != 0) {
      std::string ipart;
      if (im == 1)
        ipart = "i";
      else if (im == -1)
        ipart = "-i";
      else
        ipart = rat_str(im) + "*i";
      if (out.empty()) {
        out = ipart;
      } else if (!ipart.empty() && ipart[0] == '-') {
        out += " - " + ipart.substr(1);
      } else {
        out += " + " + ipart;
      }
    }
    return out;
  }
};

}  // namespace cylnogo
