#ifndef CONMAP_POLY_HPP
#define CONMAP_POLY_HPP

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "rational.hpp"

namespace conmap {

// Univariate polynomial over Z, coefficients stored constant-term first.
// The zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
  static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Int(0);
    return c_[static_cast<size_t>(i)];
  }
  const Int& lc() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a) {
    std::vector<Int> r = a.c_;
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
  }
  friend IntPoly operator*(const Int& s, const IntPoly& a) {
    std::vector<Int> r = a.c_;
    for (auto& v : r) v *= s;
    return IntPoly(std::move(r));
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * c_[i];
    return IntPoly(std::move(r));
  }

  Int evaluate(const Int& t) const {
    Int acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  Rat evaluate(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + Rat(*it);
    return acc;
  }

  Int content() const {
    Int g(0);
    for (const auto& v : c_) g = gcd_int(g, v);
    return g;
  }

  // Quotient and remainder by a monic divisor; exact over Z.
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& d) const {
    if (!d.is_monic()) fail(errc::bad_argument, "divmod_monic: divisor not monic");
    std::vector<Int> rem = c_;
    const int dd = d.degree();
    const int qd = degree() - dd;
    if (qd < 0) return {IntPoly(), *this};
    std::vector<Int> quo(static_cast<size_t>(qd) + 1, Int(0));
    for (int i = degree(); i >= dd; --i) {
      Int t = rem[static_cast<size_t>(i)];
      if (t == 0) continue;
      quo[static_cast<size_t>(i - dd)] = t;
      for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= t * d.coeff(j);
    }
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
  }

  IntPoly div_exact_monic(const IntPoly& d) const {
    auto [q, r] = divmod_monic(d);
    if (!r.is_zero()) fail(errc::bad_argument, "div_exact_monic: division not exact");
    return q;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      Int a = coeff(i);
      if (a == 0) continue;
      const bool first = out.empty();
      if (a > 0 && !first) out += " + ";
      if (a < 0) out += first ? "-" : " - ";
      Int mag = abs(a);
      if (i == 0) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// Polynomial over Q; only what field arithmetic and resultants need.
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
  explicit RatPoly(const IntPoly& p) {
    c_.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c_.emplace_back(v);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(i)];
  }
  const Rat& lc() const { return c_.back(); }

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator*(const Rat& s, const RatPoly& a) {
    std::vector<Rat> r = a.c_;
    for (auto& v : r) v *= s;
    return RatPoly(std::move(r));
  }

  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
    if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    std::vector<Rat> rem = c_;
    const int dd = d.degree();
    const int qd = degree() - dd;
    if (qd < 0) return {RatPoly(), *this};
    std::vector<Rat> quo(static_cast<size_t>(qd) + 1, Rat(0));
    const Rat inv_lc = Rat(1) / d.lc();
    for (int i = degree(); i >= dd; --i) {
      Rat t = rem[static_cast<size_t>(i)] * inv_lc;
      if (t == 0) continue;
      quo[static_cast<size_t>(i - dd)] = t;
      for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= t * d.coeff(j);
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
  }

  Rat evaluate(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  // Scale so the leading coefficient is 1.
  RatPoly monic() const {
    if (is_zero()) return *this;
    Rat inv = Rat(1) / lc();
    std::vector<Rat> r = c_;
    for (auto& v : r) v *= inv;
    return RatPoly(std::move(r));
  }

  // Clear denominators: returns (primitive-on-demand integer polynomial, common denominator).
  std::pair<IntPoly, Int> clear_denominators() const {
    Int d(1);
    for (const auto& v : c_) d = lcm_int(d, rat_den(v));
    std::vector<Int> r;
    r.reserve(c_.size());
    for (const auto& v : c_) {
      Rat scaled = v * Rat(d);
      r.push_back(rat_num(scaled));
    }
    return {IntPoly(std::move(r)), d};
  }

private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline RatPoly gcd_ratpoly(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

// Classical PRS resultant over Q.
inline Rat resultant(RatPoly a, RatPoly b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  Rat res(1);
  while (true) {
    if (b.degree() == 0) {
      res *= pow_rat(b.lc(), a.degree());
      return res;
    }
    RatPoly r = a.divmod(b).second;
    if (r.is_zero()) return Rat(0);
    // Res(a,b) = (-1)^(da*db) * lc(b)^(da-dr) * Res(b,r)
    if ((static_cast<long>(a.degree()) * b.degree()) % 2 != 0) res = -res;
    res *= pow_rat(b.lc(), a.degree() - r.degree());
    a = b;
    b = r;
  }
}

inline Int resultant_int(const IntPoly& a, const IntPoly& b) {
  Rat r = resultant(RatPoly(a), RatPoly(b));
  if (r.get_den() != 1) fail(errc::bad_argument, "integer resultant expected");
  return rat_num(r);
}

inline Int discriminant(const IntPoly& f) {
  if (!f.is_monic()) fail(errc::not_monic, "discriminant of non-monic polynomial");
  const int n = f.degree();
  Int d = resultant_int(f, f.derivative());
  if (((static_cast<long>(n) * (n - 1)) / 2) % 2 != 0) d = -d;
  return d;
}

// Parses "x^2+1", "x^4-10*x^2+1", "n^2+1", "x", "5", ... into constant-first
// coefficients. Any single identifier works as the variable name.
inline IntPoly parse_poly(const std::string& text) {
  struct Term {
    Int coeff;
    long exp;
  };
  std::vector<Term> terms;
  size_t i = 0;
  const auto n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::string var;
  skip_ws();
  if (i >= n) fail(errc::parse_error, "empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= n) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail(errc::parse_error, "expected '+' or '-' in polynomial: " + text);
    }
    first = false;
    skip_ws();
    Int coeff(1);
    bool have_coeff = false;
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coeff = Int(text.substr(i, j - i));
      i = j;
      have_coeff = true;
      skip_ws();
      if (i < n && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    long exp = 0;
    if (i < n && std::isalpha(static_cast<unsigned char>(text[i]))) {
      size_t j = i;
      while (j < n && std::isalnum(static_cast<unsigned char>(text[j])) && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      std::string name = text.substr(i, j - i);
      if (var.empty()) var = name;
      if (name != var) fail(errc::parse_error, "mixed variables in polynomial: " + text);
      i = j;
      exp = 1;
      skip_ws();
      if (i < n && text[i] == '^') {
        ++i;
        skip_ws();
        size_t k = i;
        while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == i) fail(errc::parse_error, "missing exponent in polynomial: " + text);
        exp = std::stol(text.substr(i, k - i));
        i = k;
      }
    } else if (!have_coeff) {
      fail(errc::parse_error, "bad term in polynomial: " + text);
    }
    terms.push_back({sign < 0 ? Int(-coeff) : coeff, exp});
  }
  long maxe = 0;
  for (const auto& t : terms) maxe = std::max(maxe, t.exp);
  std::vector<Int> c(static_cast<size_t>(maxe) + 1, Int(0));
  for (const auto& t : terms) c[static_cast<size_t>(t.exp)] += t.coeff;
  return IntPoly(std::move(c));
}

} // namespace conmap

#endif
