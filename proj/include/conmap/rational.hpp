#ifndef CONMAP_RATIONAL_HPP
#define CONMAP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace conmap {

// Exact scalar types. mpq_class keeps the canonical form invariant
// (denominator > 0, gcd(|num|, den) = 1) after every operation.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int rat_num(const Rat& r) { return Int(r.get_num()); }
inline Int rat_den(const Rat& r) { return Int(r.get_den()); }

// "p/q" or "p"; optional leading sign, arbitrary precision.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(errc::parse_error, "empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int n(s);
      return Rat(n);
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad rational literal: " + s);
  }
}

inline std::string format_rat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  bool inv = e < 0;
  unsigned long a = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv) {
    if (b == 0) fail(errc::division_by_zero, "0 raised to negative power");
    b = Rat(1) / b;
  }
  Rat acc(1);
  while (a) {
    if (a & 1) acc *= b;
    b *= b;
    a >>= 1;
  }
  return acc;
}

// Exponent of p in n (n != 0); strips the factor in place when requested.
inline long valuation_int(const Int& n, const Int& p, Int* cofactor = nullptr) {
  if (n == 0) fail(errc::zero_argument, "p-adic valuation of 0");
  Int rest;
  const auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  if (cofactor) *cofactor = rest;
  return static_cast<long>(e);
}

inline long valuation_rat(const Rat& r, const Int& p) {
  if (r == 0) fail(errc::zero_argument, "p-adic valuation of 0");
  return valuation_int(rat_num(r), p) - valuation_int(rat_den(r), p);
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime_after(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Remainder in [0, m).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Trial division up to `bound`, then a primality check on the remainder.
// Throws factorization_incomplete if a composite cofactor survives; exact
// results only, never a partial answer.
inline std::map<Int, long> factor_integer(Int n, unsigned long bound = 1000000) {
  if (n == 0) fail(errc::zero_argument, "factoring 0");
  std::map<Int, long> out;
  if (n < 0) n = -n;
  if (n == 1) return out;
  long e2 = valuation_int(n, Int(2), &n);
  if (e2) out[Int(2)] = e2;
  for (Int p(3); p * p <= n && p <= bound; p += 2) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      long e = valuation_int(n, p, &n);
      out[p] = e;
    }
  }
  if (n > 1) {
    if (!is_probable_prime(n))
      fail(errc::factorization_incomplete,
           "composite cofactor " + n.get_str() + " beyond trial-division bound");
    out[n] += 1;
  }
  return out;
}

inline bool is_squarefree(const Int& n) {
  for (const auto& [p, e] : factor_integer(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

} // namespace conmap

#endif
