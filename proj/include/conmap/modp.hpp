#ifndef CONMAP_MODP_HPP
#define CONMAP_MODP_HPP

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace conmap {
namespace modp {

// Polynomials over Z/m, constant-first coefficients kept in [0, m).
using Vec = std::vector<Int>;

inline void normalize(Vec& a, const Int& m) {
  for (auto& v : a) v = mod_floor(v, m);
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Vec& a) { return a.empty(); }
inline bool is_one(const Vec& a) { return a.size() == 1 && a[0] == 1; }

inline Vec from_intpoly(const IntPoly& p, const Int& m) {
  Vec a = p.coeffs();
  normalize(a, m);
  return a;
}

inline IntPoly to_intpoly(const Vec& a) { return IntPoly(a); }

inline Vec add(const Vec& a, const Vec& b, const Int& m) {
  Vec r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  normalize(r, m);
  return r;
}

inline Vec sub(const Vec& a, const Vec& b, const Int& m) {
  Vec r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  normalize(r, m);
  return r;
}

inline Vec mul(const Vec& a, const Vec& b, const Int& m) {
  if (is_zero(a) || is_zero(b)) return {};
  Vec r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  normalize(r, m);
  return r;
}

inline Vec scale(const Vec& a, const Int& s, const Int& m) {
  Vec r = a;
  for (auto& v : r) v *= s;
  normalize(r, m);
  return r;
}

inline Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    fail(errc::bad_argument, "non-invertible element mod " + m.get_str());
  return r;
}

// Division with remainder; the divisor's leading coefficient must be a unit
// mod m (always true for monic divisors, which is all the p^k case needs).
inline std::pair<Vec, Vec> divmod(const Vec& a, const Vec& b, const Int& m) {
  if (is_zero(b)) fail(errc::division_by_zero, "polynomial division by zero mod m");
  Vec rem = a;
  normalize(rem, m);
  const int db = deg(b);
  if (deg(rem) < db) return {{}, rem};
  const Int lci = b.back() == 1 ? Int(1) : inv_mod(b.back(), m);
  Vec quo(static_cast<size_t>(deg(rem) - db) + 1, Int(0));
  for (int i = deg(rem); i >= db; --i) {
    if (i > deg(rem)) continue;
    if (static_cast<size_t>(i) >= rem.size() || rem[static_cast<size_t>(i)] == 0) continue;
    Int t = mod_floor(rem[static_cast<size_t>(i)] * lci, m);
    quo[static_cast<size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<size_t>(i - db + j);
      rem[idx] = mod_floor(rem[idx] - t * b[static_cast<size_t>(j)], m);
    }
  }
  normalize(quo, m);
  normalize(rem, m);
  return {quo, rem};
}

inline Vec mod(const Vec& a, const Vec& b, const Int& m) { return divmod(a, b, m).second; }

inline Vec div_exact(const Vec& a, const Vec& b, const Int& m) {
  auto [q, r] = divmod(a, b, m);
  if (!is_zero(r)) fail(errc::bad_argument, "inexact polynomial division mod m");
  return q;
}

inline Vec make_monic(const Vec& a, const Int& p) {
  if (is_zero(a) || a.back() == 1) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

// p prime.
inline Vec gcd(Vec a, Vec b, const Int& p) {
  while (!is_zero(b)) {
    Vec r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

// Extended gcd over F_p: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<Vec, Vec, Vec> xgcd(Vec a, Vec b, const Int& p) {
  Vec s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
  normalize(a, p);
  normalize(b, p);
  while (!is_zero(b)) {
    auto [q, r] = divmod(a, b, p);
    Vec s2 = sub(s0, mul(q, s1, p), p);
    Vec t2 = sub(t0, mul(q, t1, p), p);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!is_zero(a) && a.back() != 1) {
    Int inv = inv_mod(a.back(), p);
    a = scale(a, inv, p);
    s0 = scale(s0, inv, p);
    t0 = scale(t0, inv, p);
  }
  return {a, s0, t0};
}

inline Vec powmod(Vec a, Int e, const Vec& f, const Int& p) {
  Vec r{Int(1)};
  a = mod(a, f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, a, p), f, p);
    a = mod(mul(a, a, p), f, p);
    e >>= 1;
  }
  return r;
}

inline Vec derivative(const Vec& a, const Int& m) {
  if (a.size() <= 1) return {};
  Vec r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Int(static_cast<long>(i));
  normalize(r, m);
  return r;
}

// c(x) = u(x)^p over F_p implies c has support on exponents divisible by p
// and u_j = c_{jp} (Frobenius fixes F_p).
inline Vec pth_root(const Vec& c, const Int& p) {
  if (is_zero(c)) return {};
  if (!p.fits_ulong_p()) fail(errc::bad_argument, "pth_root: prime too large");
  const auto pu = p.get_ui();
  Vec u((c.size() - 1) / pu + 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (i % pu != 0) fail(errc::bad_argument, "pth_root: polynomial is not a p-th power");
    u[i / pu] = c[i];
  }
  return u;
}

// Squarefree decomposition over F_p, including the inseparable (p-th power)
// branch. Returns pairs (monic squarefree factor, multiplicity).
inline std::vector<std::pair<Vec, long>> squarefree_decomposition(Vec f, const Int& p) {
  std::vector<std::pair<Vec, long>> out;
  f = make_monic(f, p);
  if (deg(f) <= 0) return out;
  Vec fp = derivative(f, p);
  if (is_zero(fp)) {
    Vec u = pth_root(f, p);
    for (auto& [g, m] : squarefree_decomposition(u, p)) out.emplace_back(g, m * p.get_si());
    return out;
  }
  Vec c = gcd(f, fp, p);
  Vec w = div_exact(f, c, p);
  long i = 1;
  while (!is_one(w)) {
    Vec y = gcd(w, c, p);
    Vec z = div_exact(w, y, p);
    if (deg(z) > 0) out.emplace_back(make_monic(z, p), i);
    ++i;
    w = std::move(y);
    c = div_exact(c, w, p);
  }
  if (!is_one(c)) {
    Vec u = pth_root(c, p);
    for (auto& [g, m] : squarefree_decomposition(u, p)) out.emplace_back(g, m * p.get_si());
  }
  return out;
}

// Distinct-degree factorization of a monic squarefree polynomial: returns
// (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<Vec, long>> distinct_degree(Vec g, const Int& p) {
  std::vector<std::pair<Vec, long>> out;
  Vec x{Int(0), Int(1)};
  Vec w = mod(x, g, p);
  long d = 0;
  while (deg(g) >= 2 * (d + 1)) {
    ++d;
    w = powmod(w, p, g, p);
    Vec c = gcd(g, sub(w, x, p), p);
    if (deg(c) > 0) {
      out.emplace_back(c, d);
      g = div_exact(g, c, p);
      w = mod(w, g, p);
    }
  }
  if (deg(g) > 0) out.emplace_back(g, deg(g));
  return out;
}

namespace detail {

// Deterministic candidate stream: base-p digits of (n + p) as coefficients,
// constant term first. The offset keeps every candidate at degree >= 1.
inline Vec nth_candidate(unsigned long n, const Int& p) {
  Vec v;
  Int t = Int(static_cast<long>(n)) + p;
  while (t > 0) {
    v.push_back(mod_floor(t, p));
    t /= p;
  }
  return v;
}

inline void edf_split(const Vec& h, long d, const Int& p, std::vector<Vec>& out) {
  if (deg(h) == d) {
    out.push_back(make_monic(h, p));
    return;
  }
  for (unsigned long n = 1; n < 100000; ++n) {
    Vec a = mod(nth_candidate(n, p), h, p);
    if (deg(a) < 1) continue;
    Vec g;
    if (p == 2) {
      // trace map over F_{2^d}
      Vec t = a;
      Vec acc = a;
      for (long j = 1; j < d; ++j) {
        t = mod(mul(t, t, p), h, p);
        acc = add(acc, t, p);
      }
      g = gcd(h, acc, p);
    } else {
      Int e = (pow_int(p, static_cast<unsigned long>(d)) - 1) / 2;
      Vec b = powmod(a, e, h, p);
      g = gcd(h, sub(b, Vec{Int(1)}, p), p);
    }
    if (deg(g) > 0 && deg(g) < deg(h)) {
      edf_split(g, d, p, out);
      edf_split(div_exact(h, g, p), d, p, out);
      return;
    }
  }
  fail(errc::bad_argument, "equal-degree splitting did not terminate");
}

} // namespace detail

inline std::vector<Vec> equal_degree(const Vec& h, long d, const Int& p) {
  std::vector<Vec> out;
  detail::edf_split(h, d, p, out);
  return out;
}

inline bool factor_key_less(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Full factorization of f over F_p into monic irreducibles with
// multiplicities, sorted by (degree, coefficient list) — the canonical order
// used for place labeling.
inline std::vector<std::pair<IntPoly, long>> factor_mod_p(const IntPoly& f, const Int& p) {
  Vec fv = from_intpoly(f, p);
  if (deg(fv) < 1) fail(errc::bad_argument, "factor_mod_p: constant image mod p");
  std::vector<std::pair<Vec, long>> irr;
  for (const auto& [sf, mult] : squarefree_decomposition(fv, p)) {
    for (const auto& [prod, d] : distinct_degree(sf, p)) {
      for (const auto& g : equal_degree(prod, d, p)) irr.emplace_back(g, mult);
    }
  }
  std::sort(irr.begin(), irr.end(),
            [](const auto& a, const auto& b) { return factor_key_less(a.first, b.first); });
  std::vector<std::pair<IntPoly, long>> out;
  out.reserve(irr.size());
  for (auto& [g, m] : irr) out.emplace_back(to_intpoly(g), m);
  return out;
}

// One quadratic Hensel step: from modulus m to m^2. Inputs satisfy
// f = g*h (mod m), s*g + t*h = 1 (mod m), g, h monic, deg s < deg h,
// deg t < deg g. Outputs satisfy the same identities mod m^2.
struct HenselPair {
  Vec g, h, s, t;
};

inline HenselPair hensel_step(const IntPoly& f, const HenselPair& in, const Int& m) {
  const Int M = m * m;
  Vec fv = from_intpoly(f, M);
  Vec g = in.g, h = in.h, s = in.s, t = in.t;
  normalize(g, M);
  normalize(h, M);
  normalize(s, M);
  normalize(t, M);

  Vec e = sub(fv, mul(g, h, M), M);
  auto [q, r] = divmod(mul(s, e, M), h, M);
  Vec h1 = add(h, r, M);
  Vec dg = div_exact(sub(e, mul(g, r, M), M), h, M);
  Vec g1 = add(g, dg, M);
  assert(is_zero(sub(fv, mul(g1, h1, M), M)));

  Vec b = sub(add(mul(s, g1, M), mul(t, h1, M), M), Vec{Int(1)}, M);
  auto [q2, ds] = divmod(sub(Vec{}, mul(b, s, M), M), h1, M);
  Vec s1 = add(s, ds, M);
  Vec dt = div_exact(sub(sub(Vec{}, b, M), mul(ds, g1, M), M), h1, M);
  Vec t1 = add(t, dt, M);
  assert(is_one(add(mul(s1, g1, M), mul(t1, h1, M), M)));
  (void)q;
  (void)q2;
  return {g1, h1, s1, t1};
}

// Lifts the coprime factorization f = g0*h0 (mod p) to modulus p^k.
// f monic over Z; g0, h0 monic mod p with gcd(g0, h0) = 1 in F_p[x].
inline std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const Vec& g0, const Vec& h0,
                                                    const Int& p, long k) {
  auto [d, s, t] = xgcd(g0, h0, p);
  if (!is_one(d)) fail(errc::bad_argument, "hensel_lift_pair: factors not coprime mod p");
  HenselPair hp{g0, h0, s, t};
  Int m = p;
  Int target = pow_int(p, static_cast<unsigned long>(k));
  while (m < target) {
    hp = hensel_step(f, hp, m);
    m *= m;
  }
  Vec g = hp.g, h = hp.h;
  normalize(g, target);
  normalize(h, target);
  return {to_intpoly(g), to_intpoly(h)};
}

namespace detail {

inline void lift_split(const IntPoly& F, const std::vector<Vec>& factors, size_t lo, size_t hi,
                       const Int& p, long k, std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(F);
    return;
  }
  const size_t mid = lo + (hi - lo) / 2;
  Vec u{Int(1)}, v{Int(1)};
  for (size_t i = lo; i < mid; ++i) u = mul(u, factors[i], p);
  for (size_t i = mid; i < hi; ++i) v = mul(v, factors[i], p);
  auto [U, V] = hensel_lift_pair(F, u, v, p, k);
  lift_split(U, factors, lo, mid, p, k, out);
  lift_split(V, factors, mid, hi, p, k, out);
}

} // namespace detail

// Lifts a pairwise-coprime mod-p factorization of monic f to mod p^k;
// factor i of the output reduces to factors[i] mod p.
inline std::vector<IntPoly> hensel_lift_factors(const IntPoly& f, const std::vector<Vec>& factors,
                                                const Int& p, long k) {
  std::vector<IntPoly> out;
  if (factors.empty()) return out;
  Int target = pow_int(p, static_cast<unsigned long>(k));
  Vec fv = from_intpoly(f, target);
  detail::lift_split(to_intpoly(fv), factors, 0, factors.size(), p, k, out);
  return out;
}

} // namespace modp
} // namespace conmap

#endif
