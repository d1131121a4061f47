#ifndef CONMAP_FIELD_HPP
#define CONMAP_FIELD_HPP

#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "modp.hpp"
#include "poly.hpp"

namespace conmap {

// ---------------------------------------------------------------------
// Irreducibility over Q for monic integer polynomials (degree <= 8):
// squarefree check, integer roots, mod-p degree analysis, then a bounded
// Zassenhaus recombination when the modular patterns stay ambiguous.
// ---------------------------------------------------------------------

struct IrreducibilityResult {
  bool irreducible = false;
  IntPoly witness; // a proper factor when reducible
};

namespace detail {

inline IntPoly integer_primitive(const RatPoly& g) {
  auto [ip, den] = g.clear_denominators();
  (void)den;
  Int c = ip.content();
  if (c == 0) return ip;
  std::vector<Int> r;
  r.reserve(ip.coeffs().size());
  for (const auto& v : ip.coeffs()) r.push_back(v / c);
  IntPoly out{std::move(r)};
  if (out.lc() < 0) out = -out;
  return out;
}

inline Int poly_max_abs_coeff(const IntPoly& f) {
  Int h(0);
  for (const auto& c : f.coeffs()) {
    Int a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

} // namespace detail

inline IrreducibilityResult check_irreducible_monic(const IntPoly& f) {
  const int n = f.degree();
  if (n <= 0) fail(errc::bad_argument, "irreducibility of a constant");
  if (n == 1) return {true, {}};

  RatPoly fq(f);
  RatPoly g = gcd_ratpoly(fq, RatPoly(f.derivative()));
  if (g.degree() >= 1) return {false, detail::integer_primitive(g)};

  // Integer roots divide the constant term (monic).
  Int a0 = f.coeff(0);
  if (a0 == 0) return {false, IntPoly::x()};
  {
    std::vector<Int> divisors;
    Int bound = abs(a0);
    for (Int t(1); t * t <= bound; ++t) {
      if (mpz_divisible_p(bound.get_mpz_t(), t.get_mpz_t())) {
        divisors.push_back(t);
        divisors.push_back(bound / t);
      }
    }
    for (const auto& t : divisors) {
      if (f.evaluate(t) == 0) return {false, IntPoly({Int(-t), Int(1)})};
      Int mt = -t;
      if (f.evaluate(mt) == 0) return {false, IntPoly({t, Int(1)})};
    }
  }

  Int disc = discriminant(f);
  // Degree analysis over several good primes.
  std::vector<bool> possible(static_cast<size_t>(n) + 1, true); // proper factor degrees 1..n-1
  Int p(1);
  int used = 0;
  std::vector<std::pair<Int, std::vector<long>>> patterns;
  while (used < 6) {
    p = next_prime_after(p);
    if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
    auto factors = modp::factor_mod_p(f, p);
    if (factors.size() == 1) return {true, {}};
    std::vector<long> degs;
    for (const auto& [gp, m] : factors) {
      (void)m;
      degs.push_back(gp.degree());
    }
    patterns.emplace_back(p, degs);
    // subset sums achievable mod p
    std::vector<bool> reach(static_cast<size_t>(n) + 1, false);
    reach[0] = true;
    for (long dgr : degs)
      for (int s = n; s >= dgr; --s)
        if (reach[static_cast<size_t>(s - dgr)]) reach[static_cast<size_t>(s)] = true;
    for (int s = 1; s < n; ++s)
      if (!reach[static_cast<size_t>(s)]) possible[static_cast<size_t>(s)] = false;
    bool any = false;
    for (int s = 1; s < n; ++s) any = any || possible[static_cast<size_t>(s)];
    if (!any) return {true, {}};
    ++used;
  }

  // Zassenhaus recombination with the prime giving the fewest factors.
  size_t best = 0;
  for (size_t i = 1; i < patterns.size(); ++i)
    if (patterns[i].second.size() < patterns[best].second.size()) best = i;
  Int zp = patterns[best].first;
  auto fac = modp::factor_mod_p(f, zp);
  std::vector<modp::Vec> base;
  for (const auto& [gp, m] : fac) {
    (void)m;
    base.push_back(modp::from_intpoly(gp, zp));
  }

  // Coefficient bound for monic factors (coarse Mignotte-type bound).
  Int h = detail::poly_max_abs_coeff(f);
  Int B = pow_int(Int(2), static_cast<unsigned long>(n)) * (h + 1) * Int(n + 1);
  long k = 1;
  Int pk = zp;
  while (pk <= 2 * B) {
    pk *= zp;
    ++k;
  }
  auto lifted = modp::hensel_lift_factors(f, base, zp, k);
  Int modulus = pow_int(zp, static_cast<unsigned long>(k));
  const size_t r = lifted.size();
  auto symmetric = [&](const Int& c) {
    Int v = mod_floor(c, modulus);
    if (2 * v > modulus) v -= modulus;
    return v;
  };
  for (unsigned long mask = 1; mask + 1 < (1ul << r); ++mask) {
    if (2 * static_cast<unsigned long>(__builtin_popcountl(mask)) > r) continue;
    long degsum = 0;
    for (size_t i = 0; i < r; ++i)
      if (mask & (1ul << i)) degsum += lifted[i].degree();
    if (degsum <= 0 || degsum >= n || !possible[static_cast<size_t>(degsum)]) continue;
    modp::Vec prod{Int(1)};
    for (size_t i = 0; i < r; ++i)
      if (mask & (1ul << i)) prod = modp::mul(prod, modp::from_intpoly(lifted[i], modulus), modulus);
    std::vector<Int> cand(prod.size());
    for (size_t i = 0; i < prod.size(); ++i) cand[i] = symmetric(prod[i]);
    IntPoly gcand(std::move(cand));
    if (!gcand.is_monic()) continue;
    auto [q, rem] = f.divmod_monic(gcand);
    if (rem.is_zero()) return {false, gcand};
    (void)q;
  }
  return {true, {}};
}

// ---------------------------------------------------------------------
// Number fields in monogenic presentation Q[x]/(f).
// ---------------------------------------------------------------------

enum class FieldFamily { rationals, quadratic, biquadratic, cyclotomic, general };

struct FamilyTag {
  FieldFamily kind = FieldFamily::general;
  Int a, b;   // biquadratic: generator is sqrt(a) + sqrt(b)
  long m = 0; // cyclotomic conductor
};

struct PlacesCache; // defined in places.hpp

class NumberField {
public:
  NumberField() = default;

  int degree() const { return impl_->n; }
  const IntPoly& poly() const { return impl_->f; }
  const Int& disc() const { return impl_->disc; }
  const FamilyTag& family() const { return impl_->family; }
  bool valid() const { return impl_ != nullptr; }

  bool same_as(const NumberField& o) const { return impl_ == o.impl_ || impl_->f == o.impl_->f; }

  struct Impl {
    IntPoly f;
    int n = 0;
    Int disc;
    FamilyTag family;
    mutable std::mutex mu;
    mutable std::shared_ptr<PlacesCache> places;
  };
  const Impl* impl() const { return impl_.get(); }

  static NumberField create(IntPoly f, FamilyTag tag);

private:
  std::shared_ptr<Impl> impl_;
};

constexpr int kMaxFieldDegree = 8;

inline IntPoly cyclotomic_poly(long m);

inline long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

namespace detail {

// Recognizes the declared Galois families from the bare polynomial so that
// fields reconstructed from serialized specs keep their automorphisms.
inline FamilyTag detect_family(const IntPoly& f) {
  FamilyTag tag;
  const int n = f.degree();
  if (n == 1) {
    tag.kind = FieldFamily::rationals;
    return tag;
  }
  if (n == 2) {
    tag.kind = FieldFamily::quadratic;
    return tag;
  }
  for (long m = 3; m <= 30; ++m) {
    if (euler_phi(m) != n) continue;
    if (cyclotomic_poly(m) == f) {
      tag.kind = FieldFamily::cyclotomic;
      tag.m = m;
      return tag;
    }
  }
  if (n == 4 && f.coeff(1) == 0 && f.coeff(3) == 0) {
    // x^4 - 2(a+b)x^2 + (a-b)^2 with integers a != b
    Int c2 = f.coeff(2), c0 = f.coeff(0);
    if (c0 > 0 && mpz_perfect_square_p(c0.get_mpz_t())) {
      Int s;
      mpz_sqrt(s.get_mpz_t(), c0.get_mpz_t());
      Int sum = -c2; // 2(a+b)
      if (mpz_even_p(sum.get_mpz_t())) {
        Int ab2 = sum / 2; // a + b
        if (mod_floor(ab2 + s, Int(2)) == 0) {
          tag.kind = FieldFamily::biquadratic;
          tag.a = (ab2 + s) / 2;
          tag.b = (ab2 - s) / 2;
          if (tag.a != tag.b) return tag;
          tag = FamilyTag{};
        }
      }
    }
  }
  return tag;
}

} // namespace detail

inline NumberField NumberField::create(IntPoly f, FamilyTag tag) {
  if (f.degree() < 1) fail(errc::bad_argument, "defining polynomial must be non-constant");
  if (!f.is_monic()) fail(errc::not_monic, "defining polynomial must be monic: " + f.to_string());
  if (f.degree() > kMaxFieldDegree)
    fail(errc::degree_too_large, "degree " + std::to_string(f.degree()) + " exceeds cap " +
                                     std::to_string(kMaxFieldDegree));
  auto check = check_irreducible_monic(f);
  if (!check.irreducible)
    fail(errc::reducible, "reducible defining polynomial " + f.to_string() + "; factor " +
                              check.witness.to_string());
  if (tag.kind == FieldFamily::general) tag = detail::detect_family(f);
  NumberField k;
  k.impl_ = std::make_shared<Impl>();
  k.impl_->n = f.degree();
  k.impl_->disc = discriminant(f);
  k.impl_->f = std::move(f);
  k.impl_->family = std::move(tag);
  return k;
}

inline NumberField make_field(IntPoly f) { return NumberField::create(std::move(f), {}); }
inline NumberField make_field(const std::string& s) { return make_field(parse_poly(s)); }

inline NumberField make_rationals() { return make_field(IntPoly::x()); }

inline NumberField make_quadratic(const Int& d) {
  return make_field(IntPoly({Int(-d), Int(0), Int(1)}));
}

// Minimal polynomial of sqrt(a) + sqrt(b): x^4 - 2(a+b)x^2 + (a-b)^2.
inline NumberField make_biquadratic(const Int& a, const Int& b) {
  if (a == b) fail(errc::bad_argument, "biquadratic generators must be distinct");
  FamilyTag tag;
  tag.kind = FieldFamily::biquadratic;
  tag.a = a;
  tag.b = b;
  Int s = a + b;
  Int q = (a - b) * (a - b);
  return NumberField::create(IntPoly({q, Int(0), Int(-2) * s, Int(0), Int(1)}), tag);
}

inline IntPoly cyclotomic_poly(long m) {
  std::vector<Int> xm(static_cast<size_t>(m) + 1, Int(0));
  xm[0] = -1;
  xm[static_cast<size_t>(m)] = 1;
  IntPoly f(std::move(xm));
  for (long d = 1; d < m; ++d)
    if (m % d == 0) f = f.div_exact_monic(cyclotomic_poly(d));
  return f;
}

inline NumberField make_cyclotomic(long m) {
  if (m < 1) fail(errc::bad_argument, "cyclotomic conductor must be positive");
  if (euler_phi(m) > kMaxFieldDegree)
    fail(errc::degree_too_large, "phi(" + std::to_string(m) + ") exceeds degree cap");
  FamilyTag tag;
  tag.kind = FieldFamily::cyclotomic;
  tag.m = m;
  return NumberField::create(cyclotomic_poly(m), tag);
}

// ---------------------------------------------------------------------
// Field elements: coordinate vectors in the power basis of the generator.
// ---------------------------------------------------------------------

class FieldElement {
public:
  FieldElement() = default;
  FieldElement(NumberField k, std::vector<Rat> coords) : k_(std::move(k)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != k_.degree())
      fail(errc::bad_argument, "coordinate length does not match field degree");
  }

  const NumberField& field() const { return k_; }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.k_.same_as(b.k_) && a.c_ == b.c_;
  }

  RatPoly as_poly() const { return RatPoly(c_); }

  std::string to_string() const {
    RatPoly p(c_);
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
      Rat a = p.coeff(i);
      if (a == 0) continue;
      if (!out.empty()) out += a > 0 ? " + " : " - ";
      else if (a < 0) out += "-";
      Rat mag = abs(a);
      if (i == 0 || mag != 1) out += format_rat(mag);
      if (i >= 1) {
        if (mag != 1) out += "*";
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  NumberField k_;
  std::vector<Rat> c_;
};

inline FieldElement element_from_coords(const NumberField& k, std::vector<Rat> coords) {
  coords.resize(static_cast<size_t>(k.degree()), Rat(0));
  return FieldElement(k, std::move(coords));
}

inline FieldElement element_zero(const NumberField& k) {
  return FieldElement(k, std::vector<Rat>(static_cast<size_t>(k.degree()), Rat(0)));
}

inline FieldElement element_from_rational(const NumberField& k, const Rat& r) {
  std::vector<Rat> c(static_cast<size_t>(k.degree()), Rat(0));
  c[0] = r;
  return FieldElement(k, std::move(c));
}

inline FieldElement element_one(const NumberField& k) { return element_from_rational(k, Rat(1)); }

// The class of x in Q[x]/(f). For degree 1 that root is rational: -f(0).
inline FieldElement generator(const NumberField& k) {
  if (k.degree() == 1) return element_from_rational(k, Rat(-k.poly().coeff(0)));
  std::vector<Rat> c(static_cast<size_t>(k.degree()), Rat(0));
  c[1] = 1;
  return FieldElement(k, std::move(c));
}

namespace detail {

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field().same_as(b.field()))
    fail(errc::field_mismatch, "elements belong to different fields");
}

inline FieldElement reduce_mod_f(const NumberField& k, const RatPoly& p) {
  RatPoly r = p.divmod(RatPoly(k.poly())).second;
  std::vector<Rat> c(static_cast<size_t>(k.degree()), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) c[static_cast<size_t>(i)] = r.coeff(i);
  return FieldElement(k, std::move(c));
}

} // namespace detail

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  std::vector<Rat> c = a.coords();
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
  return FieldElement(a.field(), std::move(c));
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  std::vector<Rat> c = a.coords();
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coords()[i];
  return FieldElement(a.field(), std::move(c));
}

inline FieldElement operator-(const FieldElement& a) {
  std::vector<Rat> c = a.coords();
  for (auto& v : c) v = -v;
  return FieldElement(a.field(), std::move(c));
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return detail::reduce_mod_f(a.field(), a.as_poly() * b.as_poly());
}

inline FieldElement operator*(const Rat& s, const FieldElement& a) {
  std::vector<Rat> c = a.coords();
  for (auto& v : c) v *= s;
  return FieldElement(a.field(), std::move(c));
}

inline FieldElement inverse(const FieldElement& a) {
  if (a.is_zero()) fail(errc::division_by_zero, "inverse of zero");
  // extended Euclid in Q[x] against the (irreducible) defining polynomial
  RatPoly r0(RatPoly(a.field().poly())), r1 = a.as_poly();
  RatPoly s0, s1{std::vector<Rat>{Rat(1)}};
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    RatPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd is a nonzero constant
  Rat inv = Rat(1) / r0.coeff(0);
  return detail::reduce_mod_f(a.field(), inv * s0);
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return a * inverse(b);
}

inline FieldElement element_pow(FieldElement a, long e) {
  if (e < 0) {
    a = inverse(a);
    e = -e;
  }
  FieldElement acc = element_one(a.field());
  while (e) {
    if (e & 1) acc = acc * a;
    a = a * a;
    e >>= 1;
  }
  return acc;
}

enum class ArithOp { add, sub, mul, div };

inline FieldElement element_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div:
      if (b.is_zero()) fail(errc::division_by_zero, "division by zero element");
      return a / b;
  }
  fail(errc::bad_argument, "unknown arithmetic op");
}

// Evaluate an integer polynomial at a field element (Horner).
inline FieldElement evaluate_at(const IntPoly& p, const FieldElement& x) {
  FieldElement acc = element_zero(x.field());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    acc = acc + element_from_rational(x.field(), Rat(p.coeff(i)));
  }
  return acc;
}

inline FieldElement evaluate_at(const RatPoly& p, const FieldElement& x) {
  FieldElement acc = element_zero(x.field());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    acc = acc + element_from_rational(x.field(), p.coeff(i));
  }
  return acc;
}

// ---------------------------------------------------------------------
// Norm via the determinant of the multiplication matrix (fraction-free
// Bareiss after clearing denominators). The resultant route is kept in the
// test suite as an independent oracle.
// ---------------------------------------------------------------------

namespace detail {

// det of an n x n integer matrix, Bareiss elimination
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
  const size_t n = m.size();
  if (n == 0) return Int(1);
  Int sign(1);
  Int prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return Int(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = t / prev; // exact by Bareiss
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// multiply an integer coordinate vector by theta, reducing with monic f
inline std::vector<Int> theta_shift(const std::vector<Int>& c, const IntPoly& f) {
  const size_t n = c.size();
  std::vector<Int> r(n, Int(0));
  Int top = c[n - 1];
  for (size_t i = n - 1; i > 0; --i) r[i] = c[i - 1];
  r[0] = 0;
  if (top != 0)
    for (size_t i = 0; i < n; ++i) r[i] -= top * f.coeff(static_cast<int>(i));
  return r;
}

inline Int norm_integer_coords(const NumberField& k, const std::vector<Int>& coords) {
  const size_t n = static_cast<size_t>(k.degree());
  if (n == 1) return coords[0];
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  std::vector<Int> col = coords;
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) m[i][j] = col[i];
    if (j + 1 < n) col = theta_shift(col, k.poly());
  }
  return bareiss_det(std::move(m));
}

// clears denominators: returns integer coordinates and the common denominator
inline std::pair<std::vector<Int>, Int> clear_element(const FieldElement& a) {
  Int d(1);
  for (const auto& v : a.coords()) d = lcm_int(d, rat_den(v));
  std::vector<Int> c;
  c.reserve(a.coords().size());
  for (const auto& v : a.coords()) {
    Rat scaled = v * Rat(d);
    c.push_back(rat_num(scaled));
  }
  return {c, d};
}

} // namespace detail

inline Rat field_norm(const FieldElement& a) {
  auto [c, d] = detail::clear_element(a);
  Int num = detail::norm_integer_coords(a.field(), c);
  Int den = pow_int(d, static_cast<unsigned long>(a.field().degree()));
  return make_rat(num, den);
}

// Characteristic polynomial of the multiplication-by-a matrix over Q,
// monic, constant term first (Faddeev-LeVerrier).
inline std::vector<Rat> element_charpoly(const FieldElement& a) {
  const int n = a.field().degree();
  std::vector<std::vector<Rat>> m(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
  // columns: coordinates of a * theta^j
  FieldElement theta = generator(a.field());
  FieldElement col = a;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coords()[static_cast<size_t>(i)];
    if (j + 1 < n) col = col * theta;
  }
  std::vector<Rat> coeffs(static_cast<size_t>(n) + 1, Rat(0));
  coeffs[static_cast<size_t>(n)] = 1;
  std::vector<std::vector<Rat>> ak = m;
  Rat c = Rat(0);
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      // A_k = M (A_{k-1} + c I)
      std::vector<std::vector<Rat>> tmp = ak;
      for (int i = 0; i < n; ++i) tmp[static_cast<size_t>(i)][static_cast<size_t>(i)] += c;
      std::vector<std::vector<Rat>> next(static_cast<size_t>(n),
                                         std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            next[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                m[static_cast<size_t>(i)][static_cast<size_t>(l)] * tmp[static_cast<size_t>(l)][static_cast<size_t>(j)];
      ak = std::move(next);
    }
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += ak[static_cast<size_t>(i)][static_cast<size_t>(i)];
    c = -tr / Rat(k);
    coeffs[static_cast<size_t>(n - k)] = c;
  }
  return coeffs;
}

// True when every valuation of a above p is >= 0: integrality over Z_(p) is
// equivalent to p-integral characteristic-polynomial coefficients, which
// needs no place data and so works at index-dividing primes too.
inline bool element_integral_at(const FieldElement& a, const Int& p) {
  for (const auto& coeff : element_charpoly(a)) {
    if (valuation_int(rat_den(coeff), p) != 0) return false;
  }
  return true;
}

// True when a is a unit at every place above p.
inline bool element_unit_at(const FieldElement& a, const Int& p) {
  return element_integral_at(a, p) && element_integral_at(inverse(a), p);
}

// ---------------------------------------------------------------------
// Automorphisms (supported Galois families) and embeddings.
// ---------------------------------------------------------------------

class Automorphism {
public:
  Automorphism() = default;
  Automorphism(NumberField k, FieldElement image) : k_(std::move(k)), img_(std::move(image)) {
    if (!img_.field().same_as(k_)) fail(errc::field_mismatch, "automorphism image field mismatch");
    if (!evaluate_at(k_.poly(), img_).is_zero())
      fail(errc::bad_argument, "automorphism image is not a root of the defining polynomial");
  }

  const NumberField& field() const { return k_; }
  const FieldElement& generator_image() const { return img_; }

  FieldElement apply(const FieldElement& a) const {
    if (!a.field().same_as(k_)) fail(errc::field_mismatch, "automorphism applied across fields");
    return evaluate_at(a.as_poly(), img_);
  }

  Automorphism compose(const Automorphism& inner) const {
    // (this o inner)(x) = this(inner(x))
    return Automorphism(k_, apply(inner.img_));
  }

  bool is_identity() const { return img_ == generator(k_); }

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.k_.same_as(b.k_) && a.img_ == b.img_;
  }

private:
  NumberField k_;
  FieldElement img_;
};

inline Automorphism identity_automorphism(const NumberField& k) {
  return Automorphism(k, generator(k));
}

inline std::vector<Automorphism> automorphisms(const NumberField& k) {
  const auto& fam = k.family();
  std::vector<Automorphism> out;
  switch (fam.kind) {
    case FieldFamily::rationals: {
      out.push_back(identity_automorphism(k));
      return out;
    }
    case FieldFamily::quadratic: {
      out.push_back(identity_automorphism(k));
      // other root of x^2 + bx + c is -b - theta
      Rat b(k.poly().coeff(1));
      FieldElement conj = element_from_rational(k, -b) - generator(k);
      out.emplace_back(k, conj);
      return out;
    }
    case FieldFamily::biquadratic: {
      // theta = sqrt(a) + sqrt(b); theta^3 = (a+3b)sqrt(a) + (3a+b)sqrt(b)
      FieldElement th = generator(k);
      Rat den = Rat(2) * Rat(fam.b - fam.a);
      FieldElement s = (Rat(1) / den) * (element_pow(th, 3) - Rat(3 * fam.a + fam.b) * th);
      FieldElement t = th - s;
      for (int i = 0; i < 4; ++i) {
        FieldElement img = ((i & 1) ? -s : s) + ((i & 2) ? -t : t);
        out.emplace_back(k, img);
      }
      return out;
    }
    case FieldFamily::cyclotomic: {
      FieldElement zeta = generator(k);
      for (long a = 1; a < std::max<long>(fam.m, 2); ++a) {
        if (std::gcd(a, fam.m) != 1) continue;
        out.emplace_back(k, element_pow(zeta, a));
      }
      return out;
    }
    case FieldFamily::general:
      if (k.degree() == 1) {
        out.push_back(identity_automorphism(k));
        return out;
      }
      fail(errc::unsupported_family,
           "automorphisms unavailable for undeclared family of degree " +
               std::to_string(k.degree()));
  }
  fail(errc::unsupported_family, "unreachable family");
}

inline Automorphism inverse_of(const Automorphism& s) {
  for (const auto& t : automorphisms(s.field()))
    if (s.compose(t).is_identity()) return t;
  fail(errc::unsupported_family, "no inverse found in supported family");
}

// Ring embedding K -> L given by the image of K's generator.
class FieldEmbedding {
public:
  FieldEmbedding() = default;
  FieldEmbedding(NumberField source, NumberField target, FieldElement image)
      : k_(std::move(source)), l_(std::move(target)), img_(std::move(image)) {
    if (!img_.field().same_as(l_)) fail(errc::field_mismatch, "embedding image not in target");
    if (l_.degree() % k_.degree() != 0)
      fail(errc::bad_embedding, "target degree not divisible by source degree");
    if (!evaluate_at(k_.poly(), img_).is_zero())
      fail(errc::bad_embedding, "embedding image is not a root of the source polynomial");
  }

  const NumberField& source() const { return k_; }
  const NumberField& target() const { return l_; }
  const FieldElement& generator_image() const { return img_; }
  int relative_degree() const { return l_.degree() / k_.degree(); }

  FieldElement apply(const FieldElement& a) const {
    if (!a.field().same_as(k_)) fail(errc::field_mismatch, "embedding applied across fields");
    return evaluate_at(a.as_poly(), img_);
  }

private:
  NumberField k_;
  NumberField l_;
  FieldElement img_;
};

inline FieldEmbedding identity_embedding(const NumberField& k) {
  return FieldEmbedding(k, k, generator(k));
}

// Q embeds uniquely into every field.
inline FieldEmbedding embedding_from_rationals(const NumberField& q, const NumberField& l) {
  if (q.degree() != 1) fail(errc::bad_embedding, "source is not of degree 1");
  Rat root(-q.poly().coeff(0));
  return FieldEmbedding(q, l, element_from_rational(l, root));
}

inline FieldEmbedding compose(const FieldEmbedding& first, const FieldEmbedding& second) {
  if (!first.target().same_as(second.source()))
    fail(errc::bad_embedding, "embedding composition mismatch");
  return FieldEmbedding(first.source(), second.target(), second.apply(first.generator_image()));
}

} // namespace conmap

#endif
