#ifndef CONMAP_PLACES_HPP
#define CONMAP_PLACES_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "field.hpp"

namespace conmap {

// ---------------------------------------------------------------------
// Non-Archimedean places of a monogenic number field over a rational
// prime p not dividing the index [O_K : Z[theta]] (Dedekind's criterion).
// A place is identified by the reduced monic local factor g of f mod p;
// places above p are listed in the canonical order (degree of g, then its
// coefficient list constant-term first, coefficients in [0,p)).
// ---------------------------------------------------------------------

class Place {
public:
  // Shared per-place data; kept free of a field back-reference so the
  // per-field place cache cannot form an ownership cycle.
  struct LocalData {
    Int p;
    int index = 0;
    IntPoly g; // reduced monic local factor of f mod p
    int e = 1;
    int f = 1;
    bool whole = false; // single place above p: the p-adic factor is f itself
    mutable std::mutex mu;
    mutable IntPoly lifted; // factor of f mod p^lifted_k reducing to g^e
    mutable long lifted_k = 0;
  };

  Place() = default;
  Place(NumberField field, std::shared_ptr<const LocalData> data)
      : field_(std::move(field)), data_(std::move(data)) {}

  const NumberField& field() const { return field_; }
  const Int& prime() const { return data_->p; }
  int index() const { return data_->index; }
  const IntPoly& local_factor() const { return data_->g; }
  int ramification() const { return data_->e; }
  int residue_degree() const { return data_->f; }
  int local_degree() const { return data_->e * data_->f; }
  bool valid() const { return data_ != nullptr; }
  const LocalData* local() const { return data_.get(); }

  bool same_as(const Place& o) const {
    return data_ == o.data_ ||
           (field_.same_as(o.field_) && data_->p == o.data_->p && data_->index == o.data_->index);
  }

private:
  NumberField field_;
  std::shared_ptr<const LocalData> data_;
};

struct PlacesCache {
  std::map<Int, std::vector<std::shared_ptr<const Place::LocalData>>> by_prime;
};

namespace detail {

// Dedekind's criterion: with fbar = prod gbar_i^{e_i}, gbar = prod gbar_i,
// hbar = fbar/gbar and T = (lift(gbar)*lift(hbar) - f)/p, the order Z[theta]
// is p-maximal iff gcd(Tbar, gbar, hbar) = 1 in F_p[x].
inline bool dedekind_p_maximal(const IntPoly& f, const Int& p,
                               const std::vector<std::pair<IntPoly, long>>& factors) {
  modp::Vec gbar{Int(1)}, hbar{Int(1)};
  for (const auto& [gi, e] : factors) {
    modp::Vec gv = modp::from_intpoly(gi, p);
    gbar = modp::mul(gbar, gv, p);
    for (long j = 1; j < e; ++j) hbar = modp::mul(hbar, gv, p);
  }
  IntPoly g_lift = modp::to_intpoly(gbar);
  IntPoly h_lift = modp::to_intpoly(hbar);
  IntPoly num = g_lift * h_lift - f;
  std::vector<Int> t;
  t.reserve(num.coeffs().size());
  for (const auto& c : num.coeffs()) {
    if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
      fail(errc::bad_argument, "dedekind: lift mismatch");
    t.push_back(c / p);
  }
  modp::Vec tbar = modp::from_intpoly(IntPoly(std::move(t)), p);
  modp::Vec d = modp::gcd(modp::gcd(tbar, gbar, p), hbar, p);
  return modp::is_one(d);
}

} // namespace detail

inline std::vector<Place> places_above(const NumberField& k, const Int& p) {
  if (p <= 1 || !is_probable_prime(p))
    fail(errc::bad_argument, "places_above: " + p.get_str() + " is not prime");
  auto materialize = [&k](const std::vector<std::shared_ptr<const Place::LocalData>>& data) {
    std::vector<Place> out;
    out.reserve(data.size());
    for (const auto& d : data) out.emplace_back(k, d);
    return out;
  };
  {
    std::lock_guard<std::mutex> lock(k.impl()->mu);
    if (k.impl()->places) {
      auto it = k.impl()->places->by_prime.find(p);
      if (it != k.impl()->places->by_prime.end()) return materialize(it->second);
    }
  }

  auto factors = modp::factor_mod_p(k.poly(), p);
  if (!detail::dedekind_p_maximal(k.poly(), p, factors))
    fail(errc::non_maximal_order, "prime " + p.get_str() +
                                      " divides the index of Z[theta] in " + k.poly().to_string());

  std::vector<std::shared_ptr<const Place::LocalData>> data;
  long degree_sum = 0;
  const bool whole = factors.size() == 1;
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& [g, e] = factors[i];
    const int fdeg = g.degree();
    degree_sum += e * fdeg;
    auto ld = std::make_shared<Place::LocalData>();
    ld->p = p;
    ld->index = static_cast<int>(i);
    ld->g = g;
    ld->e = static_cast<int>(e);
    ld->f = fdeg;
    ld->whole = whole;
    data.push_back(std::move(ld));
  }
  if (degree_sum != k.degree()) fail(errc::bad_argument, "degree sum violation");

  std::lock_guard<std::mutex> lock(k.impl()->mu);
  if (!k.impl()->places) k.impl()->places = std::make_shared<PlacesCache>();
  auto [it, inserted] = k.impl()->places->by_prime.emplace(p, std::move(data));
  (void)inserted;
  return materialize(it->second);
}

inline Place place_by_index(const NumberField& k, const Int& p, int index) {
  auto ws = places_above(k, p);
  if (index < 0 || index >= static_cast<int>(ws.size()))
    fail(errc::bad_argument, "place index " + std::to_string(index) + " out of range above " +
                                 p.get_str());
  return ws[static_cast<size_t>(index)];
}

inline Place unique_place_of_rationals(const NumberField& q, const Int& p) {
  if (q.degree() != 1) fail(errc::bad_argument, "expected the degree-1 field");
  return places_above(q, p).at(0);
}

// ---------------------------------------------------------------------
// Valuations. v_w is normalized by v_w(p) = e_w. For an integer-coordinate
// element B(theta), f_w * v_w(B) equals the p-adic valuation of
// Res(G_w, B) where G_w is the p-adic local factor of f at w; G_w is
// approximated by a Hensel lift of g_w^{e_w}, with the precision escalated
// until the resultant valuation is certified (v_p(Res) < k).
// ---------------------------------------------------------------------

struct ValuationResult {
  long value = 0;      // v_w(alpha), v_w(p) = e_w
  long precision = 0;  // p-adic digits used (0: exact route)
};

namespace detail {

inline IntPoly lifted_local_factor(const Place& w, long k) {
  const auto* im = w.local();
  std::lock_guard<std::mutex> lock(im->mu);
  if (im->lifted_k >= k) {
    Int pk = pow_int(im->p, static_cast<unsigned long>(k));
    modp::Vec v = modp::from_intpoly(im->lifted, pk);
    return modp::to_intpoly(v);
  }
  // group the mod-p factorization as g^e against its cofactor
  const IntPoly& f = w.field().poly();
  modp::Vec u{Int(1)};
  modp::Vec gv = modp::from_intpoly(im->g, im->p);
  for (int j = 0; j < im->e; ++j) u = modp::mul(u, gv, im->p);
  modp::Vec fv = modp::from_intpoly(f, im->p);
  modp::Vec cof = modp::div_exact(fv, u, im->p);
  IntPoly lifted;
  if (modp::deg(cof) == 0) {
    lifted = f; // single place: the p-adic factor is f itself
  } else {
    lifted = modp::hensel_lift_pair(f, u, cof, im->p, k).first;
  }
  im->lifted = lifted;
  im->lifted_k = k;
  return lifted;
}

} // namespace detail

constexpr long kValuationStartPrecision = 8;
constexpr long kValuationPrecisionCap = 512;

inline ValuationResult valuation(const FieldElement& alpha, const Place& w) {
  if (!alpha.field().same_as(w.field()))
    fail(errc::field_mismatch, "valuation: element and place fields differ");
  if (alpha.is_zero()) fail(errc::zero_element, "valuation of zero");
  const Int& p = w.prime();

  auto [coords, den] = detail::clear_element(alpha);
  IntPoly b(coords);
  const long den_shift = static_cast<long>(w.ramification()) * valuation_int(den, p);

  // single place above p: Res(f, B) is exact, no lifting needed
  if (w.local()->whole) {
    Int r = resultant_int(w.field().poly(), b);
    if (r == 0) fail(errc::bad_argument, "valuation: resultant vanished");
    long m = valuation_int(r, p);
    if (m % w.residue_degree() != 0) fail(errc::bad_argument, "valuation: f_w does not divide m");
    return {m / w.residue_degree() - den_shift, 0};
  }

  for (long k = kValuationStartPrecision; k <= kValuationPrecisionCap; k *= 2) {
    IntPoly h = detail::lifted_local_factor(w, k);
    Rat rr = resultant(RatPoly(h), RatPoly(b));
    if (rr.get_den() != 1) fail(errc::bad_argument, "valuation: non-integral resultant");
    Int r = rat_num(rr);
    if (r == 0) continue; // valuation >= precision; escalate
    long m = valuation_int(r, p);
    if (m < k) {
      if (m % w.residue_degree() != 0)
        fail(errc::bad_argument, "valuation: f_w does not divide m");
      return {m / w.residue_degree() - den_shift, k};
    }
  }
  fail(errc::precision_overflow, "valuation precision cap exceeded at p=" + p.get_str());
}

enum class LogNormalization { absolute, field };

// log_p ||alpha||_w = -v_w(alpha)/e_w ("absolute"), or
// log_p |alpha|_w = -(e_w f_w/[K:Q]) v_w(alpha)/e_w ("field"); exact
// rationals in units of log p.
inline Rat log_abs(const FieldElement& alpha, const Place& w, LogNormalization mode) {
  const long v = valuation(alpha, w).value;
  Rat base = make_rat(Int(-v), Int(w.ramification()));
  if (mode == LogNormalization::absolute) return base;
  return base * make_rat(Int(w.local_degree()), Int(alpha.field().degree()));
}

} // namespace conmap

#endif
