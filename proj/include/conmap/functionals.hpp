#ifndef CONMAP_FUNCTIONALS_HPP
#define CONMAP_FUNCTIONALS_HPP

#include <set>

#include "consistent_map.hpp"
#include "log_linear.hpp"

namespace conmap {

// Primes that can carry a nonzero valuation of alpha: divisors of the norm
// of the cleared integer part together with divisors of the denominator.
// Candidates at which alpha is provably a unit (p-integral together with its
// inverse) are dropped, which keeps index-dividing primes out of play when
// they only appear through coordinate denominators.
inline std::set<Int> support_primes(const FieldElement& alpha) {
  if (alpha.is_zero()) fail(errc::zero_element, "support of zero");
  auto [coords, den] = detail::clear_element(alpha);
  Int nrm = detail::norm_integer_coords(alpha.field(), coords);
  std::set<Int> candidates;
  for (const auto& [p, e] : factor_integer(nrm)) {
    (void)e;
    candidates.insert(p);
  }
  for (const auto& [p, e] : factor_integer(den)) {
    (void)e;
    candidates.insert(p);
  }
  std::set<Int> out;
  for (const auto& p : candidates) {
    if (!element_unit_at(alpha, p)) out.insert(p);
  }
  return out;
}

// Phi_c(alpha^(1/n)) = (1/n) sum over places of c(K,v) * (-v_w(alpha)/e_v),
// the log p factors cancelling exactly. Root classes enter as (alpha, n)
// pairs; n = 1 is the plain functional.
inline Rat phi(const ConsistentMap& c, const FieldElement& alpha, long root_index = 1,
               const EvaluationContext& ctx = {}) {
  if (alpha.is_zero()) fail(errc::zero_element, "phi of zero");
  if (root_index < 1) fail(errc::bad_argument, "root index must be positive");
  const NumberField& k = alpha.field();
  Rat acc(0);
  for (const auto& p : support_primes(alpha)) {
    for (const auto& w : places_above(k, p)) {
      const long t = valuation(alpha, w).value;
      if (t == 0) continue;
      acc += evaluate(c, k, w, ctx) * make_rat(Int(-t), Int(w.ramification()));
    }
  }
  return acc / Rat(root_index);
}

struct PhiAgreement {
  bool agree = false;
  Rat via_source;
  Rat via_target;
};

// Phi must not depend on the field alpha is read in.
inline PhiAgreement phi_well_defined_check(const ConsistentMap& c, const FieldElement& alpha,
                                           const FieldEmbedding& iota,
                                           const EvaluationContext& ctx = {}) {
  if (!iota.source().same_as(alpha.field()))
    fail(errc::field_mismatch, "phi_well_defined_check: element not in embedding source");
  PhiAgreement out;
  EvaluationContext inner = ctx.with(iota);
  out.via_source = phi(c, alpha, 1, inner);
  out.via_target = phi(c, iota.apply(alpha), 1, inner);
  out.agree = out.via_source == out.via_target;
  return out;
}

// Classical prime omega function on Q^x: the signed exponent sum.
inline long omega_rational(const Rat& r) {
  if (r == 0) fail(errc::zero_argument, "omega of zero");
  long acc = 0;
  for (const auto& [p, e] : factor_integer(rat_num(r))) {
    (void)p;
    acc += e;
  }
  for (const auto& [p, e] : factor_integer(rat_den(r))) {
    (void)p;
    acc -= e;
  }
  return acc;
}

// Omega(Norm(alpha)) / [K:Q]; the canonical extension to S.
inline Rat omega_canonical(const FieldElement& alpha) {
  if (alpha.is_zero()) fail(errc::zero_argument, "omega of zero");
  Rat nrm = field_norm(alpha);
  return make_rat(Int(omega_rational(nrm)), Int(alpha.field().degree()));
}

struct OmegaExtensionCheck {
  bool extends = false;
  std::vector<std::pair<Int, Rat>> witnesses; // (p, c(Q,p))
};

// Phi_c extends the prime omega function iff c(Q, p) = -1 at every prime.
inline OmegaExtensionCheck extends_omega_check(const ConsistentMap& c,
                                               const std::vector<Int>& primes,
                                               const EvaluationContext& ctx = {}) {
  NumberField q = make_rationals();
  OmegaExtensionCheck out;
  out.extends = true;
  for (const auto& p : primes) {
    Rat v = evaluate_at_rational_prime(c, q, p, ctx);
    out.witnesses.emplace_back(p, v);
    if (v != -1) out.extends = false;
  }
  return out;
}

// ||alpha^(1/n)||_S as an exact log-linear value: the coefficient of log p
// is (1/n) * sum over w|p of (e_w f_w/[K:Q]) |v_w(alpha)|/e_w. Independent
// of the field alpha is read in.
inline LogLinearValue snorm(const FieldElement& alpha, long root_index = 1) {
  if (alpha.is_zero()) fail(errc::zero_argument, "snorm of zero");
  if (root_index < 1) fail(errc::bad_argument, "root index must be positive");
  const NumberField& k = alpha.field();
  LogLinearValue out;
  const Int nk(k.degree());
  for (const auto& p : support_primes(alpha)) {
    Rat coeff(0);
    for (const auto& w : places_above(k, p)) {
      long t = valuation(alpha, w).value;
      if (t == 0) continue;
      coeff += make_rat(Int(w.local_degree()), nk) * make_rat(Int(std::abs(t)), Int(w.ramification()));
    }
    out.add_term(p, coeff / Rat(root_index));
  }
  return out;
}

} // namespace conmap

#endif
