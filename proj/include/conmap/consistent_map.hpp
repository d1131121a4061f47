#ifndef CONMAP_CONSISTENT_MAP_HPP
#define CONMAP_CONSISTENT_MAP_HPP

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "towers.hpp"

namespace conmap {

// ---------------------------------------------------------------------
// Finite descriptions of consistent maps c : (K, v) -> Q with lazy
// evaluation. Four public shapes (degree-proportional, Galois-invariant
// base table, tower prefix, linear combination) plus a raw per-field table
// used to build deliberately inconsistent counterexamples in tests.
// ---------------------------------------------------------------------

struct PlaceRef {
  Int p;
  int index = 0;
  friend bool operator<(const PlaceRef& a, const PlaceRef& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.index < b.index;
  }
  friend bool operator==(const PlaceRef& a, const PlaceRef& b) {
    return a.p == b.p && a.index == b.index;
  }
};

inline PlaceRef ref_of(const Place& w) { return {w.prime(), w.index()}; }

// x : prime -> Q, finitely supported, with an optional default outside the
// listed support (absent default means 0).
struct DegreeProportionalSpec {
  std::map<Int, Rat> values;
  std::optional<Rat> default_value;

  Rat at(const Int& p) const {
    auto it = values.find(p);
    if (it != values.end()) return it->second;
    return default_value.value_or(Rat(0));
  }
};

inline DegreeProportionalSpec constant_prime_values(const Rat& x) {
  DegreeProportionalSpec s;
  s.default_value = x;
  return s;
}

struct GaloisInvariantBaseData {
  NumberField base;
  std::map<PlaceRef, Rat> table;
  DegreeProportionalSpec background;

  Rat base_value(const Place& v) const {
    auto it = table.find(ref_of(v));
    if (it != table.end()) return it->second;
    return background.at(v.prime()) *
           make_rat(Int(v.local_degree()), Int(base.degree()));
  }
};

struct TowerData {
  std::vector<NumberField> fields;     // fields[0] has degree 1
  std::vector<FieldEmbedding> steps;   // steps[i] : fields[i] -> fields[i+1]
  Int q;
  DegreeProportionalSpec x;
  std::vector<std::map<PlaceRef, Rat>> tables; // level i: all places of fields[i] over q
};

class ConsistentMap;

struct LinearCombinationData {
  std::vector<std::pair<Rat, ConsistentMap>> terms;
};

struct RawPlaceTableData {
  std::map<std::string, std::map<PlaceRef, Rat>> tables; // keyed by defining polynomial
  DegreeProportionalSpec background;
};

enum class MapKind { degree_proportional, galois_invariant_base, tower, linear_combination, raw_table };

class ConsistentMap {
public:
  using Data = std::variant<DegreeProportionalSpec, GaloisInvariantBaseData, TowerData,
                            LinearCombinationData, RawPlaceTableData>;

  ConsistentMap() = default;
  explicit ConsistentMap(Data d) : d_(std::make_shared<const Data>(std::move(d))) {}

  bool valid() const { return d_ != nullptr; }
  const Data& data() const { return *d_; }

  MapKind kind() const {
    switch (d_->index()) {
      case 0: return MapKind::degree_proportional;
      case 1: return MapKind::galois_invariant_base;
      case 2: return MapKind::tower;
      case 3: return MapKind::linear_combination;
      default: return MapKind::raw_table;
    }
  }

private:
  std::shared_ptr<const Data> d_;
};

inline ConsistentMap degree_proportional_map(DegreeProportionalSpec spec) {
  return ConsistentMap(ConsistentMap::Data(std::move(spec)));
}

// The map c(K, v) = -[K_v:Q_p]/[K:Q]; extends the prime omega function.
inline ConsistentMap canonical_omega_map() {
  return degree_proportional_map(constant_prime_values(Rat(-1)));
}

inline ConsistentMap zero_map() { return degree_proportional_map({}); }

inline ConsistentMap galois_invariant_base_map(NumberField base, std::map<PlaceRef, Rat> table,
                                               DegreeProportionalSpec background) {
  GaloisInvariantBaseData d{std::move(base), std::move(table), std::move(background)};
  return ConsistentMap(ConsistentMap::Data(std::move(d)));
}

inline ConsistentMap linear_combination_map(std::vector<std::pair<Rat, ConsistentMap>> terms) {
  return ConsistentMap(ConsistentMap::Data(LinearCombinationData{std::move(terms)}));
}

inline ConsistentMap combine(std::vector<std::pair<Rat, ConsistentMap>> terms) {
  return linear_combination_map(std::move(terms));
}

inline ConsistentMap raw_table_map(RawPlaceTableData d) {
  return ConsistentMap(ConsistentMap::Data(std::move(d)));
}

// Registered embeddings available during evaluation; maps error with
// no_common_overfield when no route through these exists.
struct EvaluationContext {
  std::vector<FieldEmbedding> embeddings;
  long search_bound = kDefaultSinglePlaceBound;

  std::optional<FieldEmbedding> find(const NumberField& from, const NumberField& to) const {
    for (const auto& e : embeddings)
      if (e.source().same_as(from) && e.target().same_as(to)) return e;
    return std::nullopt;
  }

  EvaluationContext with(const FieldEmbedding& e) const {
    EvaluationContext c = *this;
    c.embeddings.push_back(e);
    return c;
  }
};

Rat evaluate(const ConsistentMap& c, const NumberField& f, const Place& u,
             const EvaluationContext& ctx = {});

namespace detail {

inline Rat degree_proportional_value(const DegreeProportionalSpec& x, const Place& u) {
  return x.at(u.prime()) * make_rat(Int(u.local_degree()), Int(u.field().degree()));
}

inline Rat evaluate_gifb(const GaloisInvariantBaseData& d, const Place& u,
                         const EvaluationContext& ctx) {
  const NumberField& f = u.field();
  const NumberField& k = d.base;
  if (f.same_as(k)) return d.base_value(u);
  // Away from the table's primes the invariant extension of the
  // degree-proportional background is itself degree-proportional, so no
  // overfield route is needed there.
  bool prime_in_table = false;
  for (const auto& [r, val] : d.table) {
    (void)val;
    if (r.p == u.prime()) {
      prime_in_table = true;
      break;
    }
  }
  if (!prime_in_table) return degree_proportional_value(d.background, u);

  // K -> F registered: d_F(u) = ([F_u:K_v]/[F:K]) d_K(v)
  if (auto e = ctx.find(k, f)) {
    Place v = place_under(*e, u, ctx.search_bound);
    return make_rat(Int(relative_local_degree(u, v)), Int(e->relative_degree())) *
           d.base_value(v);
  }
  // F -> K registered: c(F,u) = sum over W_u(K/F) of d_K
  if (auto e = ctx.find(f, k)) {
    Rat acc(0);
    for (const auto& v : places_over(k, *e, u, ctx.search_bound)) acc += d.base_value(v);
    return acc;
  }
  // common overfield L from the context
  for (const auto& ek : ctx.embeddings) {
    if (!ek.source().same_as(k)) continue;
    const NumberField& l = ek.target();
    std::optional<FieldEmbedding> ef = ctx.find(f, l);
    if (!ef && f.degree() == 1) ef = embedding_from_rationals(f, l);
    if (!ef) continue;
    Rat acc(0);
    for (const auto& w : places_over(l, *ef, u, ctx.search_bound)) {
      Place v = place_under(ek, w, ctx.search_bound);
      acc += make_rat(Int(relative_local_degree(w, v)), Int(ek.relative_degree())) *
             d.base_value(v);
    }
    return acc;
  }
  // F = Q always sits under the base field
  if (f.degree() == 1) {
    Rat acc(0);
    for (const auto& v : places_above(k, u.prime())) acc += d.base_value(v);
    return acc;
  }
  fail(errc::no_common_overfield,
       "no registered route between " + f.poly().to_string() + " and base " +
           k.poly().to_string());
}

inline Rat evaluate_tower(const TowerData& d, const Place& u, const EvaluationContext& ctx) {
  const NumberField& f = u.field();
  if (u.prime() != d.q) return degree_proportional_value(d.x, u);

  for (size_t i = 0; i < d.fields.size(); ++i) {
    if (f.same_as(d.fields[i]) || (f.degree() == 1 && d.fields[i].degree() == 1)) {
      const auto& table = d.tables[i];
      auto it = table.find(ref_of(u));
      if (it == table.end()) fail(errc::bad_argument, "tower table misses a place over q");
      return it->second;
    }
  }
  for (size_t i = 0; i < d.fields.size(); ++i) {
    std::optional<FieldEmbedding> ef = ctx.find(f, d.fields[i]);
    if (!ef && f.degree() == 1 && d.fields[i].degree() > 1)
      ef = embedding_from_rationals(f, d.fields[i]);
    if (!ef) continue;
    Rat acc(0);
    for (const auto& v : places_over(d.fields[i], *ef, u, ctx.search_bound)) {
      auto it = d.tables[i].find(ref_of(v));
      if (it == d.tables[i].end()) fail(errc::bad_argument, "tower table misses a place over q");
      acc += it->second;
    }
    return acc;
  }
  fail(errc::no_common_overfield,
       "field " + f.poly().to_string() + " is outside the tower prefix");
}

inline Rat evaluate_raw(const RawPlaceTableData& d, const Place& u) {
  auto it = d.tables.find(u.field().poly().to_string());
  if (it != d.tables.end()) {
    auto jt = it->second.find(ref_of(u));
    if (jt != it->second.end()) return jt->second;
  }
  return degree_proportional_value(d.background, u);
}

} // namespace detail

inline Rat evaluate(const ConsistentMap& c, const NumberField& f, const Place& u,
                    const EvaluationContext& ctx) {
  if (!f.same_as(u.field())) fail(errc::field_mismatch, "evaluate: place not in the given field");
  const auto& data = c.data();
  if (const auto* dp = std::get_if<DegreeProportionalSpec>(&data))
    return detail::degree_proportional_value(*dp, u);
  if (const auto* g = std::get_if<GaloisInvariantBaseData>(&data))
    return detail::evaluate_gifb(*g, u, ctx);
  if (const auto* t = std::get_if<TowerData>(&data)) return detail::evaluate_tower(*t, u, ctx);
  if (const auto* lc = std::get_if<LinearCombinationData>(&data)) {
    Rat acc(0);
    for (const auto& [r, m] : lc->terms) acc += r * evaluate(m, f, u, ctx);
    return acc;
  }
  return detail::evaluate_raw(std::get<RawPlaceTableData>(data), u);
}

inline Rat evaluate(const ConsistentMap& c, const Place& u, const EvaluationContext& ctx = {}) {
  return evaluate(c, u.field(), u, ctx);
}

// Evaluate at the unique place of Q over p; any degree-1 field stands for Q.
inline Rat evaluate_at_rational_prime(const ConsistentMap& c, const NumberField& q, const Int& p,
                                      const EvaluationContext& ctx = {}) {
  return evaluate(c, q, unique_place_of_rationals(q, p), ctx);
}

// ---------------------------------------------------------------------
// Checkable predicates.
// ---------------------------------------------------------------------

struct ConsistencyCheck {
  bool consistent = false;
  Rat lhs; // c(K, v)
  Rat rhs; // sum of c(L, w) over w | v
  std::vector<std::pair<Place, Rat>> parts;
};

// c(K,v) = sum over w|v of c(L,w), exactly.
inline ConsistencyCheck check_consistency(const ConsistentMap& c, const FieldEmbedding& iota,
                                          const Place& v, const EvaluationContext& ctx = {}) {
  EvaluationContext inner = ctx.with(iota);
  ConsistencyCheck out;
  out.lhs = evaluate(c, iota.source(), v, inner);
  Rat acc(0);
  for (const auto& w : places_over(iota.target(), iota, v, inner.search_bound)) {
    Rat val = evaluate(c, iota.target(), w, inner);
    out.parts.emplace_back(w, val);
    acc += val;
  }
  out.rhs = acc;
  out.consistent = out.lhs == out.rhs;
  return out;
}

struct InvarianceEntry {
  Place w;
  Rat got;      // c(L, w)
  Rat expected; // ([L_w:K_v]/[L:K]) c(K, v)
};

struct InvarianceCheck {
  bool invariant = false;
  Rat base_value;
  std::vector<InvarianceEntry> entries;
  std::optional<InvarianceEntry> first_violation;
};

// The criterion of K-Galois-invariance at one (v, L/K):
// c(L,w) = ([L_w:K_v]/[L:K]) c(K,v) for every w | v.
inline InvarianceCheck check_galois_invariance(const ConsistentMap& c, const FieldEmbedding& iota,
                                               const Place& v, const EvaluationContext& ctx = {}) {
  EvaluationContext inner = ctx.with(iota);
  InvarianceCheck out;
  out.base_value = evaluate(c, iota.source(), v, inner);
  out.invariant = true;
  for (const auto& w : places_over(iota.target(), iota, v, inner.search_bound)) {
    Rat got = evaluate(c, iota.target(), w, inner);
    Rat expected =
        make_rat(Int(relative_local_degree(w, v)), Int(iota.relative_degree())) * out.base_value;
    out.entries.push_back({w, got, expected});
    if (got != expected && !out.first_violation) {
      out.invariant = false;
      out.first_violation = out.entries.back();
    }
  }
  return out;
}

// True iff c vanishes at every probe whose residue characteristic is
// outside P.
inline bool support_check(const ConsistentMap& c, const std::set<Int>& prime_set,
                          const std::vector<Place>& probes, const EvaluationContext& ctx = {}) {
  for (const auto& u : probes) {
    if (prime_set.count(u.prime())) continue;
    if (evaluate(c, u.field(), u, ctx) != 0) return false;
  }
  return true;
}

struct BoundednessWitness {
  Rat value; // max over probes of |c(K,v)| [K:Q]/(e_v f_v)
  std::map<Int, Rat> per_prime;
  Place argmax;
};

// Sampled witness for the continuity bound: the coefficient of 1/log p_v in
// |c(K,v)/log p_v| <= C [K_v:Q_p]/[K:Q]. A diagnostic, not a membership proof.
inline BoundednessWitness boundedness_witness(const ConsistentMap& c,
                                              const std::vector<Place>& probes,
                                              const EvaluationContext& ctx = {}) {
  if (probes.empty()) fail(errc::bad_argument, "boundedness witness needs probes");
  BoundednessWitness out;
  out.value = Rat(0);
  for (const auto& u : probes) {
    Rat v = abs(evaluate(c, u.field(), u, ctx)) *
            make_rat(Int(u.field().degree()), Int(u.local_degree()));
    auto [it, inserted] = out.per_prime.emplace(u.prime(), v);
    if (!inserted && v > it->second) it->second = v;
    if (v > out.value) {
      out.value = v;
      out.argmax = u;
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Verified tower construction from raw data (used by the JSON reader):
// checks the chain is connected, tables cover every place over q, and the
// ascent identity d_i(v) = sum of d_{i+1}(w) over w | v holds exactly.
// ---------------------------------------------------------------------

inline ConsistentMap tower_map_from_data(TowerData d, long search_bound = kDefaultSinglePlaceBound) {
  if (d.fields.empty() || d.fields.size() != d.tables.size() ||
      d.steps.size() + 1 != d.fields.size())
    fail(errc::bad_argument, "tower data shape mismatch");
  if (d.fields[0].degree() != 1) fail(errc::bad_argument, "tower must start at the rationals");
  for (size_t i = 0; i < d.steps.size(); ++i) {
    if (!d.steps[i].source().same_as(d.fields[i]) || !d.steps[i].target().same_as(d.fields[i + 1]))
      fail(errc::bad_embedding, "tower step endpoints mismatch");
  }
  for (size_t i = 0; i < d.fields.size(); ++i) {
    auto ws = places_above(d.fields[i], d.q);
    for (const auto& w : ws)
      if (!d.tables[i].count(ref_of(w)))
        fail(errc::bad_argument, "tower table misses a place over q at level " +
                                     std::to_string(i));
    if (d.tables[i].size() != ws.size())
      fail(errc::bad_argument, "tower table has stray places at level " + std::to_string(i));
  }
  for (size_t i = 0; i + 1 < d.fields.size(); ++i) {
    for (const auto& v : places_above(d.fields[i], d.q)) {
      Rat lhs = d.tables[i].at(ref_of(v));
      Rat rhs(0);
      for (const auto& w : places_over(d.fields[i + 1], d.steps[i], v, search_bound))
        rhs += d.tables[i + 1].at(ref_of(w));
      if (lhs != rhs)
        fail(errc::bad_argument, "tower ascent identity fails at level " + std::to_string(i));
    }
  }
  return ConsistentMap(ConsistentMap::Data(std::move(d)));
}

} // namespace conmap

#endif
