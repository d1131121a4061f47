#ifndef CONMAP_CONSTRUCTIONS_HPP
#define CONMAP_CONSTRUCTIONS_HPP

#include <optional>

#include "consistent_map.hpp"
#include "functionals.hpp"

namespace conmap {

// ---------------------------------------------------------------------
// The unique K-Galois-invariant consistent map with prescribed values on a
// finite set of places of K; outside the table the base values follow the
// degree-proportional background.
// ---------------------------------------------------------------------

inline ConsistentMap invariant_map_from_base(const NumberField& k,
                                             const std::vector<std::pair<Place, Rat>>& table,
                                             DegreeProportionalSpec background) {
  std::map<PlaceRef, Rat> t;
  for (const auto& [w, val] : table) {
    if (!w.field().same_as(k)) fail(errc::field_mismatch, "table place outside the base field");
    places_above(k, w.prime()); // rejects unsupported primes eagerly
    if (!t.emplace(ref_of(w), val).second)
      fail(errc::duplicate_place, "duplicate place in base table");
  }
  return galois_invariant_base_map(k, std::move(t), std::move(background));
}

// The Q(i) example: d(v1) = -1/3 and d(v2) = -2/3 at the two places over 5
// (canonical order), degree-proportional -1 background. Extends the prime
// omega function but is not Q-Galois-invariant.
inline ConsistentMap qi_worked_example() {
  NumberField qi = make_field(IntPoly({Int(1), Int(0), Int(1)}));
  auto ws = places_above(qi, Int(5));
  std::vector<std::pair<Place, Rat>> table{
      {ws[0], make_rat(Int(-1), Int(3))},
      {ws[1], make_rat(Int(-2), Int(3))},
  };
  return invariant_map_from_base(qi, table, constant_prime_values(Rat(-1)));
}

// ---------------------------------------------------------------------
// The open-subgroup perturbation: one completely-split place per maximal
// subfield, perturbed by nonzero epsilons summing to zero so that the values
// at Q are preserved while K_i-Galois-invariance fails.
// ---------------------------------------------------------------------

struct PerturbationScheme {
  struct Entry {
    FieldEmbedding subfield;  // K_i -> K
    Place base_place;         // v_i, the chosen place of K_i
    std::vector<std::pair<Place, Rat>> epsilons; // places of K over v_i with their epsilon
  };
  std::vector<Entry> entries;
};

namespace detail {

inline bool is_galois_supported(const NumberField& k) {
  try {
    return static_cast<int>(automorphisms(k).size()) == k.degree();
  } catch (const error&) {
    return false;
  }
}

} // namespace detail

inline std::pair<ConsistentMap, PerturbationScheme> perturbed_open_subgroup_map(
    const NumberField& k, const std::vector<FieldEmbedding>& subfields,
    const DegreeProportionalSpec& x, long prime_search_bound = 10000,
    const std::optional<std::vector<std::vector<Rat>>>& custom_epsilons = std::nullopt) {
  if (k.degree() == 1) fail(errc::bad_argument, "base field must be a proper extension of Q");
  if (!detail::is_galois_supported(k)) fail(errc::not_galois, "field is not Galois (supported families)");
  for (const auto& e : subfields) {
    if (!e.target().same_as(k)) fail(errc::bad_embedding, "subfield embedding does not land in K");
    if (e.source().degree() >= k.degree())
      fail(errc::bad_embedding, "subfield is not proper");
  }
  // The maximal-subfield list is validated for the families we recognize.
  if (k.family().kind == FieldFamily::quadratic) {
    if (subfields.size() != 1 || subfields[0].source().degree() != 1)
      fail(errc::bad_argument, "quadratic field has the single maximal subfield Q");
  } else if (k.family().kind == FieldFamily::biquadratic) {
    if (subfields.size() != 3) fail(errc::bad_argument, "biquadratic field has three maximal subfields");
    for (const auto& e : subfields)
      if (e.source().degree() != 2)
        fail(errc::bad_argument, "maximal subfields of a biquadratic field are quadratic");
  }
  if (custom_epsilons && custom_epsilons->size() != subfields.size())
    fail(errc::bad_argument, "custom epsilon list shape mismatch");

  PerturbationScheme scheme;
  std::map<PlaceRef, Rat> table;
  std::set<Int> used_primes;

  for (size_t i = 0; i < subfields.size(); ++i) {
    const auto& emb = subfields[i];
    const NumberField& ki = emb.source();
    std::optional<Place> split_place;
    std::vector<Place> above;
    Int p(1);
    long steps = 0;
    while (!split_place && steps < prime_search_bound) {
      p = next_prime_after(p);
      ++steps;
      if (used_primes.count(p)) continue;
      std::vector<Place> ki_places;
      try {
        ki_places = places_above(ki, p);
        places_above(k, p);
      } catch (const error& e) {
        if (e.code() == errc::non_maximal_order) continue;
        throw;
      }
      for (const auto& v : ki_places) {
        auto ws = places_over(k, emb, v);
        if (static_cast<int>(ws.size()) == emb.relative_degree()) {
          split_place = v; // v splits completely in K
          above = ws;
          break;
        }
      }
    }
    if (!split_place)
      fail(errc::split_place_not_found,
           "no completely split place found for subfield " + ki.poly().to_string());
    used_primes.insert(p);

    const long m = static_cast<long>(above.size());
    std::vector<Rat> eps;
    if (custom_epsilons) {
      eps = (*custom_epsilons)[i];
      if (static_cast<long>(eps.size()) != m)
        fail(errc::bad_argument, "custom epsilon count mismatch at subfield " + std::to_string(i));
      Rat sum(0);
      for (const auto& e : eps) {
        if (e == 0) fail(errc::bad_argument, "epsilon values must be nonzero");
        sum += e;
      }
      if (sum != 0) fail(errc::bad_argument, "epsilon values must sum to zero");
    } else {
      eps.assign(static_cast<size_t>(m), Rat(1));
      eps[0] = Rat(-(m - 1));
    }

    PerturbationScheme::Entry entry{emb, *split_place, {}};
    for (long j = 0; j < m; ++j) {
      const Place& w = above[static_cast<size_t>(j)];
      Rat base = x.at(p) * make_rat(Int(w.local_degree()), Int(k.degree()));
      table[ref_of(w)] = base + eps[static_cast<size_t>(j)];
      entry.epsilons.emplace_back(w, eps[static_cast<size_t>(j)]);
    }
    scheme.entries.push_back(std::move(entry));
  }

  ConsistentMap c = galois_invariant_base_map(k, std::move(table), x);
  return {std::move(c), std::move(scheme)};
}

// ---------------------------------------------------------------------
// Finite prefix of the tower construction: degree-proportional background
// with perturbed tables above the distinguished prime q. Epsilons are chosen
// at each genuinely split place, rational and strictly inside the interval
// pair (exp(-2^-i), 1) u (1, exp(2^-i)) via the bounds 1 +- 2^-(i+1).
// ---------------------------------------------------------------------

inline ConsistentMap tower_map_prefix(const std::vector<FieldEmbedding>& chain, const Int& q,
                                      const DegreeProportionalSpec& x, int depth) {
  if (chain.empty()) fail(errc::bad_argument, "empty tower chain");
  if (depth < 1 || depth > static_cast<int>(chain.size()) + 1)
    fail(errc::bad_argument, "depth outside the chain prefix");

  std::vector<NumberField> fields;
  fields.push_back(chain[0].source());
  for (const auto& e : chain) fields.push_back(e.target());
  fields.resize(static_cast<size_t>(depth));
  std::vector<FieldEmbedding> steps(chain.begin(), chain.begin() + (depth - 1));

  if (fields[0].degree() != 1) fail(errc::bad_argument, "tower must start at the rationals");
  for (size_t i = 0; i + 1 < fields.size(); ++i)
    if (!steps[i].source().same_as(fields[i]) || !steps[i].target().same_as(fields[i + 1]))
      fail(errc::bad_embedding, "tower step endpoints mismatch");
  for (const auto& f : fields)
    if (!detail::is_galois_supported(f))
      fail(errc::not_galois, "chain field " + f.poly().to_string() + " is not Galois (supported families)");

  // The distinguished prime must keep acquiring places along the prefix.
  for (size_t i = 0; i + 1 < fields.size(); ++i) {
    if (places_above(fields[i + 1], q).size() <= 1)
      fail(errc::no_splitting_step,
           q.get_str() + " does not split in " + fields[i + 1].poly().to_string());
  }

  std::vector<std::map<PlaceRef, Rat>> tables(fields.size());
  tables[0][ref_of(unique_place_of_rationals(fields[0], q))] = x.at(q);

  for (size_t i = 0; i + 1 < fields.size(); ++i) {
    for (const auto& v : places_above(fields[i], q)) {
      const Rat dv = tables[i].at(ref_of(v));
      auto ws = places_over(fields[i + 1], steps[i], v);
      const long m = static_cast<long>(ws.size());
      const Rat half_width = pow_rat(Rat(1, 2), static_cast<long>(i) + 2); // 2^-(i+1), levels 1-based
      for (long j = 0; j < m; ++j) {
        const Place& w = ws[static_cast<size_t>(j)];
        Rat eps(1);
        if (m > 1) {
          // first m-1 places: 1 + 2^-(i+1)/(m-1); last: 1 - 2^-(i+1)
          if (j + 1 < m) eps = Rat(1) + half_width / Rat(m - 1);
          else eps = Rat(1) - half_width;
        }
        Rat rel = make_rat(Int(relative_local_degree(w, v)), Int(steps[i].relative_degree()));
        tables[i + 1][ref_of(w)] = rel * dv * eps;
      }
    }
  }

  TowerData d{std::move(fields), std::move(steps), q, x, std::move(tables)};
  return tower_map_from_data(std::move(d));
}

// ---------------------------------------------------------------------
// Finite stabilizer probe: checks phi(c, sigma(alpha)) = phi(c, alpha) on
// the supplied elements. A false result certifies non-membership of sigma in
// the stabilizer; a true result is probe-level evidence only.
// ---------------------------------------------------------------------

struct StabilizerProbe {
  bool fixed = true;
  struct Entry {
    FieldElement alpha;
    Rat phi_alpha;
    Rat phi_sigma_alpha;
  };
  std::vector<Entry> entries;
};

inline StabilizerProbe stabilizer_probe(const ConsistentMap& c, const Automorphism& sigma,
                                        const std::vector<FieldElement>& probes,
                                        const EvaluationContext& ctx = {}) {
  StabilizerProbe out;
  for (const auto& a : probes) {
    if (a.is_zero()) fail(errc::zero_element, "stabilizer probe on zero");
    Rat va = phi(c, a, 1, ctx);
    Rat vs = phi(c, sigma.apply(a), 1, ctx);
    out.entries.push_back({a, va, vs});
    if (va != vs) out.fixed = false;
  }
  return out;
}

} // namespace conmap

#endif
