#ifndef CONMAP_TOWERS_HPP
#define CONMAP_TOWERS_HPP

#include <vector>

#include "single_place.hpp"

namespace conmap {

constexpr long kDefaultSinglePlaceBound = 8;

// [L_w : K_v] through the absolute local degrees.
inline int relative_local_degree(const Place& w, const Place& v) {
  const int num = w.local_degree();
  const int den = v.local_degree();
  if (num % den != 0) fail(errc::bad_argument, "local degree does not divide");
  return num / den;
}

// Places of L dividing v, matched through a single-place element of v:
// w | v  iff  v_w(iota(pi_v)) > 0. Verifies the relative degree sum.
inline std::vector<Place> places_over(const NumberField& l, const FieldEmbedding& iota,
                                      const Place& v, long search_bound = kDefaultSinglePlaceBound) {
  if (!iota.source().same_as(v.field()) || !iota.target().same_as(l))
    fail(errc::bad_embedding, "places_over: embedding endpoints mismatch");
  auto above = places_above(l, v.prime());
  std::vector<Place> out;
  if (v.field().degree() == 1) {
    out = above; // every place of L above p divides the unique place of Q
  } else {
    FieldElement pi = single_place_element(v.field(), v, search_bound).beta;
    FieldElement img = iota.apply(pi);
    for (const auto& w : above)
      if (valuation(img, w).value > 0) out.push_back(w);
  }
  long sum = 0;
  for (const auto& w : out) sum += relative_local_degree(w, v);
  if (sum != iota.relative_degree())
    fail(errc::bad_argument, "relative degree sum violation over " + v.prime().get_str());
  return out;
}

// The place of K under w, through the embedding iota: K -> L.
inline Place place_under(const FieldEmbedding& iota, const Place& w,
                         long search_bound = kDefaultSinglePlaceBound) {
  if (!iota.target().same_as(w.field()))
    fail(errc::bad_embedding, "place_under: embedding target mismatch");
  auto below = places_above(iota.source(), w.prime());
  if (below.size() == 1) return below[0];
  for (const auto& v : below) {
    FieldElement pi = single_place_element(iota.source(), v, search_bound).beta;
    if (valuation(iota.apply(pi), w).value > 0) return v;
  }
  fail(errc::bad_argument, "no place found under the given place");
}

// sigma(w): the unique place with v_{sigma(w)}(sigma(pi_w)) > 0.
inline Place galois_image_of_place(const Automorphism& sigma, const Place& w,
                                   long search_bound = kDefaultSinglePlaceBound) {
  if (!sigma.field().same_as(w.field()))
    fail(errc::field_mismatch, "automorphism and place fields differ");
  auto above = places_above(w.field(), w.prime());
  if (above.size() == 1) return w;
  FieldElement pi = single_place_element(w.field(), w, search_bound).beta;
  FieldElement img = sigma.apply(pi);
  Place found;
  int hits = 0;
  for (const auto& w2 : above) {
    if (valuation(img, w2).value > 0) {
      found = w2;
      ++hits;
    }
  }
  if (hits != 1) fail(errc::bad_argument, "galois image of place not unique");
  return found;
}

} // namespace conmap

#endif
