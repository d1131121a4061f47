#ifndef CONMAP_SINGLE_PLACE_HPP
#define CONMAP_SINGLE_PLACE_HPP

#include <vector>

#include "places.hpp"

namespace conmap {

// beta in Z[theta] with v_w(beta) = k and vanishing valuation at every other
// non-Archimedean place; |Norm(beta)| = N(P)^k. k is minimal over the
// searched lattice P /\ Z[theta]; for presentations that are maximal at
// every prime this is the order of [P] in the class group.
struct SinglePlaceElement {
  FieldElement beta;
  long k = 0;
  Place place;
  Int norm_abs;
};

namespace detail {

// Z-basis of P /\ Z[theta] for P = (p, g(theta)):
// p*theta^i (i < deg g) and theta^i * g(theta) (i < n - deg g).
inline std::vector<std::vector<Int>> place_lattice_basis(const Place& w) {
  const int n = w.field().degree();
  const int fdeg = w.local_factor().degree();
  std::vector<std::vector<Int>> basis;
  for (int i = 0; i < fdeg; ++i) {
    std::vector<Int> v(static_cast<size_t>(n), Int(0));
    v[static_cast<size_t>(i)] = w.prime();
    basis.push_back(std::move(v));
  }
  if (fdeg < n) { // inert places have g = f and contribute no extra rows
    std::vector<Int> g(static_cast<size_t>(n), Int(0));
    for (int j = 0; j <= fdeg; ++j) g[static_cast<size_t>(j)] = w.local_factor().coeff(j);
    for (int i = 0; i + fdeg < n; ++i) {
      basis.push_back(g);
      if (i + fdeg + 1 < n) {
        // shift once for the next row; g(theta)*theta^i has degree < n, no reduction
        std::vector<Int> next(static_cast<size_t>(n), Int(0));
        for (int j = 0; j + 1 < n; ++j) next[static_cast<size_t>(j + 1)] = g[static_cast<size_t>(j)];
        g = std::move(next);
      }
    }
  }
  return basis;
}

// Enumerates integer vectors with sup-norm exactly r (the surface of the box).
template <typename Fn>
inline void for_each_shell_vector(int dim, long r, Fn&& fn) {
  std::vector<long> a(static_cast<size_t>(dim), -r);
  while (true) {
    bool on_surface = false;
    for (long v : a)
      if (v == r || v == -r) {
        on_surface = true;
        break;
      }
    if (on_surface) fn(a);
    int i = 0;
    while (i < dim) {
      if (a[static_cast<size_t>(i)] < r) {
        ++a[static_cast<size_t>(i)];
        break;
      }
      a[static_cast<size_t>(i)] = -r;
      ++i;
    }
    if (i == dim) break;
  }
}

} // namespace detail

// Searches P's lattice by increasing box radius for an element whose norm is
// a pure power of p and whose valuations vanish at the other places above p.
// The first k = 1 hit is provably minimal; otherwise the best candidate over
// the whole searched range is returned.
inline SinglePlaceElement single_place_element(const NumberField& k, const Place& w,
                                               long search_bound = 8) {
  if (!w.field().same_as(k)) fail(errc::field_mismatch, "place does not belong to the field");
  if (search_bound < 1) fail(errc::bad_argument, "search bound must be positive");
  const Int& p = w.prime();
  auto siblings = places_above(k, p);
  auto basis = detail::place_lattice_basis(w);
  const int n = k.degree();

  bool have_best = false;
  SinglePlaceElement best;

  for (long r = 1; r <= search_bound; ++r) {
    bool done = false;
    detail::for_each_shell_vector(n, r, [&](const std::vector<long>& a) {
      if (done) return;
      std::vector<Int> coords(static_cast<size_t>(n), Int(0));
      bool zero = true;
      for (int i = 0; i < n; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        zero = false;
        for (int j = 0; j < n; ++j)
          coords[static_cast<size_t>(j)] += Int(a[static_cast<size_t>(i)]) * basis[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
      if (zero) return;
      Int nrm = detail::norm_integer_coords(k, coords);
      Int nabs = abs(nrm);
      Int rest;
      long m = valuation_int(nabs, p, &rest);
      if (rest != 1 || m == 0) return;
      if (m % w.residue_degree() != 0) return;
      const long cand_k = m / w.residue_degree();
      if (have_best && best.k <= cand_k) return;
      std::vector<Rat> rc;
      rc.reserve(coords.size());
      for (const auto& c : coords) rc.emplace_back(c);
      FieldElement beta(k, std::move(rc));
      // valuations must vanish at every other place above p
      for (const auto& w2 : siblings) {
        if (w2.same_as(w)) continue;
        if (valuation(beta, w2).value != 0) return;
      }
      if (valuation(beta, w).value != cand_k) return; // consistency guard
      best = {beta, cand_k, w, nabs};
      have_best = true;
      if (cand_k == 1) done = true;
    });
    if (done) break;
  }
  if (!have_best)
    fail(errc::search_exhausted,
         "no single-place element within box radius " + std::to_string(search_bound));
  return best;
}

// Class number of the imaginary quadratic field of fundamental discriminant
// D < 0, counted through reduced binary quadratic forms.
inline long class_number_imag_quadratic(const Int& D) {
  if (D >= 0) fail(errc::not_negative, "discriminant must be negative");
  Int mod4 = mod_floor(D, Int(4));
  if (mod4 != 0 && mod4 != 1) fail(errc::not_fundamental, "discriminant not 0 or 1 mod 4");
  if (mod4 == 1) {
    if (!is_squarefree(D)) fail(errc::not_fundamental, "discriminant not fundamental");
  } else {
    Int m = D / 4;
    Int m4 = mod_floor(m, Int(4));
    if (m4 != 2 && m4 != 3) fail(errc::not_fundamental, "discriminant not fundamental");
    if (!is_squarefree(m)) fail(errc::not_fundamental, "discriminant not fundamental");
  }

  long h = 0;
  Int absD = -D;
  for (Int b = mod_floor(D, Int(2)); 3 * b * b <= absD; b += 2) {
    Int ac4 = b * b - D; // = 4ac
    Int ac = ac4 / 4;
    for (Int a = b == 0 ? Int(1) : b; a * a <= ac; a = a + 1) {
      if (a == 0) continue;
      if (!mpz_divisible_p(ac.get_mpz_t(), a.get_mpz_t())) continue;
      Int c = ac / a;
      if (a < b) continue;
      // reduced: |b| <= a <= c with b >= 0 when |b| = a or a = c
      ++h;
      if (b > 0 && b < a && a < c) ++h; // (a, -b, c) also reduced
    }
  }
  return h;
}

} // namespace conmap

#endif
