#include <catch2/catch_amalgamated.hpp>

#include "conmap/modp.hpp"

#include <random>

using namespace conmap;
using modp::Vec;

namespace {

// Brute-force oracle: factor by repeated division with every monic
// polynomial of ascending degree. Exponential in p^deg; only for tiny inputs.
std::vector<std::pair<IntPoly, long>> brute_factor(const IntPoly& f, const Int& p) {
  Vec rest = modp::from_intpoly(f, p);
  rest = modp::make_monic(rest, p);
  std::vector<std::pair<Vec, long>> out;
  const long pl = p.get_si();
  for (int d = 1; d <= modp::deg(rest) && modp::deg(rest) > 0; ++d) {
    // enumerate monic candidates of degree d
    std::vector<long> digits(static_cast<size_t>(d), 0);
    while (true) {
      Vec cand(static_cast<size_t>(d) + 1, Int(0));
      for (int i = 0; i < d; ++i) cand[static_cast<size_t>(i)] = Int(digits[static_cast<size_t>(i)]);
      cand[static_cast<size_t>(d)] = 1;
      long mult = 0;
      while (modp::deg(rest) >= d) {
        auto [q, r] = modp::divmod(rest, cand, p);
        if (!modp::is_zero(r)) break;
        rest = q;
        ++mult;
      }
      if (mult > 0) {
        // candidate divides; it is irreducible because smaller degrees are exhausted
        out.emplace_back(cand, mult);
      }
      int i = 0;
      while (i < d && ++digits[static_cast<size_t>(i)] == pl) {
        digits[static_cast<size_t>(i)] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return modp::factor_key_less(a.first, b.first); });
  std::vector<std::pair<IntPoly, long>> res;
  for (auto& [g, m] : out) res.emplace_back(modp::to_intpoly(g), m);
  return res;
}

IntPoly random_monic(std::mt19937_64& gen, int deg, const Int& p) {
  std::uniform_int_distribution<long> dc(0, p.get_si() - 1);
  std::vector<Int> c(static_cast<size_t>(deg) + 1);
  for (int i = 0; i < deg; ++i) c[static_cast<size_t>(i)] = Int(dc(gen));
  c[static_cast<size_t>(deg)] = 1;
  return IntPoly(std::move(c));
}

} // namespace

TEST_CASE("factor_mod_p matches the brute-force oracle on small inputs") {
  std::mt19937_64 gen(42);
  for (long pl : {2L, 3L, 5L, 7L}) {
    Int p(pl);
    const int max_deg = pl <= 5 ? 5 : 4;
    for (int deg = 1; deg <= max_deg; ++deg) {
      for (int trial = 0; trial < 12; ++trial) {
        IntPoly f = random_monic(gen, deg, p);
        auto got = modp::factor_mod_p(f, p);
        auto expected = brute_factor(f, p);
        REQUIRE(got.size() == expected.size());
        for (size_t i = 0; i < got.size(); ++i) {
          CHECK(got[i].first == expected[i].first);
          CHECK(got[i].second == expected[i].second);
        }
      }
    }
  }
}

TEST_CASE("factorization multiplies back to the input") {
  std::mt19937_64 gen(99);
  for (long pl : {2L, 3L, 5L, 13L, 97L}) {
    Int p(pl);
    std::uniform_int_distribution<long> dc(0, pl - 1);
    for (int trial = 0; trial < 20; ++trial) {
      IntPoly f = random_monic(gen, 8, p);
      auto factors = modp::factor_mod_p(f, p);
      Vec prod{Int(1)};
      long total = 0;
      for (const auto& [g, m] : factors) {
        for (long j = 0; j < m; ++j) prod = modp::mul(prod, modp::from_intpoly(g, p), p);
        total += m * g.degree();
      }
      CHECK(total == 8);
      CHECK(prod == modp::from_intpoly(f, p));
    }
  }
}

TEST_CASE("known factorizations used by the place machinery") {
  auto f1 = modp::factor_mod_p(parse_poly("x^2+1"), Int(5));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].first == parse_poly("x+2"));
  CHECK(f1[1].first == parse_poly("x+3"));
  CHECK(f1[0].second == 1);

  auto f2 = modp::factor_mod_p(parse_poly("x^4+1"), Int(2));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == parse_poly("x+1"));
  CHECK(f2[0].second == 4);

  auto f3 = modp::factor_mod_p(parse_poly("x^2+1"), Int(2));
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].second == 2);

  auto f4 = modp::factor_mod_p(parse_poly("x^4+1"), Int(5));
  REQUIRE(f4.size() == 2);
  CHECK(f4[0].first.degree() == 2);
  CHECK(f4[1].first.degree() == 2);
}

TEST_CASE("hensel pair lifting preserves the factorization identities") {
  IntPoly f = parse_poly("x^2+1");
  Int p(5);
  Vec g = modp::from_intpoly(parse_poly("x+2"), p);
  Vec h = modp::from_intpoly(parse_poly("x+3"), p);
  for (long k : {4L, 8L, 32L}) {
    auto [gl, hl] = modp::hensel_lift_pair(f, g, h, p, k);
    Int pk = pow_int(p, static_cast<unsigned long>(k));
    Vec prod = modp::mul(modp::from_intpoly(gl, pk), modp::from_intpoly(hl, pk), pk);
    CHECK(prod == modp::from_intpoly(f, pk));
    CHECK(modp::from_intpoly(gl, p) == g);
    CHECK(modp::from_intpoly(hl, p) == h);
  }
}

TEST_CASE("hensel lifting a ramified group against its cofactor") {
  // x^4+1 = (x+1)^4 mod 2 has a single group; x^4 - 10x^2 + 1 mod 3 factors
  // as a square times a square
  IntPoly f = parse_poly("x^4-10*x^2+1");
  Int p(3);
  auto factors = modp::factor_mod_p(f, p);
  REQUIRE(factors.size() == 1); // (x^2+1)^2 mod 3
  CHECK(factors[0].second == 2);

  IntPoly f2 = parse_poly("x^4+1");
  Int p2(5); // two quadratic factors
  auto fac2 = modp::factor_mod_p(f2, p2);
  REQUIRE(fac2.size() == 2);
  Vec u = modp::from_intpoly(fac2[0].first, p2);
  Vec rest = modp::div_exact(modp::from_intpoly(f2, p2), u, p2);
  auto [gl, hl] = modp::hensel_lift_pair(f2, u, rest, p2, 16);
  Int pk = pow_int(p2, 16);
  CHECK(modp::mul(modp::from_intpoly(gl, pk), modp::from_intpoly(hl, pk), pk) ==
        modp::from_intpoly(f2, pk));
}

TEST_CASE("multi-factor lifting covers every factor") {
  IntPoly f = parse_poly("x^4+1");
  Int p(17); // splits completely mod 17
  auto factors = modp::factor_mod_p(f, p);
  REQUIRE(factors.size() == 4);
  std::vector<Vec> base;
  for (const auto& [g, m] : factors) {
    CHECK(m == 1);
    base.push_back(modp::from_intpoly(g, p));
  }
  auto lifted = modp::hensel_lift_factors(f, base, p, 12);
  REQUIRE(lifted.size() == 4);
  Int pk = pow_int(p, 12);
  Vec prod{Int(1)};
  for (size_t i = 0; i < lifted.size(); ++i) {
    CHECK(modp::from_intpoly(lifted[i], p) == base[i]);
    prod = modp::mul(prod, modp::from_intpoly(lifted[i], pk), pk);
  }
  CHECK(prod == modp::from_intpoly(f, pk));
}

TEST_CASE("xgcd certificates") {
  std::mt19937_64 gen(5);
  Int p(13);
  for (int i = 0; i < 30; ++i) {
    IntPoly a = random_monic(gen, 4, p);
    IntPoly b = random_monic(gen, 3, p);
    auto [d, s, t] = modp::xgcd(modp::from_intpoly(a, p), modp::from_intpoly(b, p), p);
    Vec lhs = modp::add(modp::mul(s, modp::from_intpoly(a, p), p),
                        modp::mul(t, modp::from_intpoly(b, p), p), p);
    CHECK(lhs == d);
  }
}
