#include <catch2/catch_amalgamated.hpp>

#include "conmap/log_linear.hpp"
#include "helpers.hpp"

using namespace conmap;
using conmap_test::corpus;

TEST_CASE("places above the worked primes") {
  auto& c = corpus();

  auto qi5 = places_above(c.Qi, Int(5));
  REQUIRE(qi5.size() == 2);
  CHECK(qi5[0].local_factor() == parse_poly("x+2"));
  CHECK(qi5[1].local_factor() == parse_poly("x+3"));
  for (const auto& w : qi5) {
    CHECK(w.ramification() == 1);
    CHECK(w.residue_degree() == 1);
  }

  auto q7 = places_above(c.Q, Int(7));
  REQUIRE(q7.size() == 1);
  CHECK(q7[0].ramification() == 1);
  CHECK(q7[0].residue_degree() == 1);

  auto z8_2 = places_above(c.Z8, Int(2));
  REQUIRE(z8_2.size() == 1);
  CHECK(z8_2[0].ramification() == 4);
  CHECK(z8_2[0].residue_degree() == 1);

  auto qi2 = places_above(c.Qi, Int(2));
  REQUIRE(qi2.size() == 1);
  CHECK(qi2[0].ramification() == 2);

  CHECK_THROWS_AS(places_above(c.B, Int(2)), error); // index divisible by 2
  CHECK_THROWS_AS(places_above(c.Qi, Int(4)), error);
}

TEST_CASE("mixed ramified and unramified places over one prime") {
  // x^3 - x - 2 mod 2 = x (x+1)^2: one unramified and one ramified place,
  // which drives the Hensel lift of a ramified group against a cofactor
  auto k = make_field("x^3-x-2");
  auto ws = places_above(k, Int(2));
  REQUIRE(ws.size() == 2);
  CHECK(ws[0].local_factor() == parse_poly("x"));
  CHECK(ws[0].ramification() == 1);
  CHECK(ws[0].residue_degree() == 1);
  CHECK(ws[1].local_factor() == parse_poly("x+1"));
  CHECK(ws[1].ramification() == 2);
  CHECK(ws[1].residue_degree() == 1);

  FieldElement two = element_from_rational(k, Rat(2));
  CHECK(valuation(two, ws[0]).value == 1);
  CHECK(valuation(two, ws[1]).value == 2);

  FieldElement theta = generator(k); // norm 2, lies in the unramified place
  CHECK(field_norm(theta) == Rat(2));
  CHECK(valuation(theta, ws[0]).value == 1);
  CHECK(valuation(theta, ws[1]).value == 0);
}

TEST_CASE("degree sums over every supported prime below 100") {
  auto& c = corpus();
  NumberField z16 = make_cyclotomic(16);
  auto z16_2 = places_above(z16, Int(2));
  REQUIRE(z16_2.size() == 1);
  CHECK(z16_2[0].ramification() == 8);
  CHECK(valuation(element_from_rational(z16, Rat(2)), z16_2[0]).value == 8);
  for (const auto& k : {c.Q, c.Qi, c.Qs2, c.Qs3, c.Qs6, c.Qm5, c.Z8, c.B, z16}) {
    Int p(1);
    while (true) {
      p = next_prime_after(p);
      if (p > 100) break;
      std::vector<Place> ws;
      try {
        ws = places_above(k, p);
      } catch (const error& e) {
        REQUIRE(e.code() == errc::non_maximal_order);
        continue;
      }
      long sum = 0;
      for (const auto& w : ws) sum += w.local_degree();
      CHECK(sum == k.degree());
    }
  }
}

TEST_CASE("valuation examples") {
  auto& c = corpus();
  auto qi5 = places_above(c.Qi, Int(5));
  FieldElement five = element_from_rational(c.Qi, Rat(5));
  CHECK(valuation(five, qi5[0]).value == 1);
  CHECK(valuation(five, qi5[1]).value == 1);

  auto q5 = places_above(c.Q, Int(5));
  CHECK(valuation(element_from_rational(c.Q, Rat(5)), q5[0]).value == 1);

  auto z8_2 = places_above(c.Z8, Int(2));
  CHECK(valuation(element_from_rational(c.Z8, Rat(2)), z8_2[0]).value == 4);

  CHECK_THROWS_AS(valuation(element_zero(c.Qi), qi5[0]), error);
}

TEST_CASE("valuation additivity on random pairs") {
  auto& c = corpus();
  conmap_test::Rng rng(2024);
  for (const auto& k : {c.Qi, c.Qs2, c.Qm5, c.Z8}) {
    for (int i = 0; i < 12; ++i) {
      FieldElement a = rng.element(k), b = rng.element(k);
      FieldElement ab = a * b;
      for (long pl : {2L, 3L, 5L, 7L, 13L}) {
        for (const auto& w : places_above(k, Int(pl))) {
          CHECK(valuation(ab, w).value == valuation(a, w).value + valuation(b, w).value);
        }
      }
    }
  }
}

TEST_CASE("norm-valuation identity: sum of f_w v_w equals v_p(Norm)") {
  auto& c = corpus();
  conmap_test::Rng rng(17);
  for (const auto& k : {c.Qi, c.Qs2, c.Qs6, c.Qm5, c.Z8}) {
    for (int i = 0; i < 15; ++i) {
      FieldElement a = rng.element(k);
      Rat nrm = field_norm(a);
      for (const auto& [p, e] : factor_integer(rat_num(nrm))) {
        long sum = 0;
        for (const auto& w : places_above(k, p))
          sum += w.residue_degree() * valuation(a, w).value;
        CHECK(sum == e);
      }
    }
  }
}

TEST_CASE("product formula as a log-linear identity") {
  auto& c = corpus();
  conmap_test::Rng rng(31);
  for (const auto& k : {c.Qi, c.Qs2, c.Z8}) {
    for (int i = 0; i < 10; ++i) {
      FieldElement a = rng.element(k, 9, false);
      // lhs: sum over finite places of (e f/[K:Q]) log_p|a|_w per prime
      // rhs: -(1/[K:Q]) log |Norm(a)|
      LogLinearValue lhs, rhs;
      Rat nrm = field_norm(a);
      std::set<Int> primes;
      for (const auto& [p, e] : factor_integer(rat_num(nrm))) {
        (void)e;
        primes.insert(p);
      }
      for (const auto& [p, e] : factor_integer(rat_den(nrm))) {
        (void)e;
        primes.insert(p);
      }
      for (const auto& p : primes) {
        Rat coeff(0);
        for (const auto& w : places_above(k, p))
          coeff += make_rat(Int(w.local_degree()), Int(k.degree())) *
                   make_rat(Int(-valuation(a, w).value), Int(w.ramification()));
        lhs.add_term(p, coeff);
        rhs.add_term(p, make_rat(Int(-valuation_rat(nrm, p)), Int(k.degree())));
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("log_abs normalizations") {
  auto& c = corpus();
  auto qi5 = places_above(c.Qi, Int(5));
  FieldElement a = element_from_coords(c.Qi, {Rat(2), Rat(1)}); // in the first place
  CHECK(log_abs(a, qi5[0], LogNormalization::absolute) == Rat(-1));
  CHECK(log_abs(a, qi5[0], LogNormalization::field) == make_rat(Int(-1), Int(2)));
  CHECK(log_abs(element_one(c.Qi), qi5[0], LogNormalization::absolute) == Rat(0));
}

TEST_CASE("places_over satisfies the relative degree sum") {
  auto& c = corpus();
  struct Step {
    FieldEmbedding e;
  };
  std::vector<FieldEmbedding> steps{c.Q_Qi, c.Qi_Z8, c.Q_Qs2, c.Qs2_B, c.Qs3_B, c.Qs6_B, c.Qs2_Z8};
  for (const auto& e : steps) {
    Int p(1);
    while (true) {
      p = next_prime_after(p);
      if (p > 50) break;
      std::vector<Place> below;
      try {
        below = places_above(e.source(), p);
        places_above(e.target(), p);
      } catch (const error&) {
        continue;
      }
      for (const auto& v : below) {
        auto over = places_over(e.target(), e, v);
        long sum = 0;
        for (const auto& w : over) sum += relative_local_degree(w, v);
        CHECK(sum == e.relative_degree());
      }
    }
  }
}

TEST_CASE("places_over identity embedding returns the place itself") {
  auto& c = corpus();
  auto v = places_above(c.Qi, Int(5))[0];
  auto over = places_over(c.Qi, identity_embedding(c.Qi), v);
  REQUIRE(over.size() == 1);
  CHECK(over[0].same_as(v));
}

TEST_CASE("tower example: one place of Q(zeta_8) over each place of Q(i) at 5") {
  auto& c = corpus();
  auto v = places_above(c.Qi, Int(5))[0];
  auto over = places_over(c.Z8, c.Qi_Z8, v);
  REQUIRE(over.size() == 1);
  CHECK(relative_local_degree(over[0], v) == 2);
}

TEST_CASE("galois action on places") {
  auto& c = corpus();
  auto g = automorphisms(c.Qi);
  const Automorphism& conj = g[0].is_identity() ? g[1] : g[0];
  auto qi5 = places_above(c.Qi, Int(5));
  CHECK(galois_image_of_place(conj, qi5[0]).same_as(qi5[1]));
  CHECK(galois_image_of_place(conj, qi5[1]).same_as(qi5[0]));
  CHECK(galois_image_of_place(identity_automorphism(c.Qi), qi5[0]).same_as(qi5[0]));
  auto qi2 = places_above(c.Qi, Int(2));
  CHECK(galois_image_of_place(conj, qi2[0]).same_as(qi2[0]));
}

TEST_CASE("galois action property: v_{sigma(w)}(sigma(a)) = v_w(a)") {
  auto& c = corpus();
  conmap_test::Rng rng(8);
  for (const auto& k : {c.Qi, c.Qs2, c.Z8}) {
    auto g = automorphisms(k);
    for (int i = 0; i < 6; ++i) {
      FieldElement a = rng.element(k);
      for (long pl : {3L, 5L, 7L}) {
        auto ws = places_above(k, Int(pl));
        for (const auto& s : g) {
          for (const auto& w : ws) {
            Place sw = galois_image_of_place(s, w);
            CHECK(valuation(s.apply(a), sw).value == valuation(a, w).value);
          }
        }
      }
    }
  }
}

TEST_CASE("galois action is transitive on places over split primes") {
  auto& c = corpus();
  for (const auto& k : {c.Qi, c.Z8}) {
    auto g = automorphisms(k);
    for (long pl : {5L, 17L}) {
      auto ws = places_above(k, Int(pl));
      std::set<int> reached;
      for (const auto& s : g) reached.insert(galois_image_of_place(s, ws[0]).index());
      CHECK(reached.size() == ws.size());
    }
  }
}

TEST_CASE("valuation precision escalation caps out honestly") {
  auto& c = corpus();
  auto w = places_above(c.Qi, Int(5))[0];
  // v = 600 exceeds the 512-digit certification cap at a split place
  FieldElement big = element_from_rational(c.Qi, pow_rat(Rat(5), 600));
  CHECK_THROWS_AS(valuation(big, w), error);
  // the single-place route is exact and has no cap
  auto wq = unique_place_of_rationals(c.Q, Int(5));
  CHECK(valuation(element_from_rational(c.Q, pow_rat(Rat(5), 600)), wq).value == 600);
  // large but certifiable valuations escalate and succeed
  FieldElement mid = element_from_rational(c.Qi, pow_rat(Rat(5), 40));
  CHECK(valuation(mid, w).value == 40);
}

TEST_CASE("places_above is deterministic") {
  auto k1 = make_field("x^4+1");
  auto k2 = make_field("x^4+1");
  for (long pl : {2L, 3L, 5L, 7L, 17L, 41L}) {
    auto a = places_above(k1, Int(pl));
    auto b = places_above(k2, Int(pl));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].local_factor() == b[i].local_factor());
      CHECK(a[i].ramification() == b[i].ramification());
      CHECK(a[i].residue_degree() == b[i].residue_degree());
    }
  }
}
