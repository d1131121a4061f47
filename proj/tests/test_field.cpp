#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace conmap;
using conmap_test::corpus;

TEST_CASE("make_field validates its input") {
  CHECK(make_field("x").degree() == 1);
  CHECK(make_field("x^2+1").degree() == 2);
  CHECK_THROWS_MATCHES(make_field("x^2-1"), error, Catch::Matchers::MessageMatches(
                                                       Catch::Matchers::ContainsSubstring("x - 1")));
  CHECK_THROWS_AS(make_field("2*x^2+1"), error); // not monic
  CHECK_THROWS_AS(make_field("x^9+x+1"), error); // degree cap
  CHECK_THROWS_AS(make_field("x^4+4"), error);   // (x^2-2x+2)(x^2+2x+2)
  CHECK_THROWS_AS(make_field("x^4+x^2+1"), error);
  CHECK(make_field("x^4+1").degree() == 4);
  CHECK(make_field("x^3-2").degree() == 3);
  CHECK(make_field("x^8+1").degree() == 8);
}

TEST_CASE("element arithmetic in Q(i)") {
  auto& c = corpus();
  FieldElement a = element_from_coords(c.Qi, {Rat(2), Rat(1)});  // 2+i
  FieldElement b = element_from_coords(c.Qi, {Rat(2), Rat(-1)}); // 2-i
  CHECK((a * b) == element_from_rational(c.Qi, Rat(5)));
  CHECK((a * element_one(c.Qi)) == a);
  CHECK((a / a) == element_one(c.Qi));
  CHECK((a + b) == element_from_rational(c.Qi, Rat(4)));
  CHECK_THROWS_AS(a / element_zero(c.Qi), error);
  CHECK_THROWS_AS(element_arith(a, element_from_rational(c.Q, Rat(1)), ArithOp::add), error);
}

TEST_CASE("norms match the resultant oracle") {
  auto& c = corpus();
  conmap_test::Rng rng(123);
  for (const auto& k : {c.Qi, c.Qs2, c.Qm5, c.Z8, c.B}) {
    for (int i = 0; i < 25; ++i) {
      FieldElement a = rng.element(k, 9, false);
      // oracle: Norm = Res(f, A) for monic f, adjusted by the denominator
      auto [ip, den] = a.as_poly().clear_denominators();
      Rat oracle = a.field().degree() == 1
                       ? a.coords()[0]
                       : resultant(RatPoly(k.poly()), RatPoly(ip)) /
                             pow_rat(Rat(den), k.degree());
      CHECK(field_norm(a) == oracle);
    }
  }
}

TEST_CASE("norm examples and multiplicativity") {
  auto& c = corpus();
  CHECK(field_norm(element_from_coords(c.Qi, {Rat(2), Rat(1)})) == Rat(5));
  CHECK(field_norm(element_one(c.Qi)) == Rat(1));
  CHECK(field_norm(element_from_rational(c.Qm5, Rat(2))) == Rat(4));
  conmap_test::Rng rng(321);
  for (const auto& k : {c.Qi, c.Qs2, c.Z8}) {
    for (int i = 0; i < 20; ++i) {
      FieldElement a = rng.element(k), b = rng.element(k);
      CHECK(field_norm(a * b) == field_norm(a) * field_norm(b));
    }
  }
}

TEST_CASE("automorphism groups of the supported families") {
  auto& c = corpus();
  auto check_group = [](const NumberField& k) {
    auto g = automorphisms(k);
    REQUIRE(static_cast<int>(g.size()) == k.degree());
    bool has_id = false;
    for (const auto& s : g) has_id = has_id || s.is_identity();
    CHECK(has_id);
    // closure and inverses
    for (const auto& s : g) {
      bool has_inverse = false;
      for (const auto& t : g) {
        auto st = s.compose(t);
        bool found = false;
        for (const auto& u : g) found = found || (u == st);
        CHECK(found);
        has_inverse = has_inverse || st.is_identity();
      }
      CHECK(has_inverse);
    }
  };
  check_group(c.Q);
  check_group(c.Qi);
  check_group(c.Qs2);
  check_group(c.Z8);
  check_group(c.B);
  check_group(make_cyclotomic(5));
  check_group(make_cyclotomic(16));
  CHECK_THROWS_AS(automorphisms(make_field("x^3-2")), error);
}

TEST_CASE("norm is invariant under automorphisms") {
  auto& c = corpus();
  conmap_test::Rng rng(55);
  for (const auto& k : {c.Qi, c.Qs2, c.Z8, c.B}) {
    auto g = automorphisms(k);
    for (int i = 0; i < 10; ++i) {
      FieldElement a = rng.element(k);
      for (const auto& s : g) CHECK(field_norm(s.apply(a)) == field_norm(a));
    }
  }
}

TEST_CASE("cyclotomic automorphisms act as zeta -> zeta^a") {
  auto z8 = corpus().Z8;
  auto g = automorphisms(z8);
  REQUIRE(g.size() == 4);
  for (const auto& s : g) {
    CHECK(evaluate_at(z8.poly(), s.generator_image()).is_zero());
  }
}

TEST_CASE("embeddings validate and compose") {
  auto& c = corpus();
  CHECK(c.Qi_Z8.relative_degree() == 2);
  CHECK(c.Qs2_B.relative_degree() == 2);
  // sqrt2 image really squares to 2
  CHECK((c.b_sqrt2 * c.b_sqrt2) == element_from_rational(c.B, Rat(2)));
  CHECK((c.b_sqrt3 * c.b_sqrt3) == element_from_rational(c.B, Rat(3)));
  CHECK((c.b_sqrt6 * c.b_sqrt6) == element_from_rational(c.B, Rat(6)));
  // bad image rejected
  CHECK_THROWS_AS(FieldEmbedding(c.Qi, c.Z8, generator(c.Z8)), error);
  // composition Q -> Qs2 -> B agrees with the direct embedding
  auto direct = embedding_from_rationals(c.Q, c.B);
  auto composed = compose(c.Q_Qs2, c.Qs2_B);
  CHECK(composed.generator_image() == direct.generator_image());
}

TEST_CASE("embedding compatibility of norms") {
  auto& c = corpus();
  conmap_test::Rng rng(77);
  auto check_pair = [&](const FieldEmbedding& e) {
    for (int i = 0; i < 15; ++i) {
      FieldElement a = rng.element(e.source());
      CHECK(field_norm(e.apply(a)) ==
            pow_rat(field_norm(a), e.relative_degree()));
    }
  };
  check_pair(c.Qi_Z8);
  check_pair(c.Qs2_Z8);
  check_pair(c.Qs2_B);
  check_pair(c.Qs3_B);
  check_pair(c.Qs6_B);
  check_pair(c.Q_Qi);
}

TEST_CASE("cyclotomic polynomial table") {
  CHECK(cyclotomic_poly(1) == parse_poly("x-1"));
  CHECK(cyclotomic_poly(4) == parse_poly("x^2+1"));
  CHECK(cyclotomic_poly(5) == parse_poly("x^4+x^3+x^2+x+1"));
  CHECK(cyclotomic_poly(8) == parse_poly("x^4+1"));
  CHECK(cyclotomic_poly(12) == parse_poly("x^4-x^2+1"));
  CHECK(cyclotomic_poly(16) == parse_poly("x^8+1"));
  CHECK(cyclotomic_poly(15) == parse_poly("x^8-x^7+x^5-x^4+x^3-x+1"));
  CHECK_THROWS_AS(make_cyclotomic(17), error); // phi = 16 over the cap
}

TEST_CASE("degree-1 fields behave like Q") {
  auto q = make_field("x+3"); // generator -3, still the rationals
  CHECK(q.degree() == 1);
  FieldElement a = element_from_rational(q, make_rat(Int(7), Int(2)));
  CHECK(field_norm(a) == make_rat(Int(7), Int(2)));
  CHECK(generator(q) == element_from_rational(q, Rat(-3)));
}
