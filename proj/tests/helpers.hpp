#ifndef CONMAP_TEST_HELPERS_HPP
#define CONMAP_TEST_HELPERS_HPP

#include <random>

#include "conmap/constructions.hpp"

namespace conmap_test {

using namespace conmap;

// The field corpus used across the suites, with the embeddings catalog.
// Generator images: i = zeta^2 and sqrt2 = zeta - zeta^3 in Q(zeta_8);
// sqrt2 = (t^3 - 9t)/2, sqrt3 = t - sqrt2, sqrt6 = sqrt2*sqrt3 for
// t = sqrt2 + sqrt3 in the biquadratic field.
struct Corpus {
  NumberField Q = make_rationals();
  NumberField Qi = make_field(IntPoly({Int(1), Int(0), Int(1)}));
  NumberField Qs2 = make_quadratic(Int(2));
  NumberField Qs3 = make_quadratic(Int(3));
  NumberField Qs6 = make_quadratic(Int(6));
  NumberField Qm5 = make_quadratic(Int(-5));
  NumberField Z8 = make_cyclotomic(8);
  NumberField B = make_biquadratic(Int(2), Int(3));

  FieldEmbedding Q_Qi = embedding_from_rationals(Q, Qi);
  FieldEmbedding Q_Qs2 = embedding_from_rationals(Q, Qs2);
  FieldEmbedding Q_Qm5 = embedding_from_rationals(Q, Qm5);
  FieldEmbedding Q_Z8 = embedding_from_rationals(Q, Z8);
  FieldEmbedding Q_B = embedding_from_rationals(Q, B);

  FieldEmbedding Qi_Z8{Qi, Z8, element_from_coords(Z8, {Rat(0), Rat(0), Rat(1), Rat(0)})};
  FieldEmbedding Qs2_Z8{Qs2, Z8, element_from_coords(Z8, {Rat(0), Rat(1), Rat(0), Rat(-1)})};

  FieldElement b_sqrt2 =
      (Rat(1) / Rat(2)) * (element_pow(generator(B), 3) - Rat(9) * generator(B));
  FieldElement b_sqrt3 = generator(B) - b_sqrt2;
  FieldElement b_sqrt6 = b_sqrt2 * b_sqrt3;
  FieldEmbedding Qs2_B{Qs2, B, b_sqrt2};
  FieldEmbedding Qs3_B{Qs3, B, b_sqrt3};
  FieldEmbedding Qs6_B{Qs6, B, b_sqrt6};
};

inline Corpus& corpus() {
  static Corpus c;
  return c;
}

class Rng {
public:
  explicit Rng(unsigned long seed) : gen_(seed) {}

  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen_);
  }

  Rat rational(long bound, bool allow_denominator = true) {
    long num = integer(-bound, bound);
    long den = allow_denominator ? integer(1, 5) : 1;
    return make_rat(Int(num), Int(den));
  }

  Rat nonzero_rational(long bound) {
    while (true) {
      Rat r = rational(bound);
      if (r != 0) return r;
    }
  }

  // Nonzero element with small integer coordinates.
  FieldElement element(const NumberField& k, long bound = 9, bool integral = true) {
    while (true) {
      std::vector<Rat> c;
      for (int i = 0; i < k.degree(); ++i) c.push_back(rational(bound, !integral));
      FieldElement a(k, std::move(c));
      if (!a.is_zero()) return a;
    }
  }

  // Element whose norm avoids the given primes (for presentations with a
  // nontrivial index).
  FieldElement element_avoiding(const NumberField& k, const std::vector<Int>& bad_primes,
                                long bound = 9) {
    while (true) {
      FieldElement a = element(k, bound, true);
      Rat nrm = field_norm(a);
      bool ok = true;
      for (const auto& p : bad_primes) {
        if (valuation_int(rat_num(nrm), p) != 0) ok = false;
      }
      if (ok) return a;
    }
  }

  std::mt19937_64& raw() { return gen_; }

private:
  std::mt19937_64 gen_;
};

} // namespace conmap_test

#endif
