// Builds the canonical prime-omega extension and the perturbed Q(i) variant,
// then prints both functionals on a few elements of Q(i).

#include <iostream>

#include "conmap/constructions.hpp"

using namespace conmap;

int main() {
  NumberField q = make_rationals();
  NumberField qi = make_field("x^2+1");

  auto canon = canonical_omega_map();
  auto variant = qi_worked_example();

  std::cout << "values at the rationals:\n";
  for (long p : {2, 3, 5, 7, 11}) {
    std::cout << "  c(Q," << p << ") = " << format_rat(evaluate_at_rational_prime(canon, q, Int(p)))
              << "  (variant " << format_rat(evaluate_at_rational_prime(variant, q, Int(p)))
              << ")\n";
  }

  std::vector<FieldElement> samples{
      element_from_rational(qi, Rat(12)),
      element_from_coords(qi, {Rat(2), Rat(1)}),
      element_from_coords(qi, {Rat(2), Rat(-1)}),
      element_from_coords(qi, {Rat(1), Rat(1)}),
  };
  std::cout << "functional values on elements of Q(i):\n";
  for (const auto& a : samples) {
    std::cout << "  alpha = " << a.to_string() << ": canonical " << format_rat(phi(canon, a))
              << ", variant " << format_rat(phi(variant, a)) << ", snorm "
              << snorm(a).to_string() << "\n";
  }

  auto inv = check_galois_invariance(variant, embedding_from_rationals(q, qi),
                                     unique_place_of_rationals(q, Int(5)));
  std::cout << "variant is Q-Galois-invariant at 5: " << (inv.invariant ? "yes" : "no");
  if (!inv.invariant)
    std::cout << "  (got " << format_rat(inv.first_violation->got) << ", expected "
              << format_rat(inv.first_violation->expected) << ")";
  std::cout << "\n";
  return 0;
}
