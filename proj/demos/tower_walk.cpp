// Walks the places of the tower Q < Q(i) < Q(zeta_8) above a prime and
// prints the tables of a perturbed tower map at q = 5.

#include <iostream>

#include "conmap/constructions.hpp"

using namespace conmap;

int main() {
  NumberField q = make_rationals();
  NumberField qi = make_field("x^2+1");
  NumberField z8 = make_cyclotomic(8);
  FieldEmbedding q_qi = embedding_from_rationals(q, qi);
  FieldEmbedding qi_z8(qi, z8, element_from_coords(z8, {Rat(0), Rat(0), Rat(1), Rat(0)}));

  for (long p : {2, 3, 5, 7, 13}) {
    std::cout << "p = " << p << ":\n";
    for (const auto& k : {qi, z8}) {
      std::cout << "  " << k.poly().to_string() << ":";
      for (const auto& w : places_above(k, Int(p)))
        std::cout << " (g=" << w.local_factor().to_string() << ", e=" << w.ramification()
                  << ", f=" << w.residue_degree() << ")";
      std::cout << "\n";
    }
  }

  auto m = tower_map_prefix({q_qi, qi_z8}, Int(5), constant_prime_values(Rat(-1)), 3);
  const auto& d = std::get<TowerData>(m.data());
  std::cout << "tower tables above 5:\n";
  for (size_t i = 0; i < d.tables.size(); ++i) {
    std::cout << "  level " << i << " (" << d.fields[i].poly().to_string() << "):";
    for (const auto& [r, v] : d.tables[i])
      std::cout << " d(idx " << r.index << ") = " << format_rat(v);
    std::cout << "\n";
  }
  std::cout << "c(Q,5) = " << format_rat(evaluate_at_rational_prime(m, q, Int(5))) << "\n";
  return 0;
}
