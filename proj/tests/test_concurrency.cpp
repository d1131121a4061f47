#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "helpers.hpp"

using namespace conmap;

TEST_CASE("shared fields tolerate concurrent place queries and valuations") {
  NumberField k = make_field("x^4+1");
  NumberField q = make_rationals();
  auto m = qi_worked_example();

  constexpr int kThreads = 4;
  std::vector<std::vector<std::string>> results(kThreads);
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      conmap_test::Rng rng(1000 + static_cast<unsigned long>(t % 2));
      std::string log;
      for (long pl : {2L, 3L, 5L, 7L, 11L, 13L, 17L}) {
        for (const auto& w : places_above(k, Int(pl))) {
          log += w.local_factor().to_string() + ";";
          log += std::to_string(w.ramification()) + ",";
        }
        FieldElement a = rng.element(k);
        for (const auto& w : places_above(k, Int(pl)))
          log += std::to_string(valuation(a, w).value) + "|";
      }
      for (long pl : {2L, 3L, 5L}) {
        Place u = unique_place_of_rationals(q, Int(pl));
        log += format_rat(evaluate(m, u.field(), u)) + "&";
      }
      results[static_cast<size_t>(t)] = {log};
    });
  }
  for (auto& th : threads) th.join();
  // threads with equal seeds must observe identical data
  CHECK(results[0] == results[2]);
  CHECK(results[1] == results[3]);
}
