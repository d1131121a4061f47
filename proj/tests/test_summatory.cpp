#include <catch2/catch_amalgamated.hpp>

#include "conmap/summatory.hpp"

using namespace conmap;

namespace {

// Independent oracle: Omega by bare trial division, no sieve.
long omega_trial(long n) {
  if (n < 0) n = -n;
  long count = 0;
  for (long p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  if (n > 1) ++count;
  return count;
}

long polya_oracle(long x) {
  long acc = 0;
  for (long n = 1; n <= x; ++n) acc += omega_trial(n) % 2 == 0 ? 1 : -1;
  return acc;
}

} // namespace

TEST_CASE("polya summatory frozen values") {
  CHECK(summatory_polya(1) == 1);
  CHECK(summatory_polya(2) == 0);
  CHECK(summatory_polya(9) == -1);
}

TEST_CASE("polya summatory matches the trial-division oracle") {
  long acc = 0;
  auto omega = omega_table(2000);
  for (long n = 1; n <= 2000; ++n) {
    acc += omega[static_cast<size_t>(n)] % 2 == 0 ? 1 : -1;
    CHECK(omega[static_cast<size_t>(n)] == omega_trial(n));
  }
  CHECK(summatory_polya(2000) == acc);
  CHECK(summatory_polya(2000) == polya_oracle(2000));
}

TEST_CASE("chowla summatory") {
  IntPoly sq = parse_poly("n^2");
  for (long x : {1L, 5L, 37L, 200L}) CHECK(summatory_chowla(sq, x) == x);

  IntPoly f = parse_poly("n^2+1");
  CHECK(summatory_chowla(f, 5) == -1); // signs -,-,+,-,+
  long acc = 0;
  for (long n = 1; n <= 300; ++n) acc += omega_trial(n * n + 1) % 2 == 0 ? 1 : -1;
  CHECK(summatory_chowla(f, 300) == acc);

  CHECK(summatory_chowla(parse_poly("n"), 1000) == summatory_polya(1000));
  CHECK_THROWS_AS(summatory_chowla(parse_poly("n-3"), 5), error); // vanishes at 3
  CHECK_THROWS_AS(summatory_polya(0), error);
  CHECK_THROWS_AS(summatory_polya(10, 5), error); // beyond configured limit
}
