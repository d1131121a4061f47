#ifndef CONMAP_SUMMATORY_HPP
#define CONMAP_SUMMATORY_HPP

#include <vector>

#include "poly.hpp"

namespace conmap {

constexpr long kSummatoryLimit = 1000000;

// Omega(n) for n = 1..x through a smallest-prime-factor sieve.
inline std::vector<int> omega_table(long x) {
  if (x < 1) fail(errc::bad_argument, "omega table needs x >= 1");
  std::vector<long> spf(static_cast<size_t>(x) + 1, 0);
  for (long i = 2; i <= x; ++i) {
    if (spf[static_cast<size_t>(i)] != 0) continue;
    for (long j = i; j <= x; j += i)
      if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = i;
  }
  std::vector<int> omega(static_cast<size_t>(x) + 1, 0);
  for (long i = 2; i <= x; ++i)
    omega[static_cast<size_t>(i)] = omega[static_cast<size_t>(i / spf[static_cast<size_t>(i)])] + 1;
  return omega;
}

inline long omega_of_int(const Int& n) {
  if (n == 0) fail(errc::zero_argument, "omega of zero");
  long acc = 0;
  for (const auto& [p, e] : factor_integer(n)) {
    (void)p;
    acc += e;
  }
  return acc;
}

// L(x) = sum_{n<=x} (-1)^Omega(n).
inline long summatory_polya(long x, long limit = kSummatoryLimit) {
  if (x < 1) fail(errc::bad_argument, "summatory bound must be >= 1");
  if (x > limit) fail(errc::bad_argument, "summatory bound exceeds configured limit");
  auto omega = omega_table(x);
  long acc = 0;
  for (long n = 1; n <= x; ++n) acc += (omega[static_cast<size_t>(n)] % 2 == 0) ? 1 : -1;
  return acc;
}

// L_f(x) = sum_{n<=x} (-1)^Omega(f(n)); errors when f(n) = 0 in range.
inline long summatory_chowla(const IntPoly& f, long x, long limit = kSummatoryLimit) {
  if (x < 1) fail(errc::bad_argument, "summatory bound must be >= 1");
  if (x > limit) fail(errc::bad_argument, "summatory bound exceeds configured limit");
  long acc = 0;
  for (long n = 1; n <= x; ++n) {
    Int v = f.evaluate(Int(n));
    if (v == 0)
      fail(errc::zero_value_in_range, "polynomial vanishes at n = " + std::to_string(n));
    acc += (omega_of_int(v) % 2 == 0) ? 1 : -1;
  }
  return acc;
}

} // namespace conmap

#endif
