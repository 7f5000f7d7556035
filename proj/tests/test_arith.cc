#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wg/arith.hh"
#include "wg/errors.hh"
#include "wg/primes.hh"

using namespace wg;

TEST_CASE("mulmod and powmod against small direct computation") {
  CHECK(mulmod(7, 8, 5) == 1);
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(powmod(0, 0, 7) == 1);
  // Near-overflow operands.
  u64 big = 0xFFFFFFFFFFFFFFC5ull;  // largest prime below 2^64
  CHECK(mulmod(big - 1, big - 1, big) == 1);
}

TEST_CASE("deterministic Miller-Rabin agrees with sieve up to 2*10^5") {
  PrimeSieve sieve(200000);
  for (u64 n = 0; n <= 200000; ++n) CHECK(is_prime_u64(n) == sieve.is_prime(n));
}

TEST_CASE("Miller-Rabin known large cases") {
  CHECK(is_prime_u64(0xFFFFFFFFFFFFFFC5ull));
  CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime_u64((1ull << 61) - 1));
  CHECK_FALSE(is_prime_u64((1ull << 62) - 1));
}

TEST_CASE("integer k-th root exactness") {
  bool exact = false;
  CHECK(ikroot(35 * 35, 2, &exact) == 35);
  CHECK(exact);
  CHECK(ikroot(35 * 35 + 1, 2, &exact) == 35);
  CHECK_FALSE(exact);
  CHECK(ikroot(0, 5, &exact) == 0);
  CHECK(exact);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    unsigned k = 2 + rng() % 9;
    u64 r = 2 + rng() % 100000;
    u64 n = 1;
    bool fits = true;
    for (unsigned j = 0; j < k; ++j) {
      if (n > ~0ull / r) {
        fits = false;
        break;
      }
      n *= r;
    }
    if (!fits) continue;
    CHECK(ikroot(n, k, &exact) == r);
    CHECK(exact);
    CHECK(ikroot(n - 1, k, &exact) == r - 1);
    CHECK_FALSE(exact);
  }
}

TEST_CASE("valuation and factorization helpers") {
  CHECK(padic_valuation(6, 2) == 1);
  CHECK(padic_valuation(48, 2) == 4);
  CHECK(padic_valuation(7, 2) == 0);
  CHECK(prime_factors(360) == std::vector<u64>{2, 3, 5});
  CHECK(omega(1) == 0);
  CHECK(omega(12) == 2);
  CHECK(omega(30030) == 6);
  CHECK_THROWS_AS(ipow_checked(10, 25), capacity_error);
  CHECK(ipow_checked(3, 4) == 81);
}

TEST_CASE("sieve counts") {
  CHECK(sieve_primes(100).size() == 25);
  CHECK(sieve_primes(2) == std::vector<u64>{2});
  CHECK(sieve_primes(1).empty());
  CHECK(PrimeSieve(1000000).primes().size() == 78498);
}
