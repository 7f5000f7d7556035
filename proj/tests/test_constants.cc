#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wg/constants.hh"
#include "wg/errors.hh"
#include "wg/primes.hh"

using namespace wg;

TEST_CASE("local factors") {
  CHECK(local_factor(3, 2, false) == Rational(4, 3));
  CHECK(local_factor(5, 3, false) == Rational(101, 100));
  CHECK(local_factor(2, 2, false) == Rational(2));
  CHECK(local_factor(2, 2, true) == Rational(3, 2));  // squares of units mod 16: {1,9}
  CHECK(local_factor(104729, 2, false) < Rational(1000000001L, 1000000000L));
}

TEST_CASE("euler product partial at tiny P") {
  auto z2 = euler_constant(2, 2, false);
  CHECK(z2.partial == Rational(2));  // single factor 1 + 1/|Z(4)|, |Z(4)| = {1}
  auto z2b = euler_constant(2, 10, false);
  CHECK(z2b.partial == Rational(968, 315));  // 2 * 4/3 * 11/10 * 22/21
  CHECK_THROWS_AS(euler_constant(2, 1, false), domain_error);
  CHECK_THROWS_AS(euler_constant(1, 10, false), domain_error);
}

// The product over p <= P of (1 + 1/z_p) expands to the sum over square-free
// P-smooth n of prod_{p | n} 1/z_p.  Checking the two routes against each
// other exercises the accumulation logic with brute-force local counts.
TEST_CASE("product equals square-free expansion at P = 5") {
  for (unsigned k : {2u, 3u}) {
    for (bool doubled : {false, true}) {
      unsigned e = doubled ? 2 * k : k;
      Rational z2(1, BigInt(count_unit_kth_powers_brute(2, e, k)));
      Rational z3(1, BigInt(count_unit_kth_powers_brute(3, e, k)));
      Rational z5(1, BigInt(count_unit_kth_powers_brute(5, e, k)));
      Rational sum(1);
      sum += z2 + z3 + z5;
      sum += z2 * z3 + z2 * z5 + z3 * z5;
      sum += z2 * z3 * z5;
      CHECK(euler_constant(k, 5, doubled).partial == sum);
    }
  }
}

TEST_CASE("frozen decimals from the independent recomputation") {
  // Partial values pinned by tools/oracle_constants.py at these exact P.
  auto t2 = euler_constant(2, 2000, true);
  CHECK(t2.to_double() == doctest::Approx(1.5637401273824196).epsilon(1e-14));
  CHECK(t2.tail_upper < Rational::from_decimal("1e-9"));

  auto t4 = euler_constant(4, 200, true);
  CHECK(t4.to_double() == doctest::Approx(1.0629998791829882).epsilon(1e-14));

  auto t3 = euler_constant(3, 500, true);
  CHECK(t3.to_double() == doctest::Approx(1.0377310946971064).epsilon(1e-14));

  auto z3 = euler_constant(3, 2000, false);
  CHECK(z3.to_double() == doctest::Approx(1.4930396202094102).epsilon(1e-14));

  auto z2 = euler_constant(2, 100, false);
  CHECK(z2.to_double() == doctest::Approx(3.2676038558058632).epsilon(1e-14));
}

TEST_CASE("interval soundness and bracket") {
  auto est = euler_constant(2, 100, false);
  CHECK(est.lower() <= est.upper());
  CHECK(est.lower() >= Rational(1));
  auto [lo, hi] = est.bracket();
  CHECK(lo <= est.lower());
  CHECK(est.upper() <= hi);
  // Outward rounding loses at most 2^-96 per side.
  Rational slack(BigInt(1), BigInt(1) << 90);
  CHECK(est.lower() - lo < slack);
  CHECK(hi - est.upper() < slack);
  // Tail too large for the exp bound: upper() must refuse, not lie.
  auto coarse = euler_constant(2, 2, false);
  CHECK_THROWS_AS(coarse.upper(), domain_error);
}

TEST_CASE("partial nondecreasing and tail nonincreasing in P") {
  Rational prev_partial(0);
  Rational prev_tail(1000000L);
  for (u64 P : {10ull, 100ull, 1000ull}) {
    auto est = euler_constant(3, P, false);
    CHECK(est.partial >= prev_partial);
    CHECK(est.tail_upper <= prev_tail);
    prev_partial = est.partial;
    prev_tail = est.tail_upper;
  }
}

TEST_CASE("nested intervals across P agree") {
  for (unsigned k : {2u, 5u}) {
    auto a = euler_constant(k, 300, k == 2);
    auto b = euler_constant(k, 600, k == 2);
    CHECK(a.lower() <= b.lower());
    CHECK(b.upper() <= a.upper());
  }
}

TEST_CASE("ratio of all to unit k-th power counts") {
  CHECK(ratio_ZW(2, 2, false) == Rational(2));
  CHECK(ratio_ZW(2, 1, false) == Rational(1));
  CHECK(ratio_ZW(2, 3, true) == Rational(62, 27));
  CHECK(ratio_ZW(2, 3, false) == Rational(8, 3));
  CHECK(ratio_ZW(2, 5, true) == Rational(899, 375));
  CHECK(ratio_ZW(2, 5, false) == Rational(44, 15));
  CHECK(ratio_ZW(3, 3, true) == Rational(6253, 5184));
  CHECK(ratio_ZW(3, 5, true) == Rational(78794053L, 64800000L));
  CHECK(ratio_ZW(3, 5, false) == Rational(707, 480));
}

TEST_CASE("doubled ratio sits between truncated sum and the undoubled ratio") {
  for (unsigned k : {2u, 3u}) {
    for (u64 w : {3ull, 5ull}) {
      Rational rd = ratio_ZW(k, w, true);
      Rational ru = ratio_ZW(k, w, false);
      CHECK(rd < ru);
      Rational trunc(1);
      for (u64 p : sieve_primes(w)) trunc *= local_factor(p, k, true);
      CHECK(trunc < rd);
    }
  }
}
