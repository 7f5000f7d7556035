#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "wg/errors.hh"
#include "wg/subsets.hh"

using namespace wg;

TEST_CASE("full subsets enumerate the whole base") {
  auto P = build_subset(BaseKind::primes, 0, 100, SubsetStrategy::make_full());
  CHECK(P.elements.size() == 25);
  CHECK(P.member_count() == 25);
  CHECK(P.is_full());
  CHECK(P.contains(97));
  CHECK(!P.contains(91));
  CHECK(!P.contains(101));

  auto B = build_subset(BaseKind::kth_powers, 3, 1000, SubsetStrategy::make_full());
  CHECK(B.elements.size() == 10);
  CHECK(B.contains(729));
  CHECK(B.contains(1000));
  CHECK(!B.contains(100));
}

TEST_CASE("random draws are reproducible and nested across density") {
  auto lo = build_subset(BaseKind::primes, 0, 10000, SubsetStrategy::make_bernoulli(0.3, 42));
  auto lo2 = build_subset(BaseKind::primes, 0, 10000, SubsetStrategy::make_bernoulli(0.3, 42));
  CHECK(lo.member_bits == lo2.member_bits);

  auto hi = build_subset(BaseKind::primes, 0, 10000, SubsetStrategy::make_bernoulli(0.7, 42));
  for (size_t i = 0; i < lo.elements.size(); ++i)
    if (lo.member_index(i)) CHECK(hi.member_index(i));
  CHECK(lo.member_count() < hi.member_count());

  auto other = build_subset(BaseKind::primes, 0, 10000, SubsetStrategy::make_bernoulli(0.3, 43));
  CHECK(other.member_bits != lo.member_bits);

  CHECK(empirical_density(hi, 10000) == doctest::Approx(0.7).epsilon(0.08));
  CHECK_THROWS_AS(SubsetStrategy::make_bernoulli(0.0, 1), domain_error);
  CHECK_THROWS_AS(SubsetStrategy::make_bernoulli(1.5, 1), domain_error);
}

TEST_CASE("index pattern hits its density exactly on full blocks") {
  // 1000 squares below 10^6, 40 blocks of 25
  auto s = build_subset(BaseKind::kth_powers, 2, 1000000, SubsetStrategy::make_index_pattern(25, 13));
  CHECK(s.elements.size() == 1000);
  CHECK(s.member_count() == 13 * 40);
  CHECK(empirical_density(s, 1000000) == doctest::Approx(13.0 / 25).epsilon(1e-12));
  CHECK(s.member_index(0));
  CHECK(s.member_index(12));
  CHECK(!s.member_index(13));
  CHECK(!s.member_index(24));
  CHECK(s.member_index(25));
  CHECK_THROWS_AS(SubsetStrategy::make_index_pattern(10, 11), domain_error);
}

TEST_CASE("explicit lists validate against the base") {
  auto s = build_subset_from_list(BaseKind::primes, 0, 50, {2, 3, 47});
  CHECK(s.member_count() == 3);
  CHECK(s.contains(47));
  CHECK(!s.contains(5));
  CHECK_THROWS_AS(build_subset_from_list(BaseKind::primes, 0, 50, {4}), domain_error);
  CHECK_THROWS_AS(build_subset_from_list(BaseKind::kth_powers, 2, 100, {8}), domain_error);
  CHECK_THROWS_AS(build_subset_from_list(BaseKind::primes, 0, 50, {53}), domain_error);
}

TEST_CASE("saved subsets reload bit for bit") {
  auto s = build_subset(BaseKind::primes, 0, 5000, SubsetStrategy::make_bernoulli(0.5, 7));
  const char* path = "subset_roundtrip.bin";
  save_subset(s, path);
  auto t = load_subset(path);
  CHECK(t.base == s.base);
  CHECK(t.k == s.k);
  CHECK(t.X == s.X);
  CHECK(t.elements == s.elements);
  CHECK(t.member_bits == s.member_bits);
  std::remove(path);
}

TEST_CASE("density of an empty prefix is rejected") {
  auto s = build_subset(BaseKind::primes, 0, 100, SubsetStrategy::make_full());
  CHECK_THROWS_AS(empirical_density(s, 1), domain_error);
  CHECK(empirical_density(s, 100) == 1.0);
  CHECK_THROWS_AS(empirical_density(s, 200), domain_error);
}
