#include "wg/primes.hh"

#include "wg/errors.hh"

namespace wg {

PrimeSieve::PrimeSieve(u64 limit) : limit_(limit) {
  if (limit > (1ull << 33))
    throw capacity_error("sieve limit above 2^33; use is_prime_u64 for point queries");
  bits_.assign(limit / 64 + 1, 0);
  auto set = [&](u64 n) { bits_[n >> 6] |= 1ull << (n & 63); };
  set(0);
  if (limit >= 1) set(1);
  for (u64 p = 2; p * p <= limit; ++p) {
    if ((bits_[p >> 6] >> (p & 63)) & 1) continue;
    for (u64 m = p * p; m <= limit; m += p) set(m);
  }
}

bool PrimeSieve::is_prime(u64 n) const {
  if (n > limit_) throw domain_error("is_prime: beyond sieve limit");
  return ((bits_[n >> 6] >> (n & 63)) & 1) == 0;
}

std::vector<u64> PrimeSieve::primes() const { return primes_up_to(limit_); }

std::vector<u64> PrimeSieve::primes_up_to(u64 x) const {
  if (x > limit_) throw domain_error("primes_up_to: beyond sieve limit");
  std::vector<u64> out;
  for (u64 n = 2; n <= x; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

std::vector<u64> sieve_primes(u64 limit) { return PrimeSieve(limit).primes(); }

}  // namespace wg
