#ifndef WG_PRIMES_HH
#define WG_PRIMES_HH

#include <cstdint>
#include <vector>

#include "wg/arith.hh"

namespace wg {

// Bit-packed Eratosthenes over [0, limit].
class PrimeSieve {
 public:
  explicit PrimeSieve(u64 limit);
  bool is_prime(u64 n) const;
  u64 limit() const { return limit_; }
  std::vector<u64> primes() const;           // all primes <= limit, ascending
  std::vector<u64> primes_up_to(u64 x) const;

 private:
  u64 limit_;
  std::vector<u64> bits_;  // bit n set <=> n composite
};

std::vector<u64> sieve_primes(u64 limit);

}  // namespace wg

#endif  // WG_PRIMES_HH
