#ifndef WG_ARITH_HH
#define WG_ARITH_HH

#include <cstdint>
#include <vector>

namespace wg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// Largest r with r^k <= n; exact is set when r^k == n.
u64 ikroot(u64 n, unsigned k, bool* exact = nullptr);

// p-adic valuation of n (n > 0).
unsigned padic_valuation(u64 n, u64 p);

// Distinct prime factors, ascending.
std::vector<u64> prime_factors(u64 n);

unsigned omega(u64 n);

u64 ipow_checked(u64 base, unsigned e);  // throws capacity_error on overflow

}  // namespace wg

#endif  // WG_ARITH_HH
