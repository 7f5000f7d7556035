#include "wg/arith.hh"

#include <cmath>
#include <limits>

#include "wg/errors.hh"

namespace wg {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<__uint128_t>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set is a proven deterministic witness set below 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Overflow-saturating power, for root bracketing only.
u64 ipow_sat(u64 base, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      return std::numeric_limits<u64>::max();
    r *= base;
  }
  return r;
}

}  // namespace

u64 ikroot(u64 n, unsigned k, bool* exact) {
  if (k == 0) throw domain_error("ikroot: k must be positive");
  if (k == 1 || n < 2) {
    if (exact) *exact = true;
    return n;
  }
  u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
  // std::pow seed can be off by a few ulps either way; settle exactly.
  while (r > 0 && ipow_sat(r, k) > n) --r;
  while (ipow_sat(r + 1, k) <= n) ++r;
  if (exact) *exact = (ipow_sat(r, k) == n);
  return r;
}

unsigned padic_valuation(u64 n, u64 p) {
  if (n == 0 || p < 2) throw domain_error("padic_valuation: need n > 0, p >= 2");
  unsigned v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      f.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

unsigned omega(u64 n) { return static_cast<unsigned>(prime_factors(n).size()); }

u64 ipow_checked(u64 base, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw capacity_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace wg
