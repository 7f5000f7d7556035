#ifndef WG_RESIDUE_HH
#define WG_RESIDUE_HH

#include <vector>

#include "wg/arith.hh"
#include "wg/rational.hh"

namespace wg {

// Enumeration workloads (brute-force counts, sigma tables, Z(W) scans) are
// refused above this modulus size.
constexpr u64 kEnumCap = 10'000'000;

struct PrimePower {
  u64 p;
  unsigned e;
};

// Modulus kept in factored form; value can exceed 64 bits even when every
// prime-power factor is enumerable.
struct FactoredModulus {
  std::vector<PrimePower> factors;  // ascending p, pairwise coprime
  BigInt value;

  static FactoredModulus from_u64(u64 w);
  static FactoredModulus from_prime_powers(std::vector<PrimePower> pps);

  bool fits_u64() const;
  u64 value_u64() const;  // capacity error if it does not fit
  BigInt phi() const;
  u64 local_modulus(size_t i) const;  // p_i^{e_i}, capacity error on overflow
};

// k-th power congruence data: tau = v_p(k), the exponent gamma, and
// R_k = prod_{(p-1) | k} p^gamma.  Sums of s k-th powers of integers coprime
// to R_k are ~always ~ s modulo R_k, hence the n ≡ s (mod R_k) side condition.
unsigned tau(unsigned k, u64 p);
unsigned gamma_exp(unsigned k, u64 p);
u64 compute_Rk(unsigned k);

struct KPowerContext {
  unsigned k;
  unsigned omega_k;
  u64 R_k;
};
KPowerContext make_kpower_context(unsigned k);

// |Z(p^e)|: distinct k-th powers of units mod p^e.  Closed form; p = 2 with
// e <= 2 falls back to enumeration (unit group too small for the generic
// C_2 x C_{2^{e-2}} shape).
BigInt count_unit_kth_powers(u64 p, unsigned e, unsigned k);
u64 count_unit_kth_powers_brute(u64 p, unsigned e, unsigned k);

// |Z_m^{(k)}|: distinct k-th powers mod m including non-units, by enumeration
// locally and multiplicativity across factors.
u64 count_all_kth_powers_local(u64 p, unsigned e, unsigned k);
BigInt count_all_kth_powers(const FactoredModulus& m, unsigned k);

BigInt count_unit_kth_powers(const FactoredModulus& m, unsigned k);  // |Z(W)|

// sigma(W, k, b) = #{z in [1, W] : z^k ≡ b (mod W)}.  Residues live in
// [1, W], with b = W standing for the zero class.
u64 sigma_roots(const FactoredModulus& W, unsigned k, const BigInt& b);
u64 sigma_roots(u64 W, unsigned k, u64 b);

bool in_Z(const FactoredModulus& W, unsigned k, const BigInt& b);
bool in_Z(u64 W, unsigned k, u64 b);

// Ascending members of Z(W) as residues in [1, W].  Enumeration-capped.
std::vector<u64> enumerate_Z(const FactoredModulus& W, unsigned k);

// Per-prime-power root-count table: entry r in [0, p^e) counts k-th roots of
// the class r.  Cached process-wide (read-mostly; guarded by a mutex).
const std::vector<u32>& local_sigma_table(u64 p, unsigned e, unsigned k);

}  // namespace wg

#endif  // WG_RESIDUE_HH
