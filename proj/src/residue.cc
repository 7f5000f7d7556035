#include "wg/residue.hh"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "wg/errors.hh"

namespace wg {

namespace mp = boost::multiprecision;

FactoredModulus FactoredModulus::from_u64(u64 w) {
  if (w == 0) throw domain_error("modulus must be positive");
  std::vector<PrimePower> pps;
  u64 n = w;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      pps.push_back({p, e});
    }
  }
  if (n > 1) pps.push_back({n, 1});
  FactoredModulus m;
  m.factors = std::move(pps);
  m.value = w;
  return m;
}

FactoredModulus FactoredModulus::from_prime_powers(std::vector<PrimePower> pps) {
  std::sort(pps.begin(), pps.end(), [](auto& a, auto& b) { return a.p < b.p; });
  BigInt v = 1;
  u64 prev = 0;
  for (auto& f : pps) {
    if (!is_prime_u64(f.p)) throw domain_error("factor base " + std::to_string(f.p) + " is not prime");
    if (f.e == 0) throw domain_error("zero exponent in factored modulus");
    if (f.p == prev) throw domain_error("repeated prime in factored modulus");
    prev = f.p;
    for (unsigned i = 0; i < f.e; ++i) v *= f.p;
  }
  FactoredModulus m;
  m.factors = std::move(pps);
  m.value = std::move(v);
  return m;
}

bool FactoredModulus::fits_u64() const {
  return value <= BigInt(std::numeric_limits<u64>::max());
}

u64 FactoredModulus::value_u64() const {
  if (!fits_u64()) throw capacity_error("modulus exceeds 64 bits");
  return value.convert_to<u64>();
}

BigInt FactoredModulus::phi() const {
  BigInt r = 1;
  for (auto& f : factors) {
    BigInt pe1 = 1;
    for (unsigned i = 0; i + 1 < f.e; ++i) pe1 *= f.p;
    r *= pe1 * (f.p - 1);
  }
  return r;
}

u64 FactoredModulus::local_modulus(size_t i) const {
  return ipow_checked(factors[i].p, factors[i].e);
}

unsigned tau(unsigned k, u64 p) {
  if (k == 0) throw domain_error("tau: k must be positive");
  if (!is_prime_u64(p)) throw domain_error("tau: p must be prime");
  return padic_valuation(k, p);
}

unsigned gamma_exp(unsigned k, u64 p) {
  unsigned t = tau(k, p);
  if (p == 2 && t > 0) return t + 2;
  return t + 1;
}

u64 compute_Rk(unsigned k) {
  if (k < 2) throw domain_error("compute_Rk: k >= 2 required");
  u64 r = 1;
  // (p-1) | k forces p <= k+1.
  for (u64 p = 2; p <= k + 1; ++p) {
    if (!is_prime_u64(p) || k % (p - 1) != 0) continue;
    u64 pe = ipow_checked(p, gamma_exp(k, p));
    if (r > std::numeric_limits<u64>::max() / pe) throw capacity_error("R_k overflows 64 bits");
    r *= pe;
  }
  return r;
}

KPowerContext make_kpower_context(unsigned k) {
  if (k < 2) throw domain_error("k >= 2 required");
  return KPowerContext{k, omega(k), compute_Rk(k)};
}

u64 count_unit_kth_powers_brute(u64 p, unsigned e, unsigned k) {
  if (!is_prime_u64(p)) throw domain_error("count_unit_kth_powers: p must be prime");
  if (e == 0 || k == 0) throw domain_error("count_unit_kth_powers: e, k must be positive");
  u64 pe = ipow_checked(p, e);
  if (pe > kEnumCap) throw capacity_error("brute-force count beyond enumeration cap");
  std::vector<u64> seen((pe + 63) / 64, 0);
  u64 count = 0;
  for (u64 z = 1; z < pe; ++z) {
    if (z % p == 0) continue;
    u64 r = powmod(z, k, pe);
    if (!((seen[r >> 6] >> (r & 63)) & 1)) {
      seen[r >> 6] |= 1ull << (r & 63);
      ++count;
    }
  }
  return count;
}

BigInt count_unit_kth_powers(u64 p, unsigned e, unsigned k) {
  if (!is_prime_u64(p)) throw domain_error("count_unit_kth_powers: p must be prime");
  if (e == 0 || k == 0) throw domain_error("count_unit_kth_powers: e, k must be positive");
  if (p == 2) {
    if (e <= 2) return count_unit_kth_powers_brute(p, e, k);
    // Units mod 2^e = C_2 x C_{2^{e-2}}; the k-th power image has size
    // (2/(k,2)) * (2^{e-2}/(k,2^{e-2})).
    BigInt half = BigInt(1) << (e - 2);
    BigInt g1 = mp::gcd(BigInt(k), BigInt(2));
    BigInt g2 = mp::gcd(BigInt(k), half);
    return (2 / g1) * (half / g2);
  }
  // Cyclic unit group: image size phi / (k, phi).
  BigInt phi = 1;
  for (unsigned i = 0; i + 1 < e; ++i) phi *= p;
  phi *= p - 1;
  return phi / mp::gcd(BigInt(k), phi);
}

u64 count_all_kth_powers_local(u64 p, unsigned e, unsigned k) {
  if (!is_prime_u64(p)) throw domain_error("count_all_kth_powers: p must be prime");
  if (e == 0 || k == 0) throw domain_error("count_all_kth_powers: e, k must be positive");
  u64 pe = ipow_checked(p, e);
  if (pe > kEnumCap) throw capacity_error("brute-force count beyond enumeration cap");
  std::vector<u64> seen((pe + 63) / 64, 0);
  u64 count = 0;
  for (u64 t = 0; t < pe; ++t) {
    u64 r = powmod(t, k, pe);
    if (!((seen[r >> 6] >> (r & 63)) & 1)) {
      seen[r >> 6] |= 1ull << (r & 63);
      ++count;
    }
  }
  return count;
}

BigInt count_all_kth_powers(const FactoredModulus& m, unsigned k) {
  BigInt r = 1;
  for (auto& f : m.factors) r *= count_all_kth_powers_local(f.p, f.e, k);
  return r;
}

BigInt count_unit_kth_powers(const FactoredModulus& m, unsigned k) {
  BigInt r = 1;
  for (auto& f : m.factors) r *= count_unit_kth_powers(f.p, f.e, k);
  return r;
}

namespace {

struct TableKey {
  u64 p;
  unsigned e;
  unsigned k;
  bool operator<(const TableKey& o) const {
    return std::tie(p, e, k) < std::tie(o.p, o.e, o.k);
  }
};

std::map<TableKey, std::vector<u32>> g_sigma_cache;
std::mutex g_sigma_mutex;

}  // namespace

const std::vector<u32>& local_sigma_table(u64 p, unsigned e, unsigned k) {
  if (!is_prime_u64(p)) throw domain_error("local_sigma_table: p must be prime");
  u64 pe = ipow_checked(p, e);
  if (pe > kEnumCap) throw capacity_error("sigma table beyond enumeration cap");
  std::lock_guard<std::mutex> lock(g_sigma_mutex);
  auto it = g_sigma_cache.find({p, e, k});
  if (it != g_sigma_cache.end()) return it->second;
  std::vector<u32> table(pe, 0);
  for (u64 z = 1; z <= pe; ++z) ++table[powmod(z % pe, k, pe)];
  return g_sigma_cache.emplace(TableKey{p, e, k}, std::move(table)).first->second;
}

u64 sigma_roots(const FactoredModulus& W, unsigned k, const BigInt& b) {
  if (b < 1 || b > W.value) throw domain_error("sigma: residue must lie in [1, W]");
  u64 r = 1;
  for (size_t i = 0; i < W.factors.size(); ++i) {
    u64 pe = W.local_modulus(i);
    u64 loc = (b % pe).convert_to<u64>();
    const auto& table = local_sigma_table(W.factors[i].p, W.factors[i].e, k);
    r *= table[loc];
    if (r == 0) return 0;
  }
  return r;
}

u64 sigma_roots(u64 W, unsigned k, u64 b) {
  return sigma_roots(FactoredModulus::from_u64(W), k, BigInt(b));
}

bool in_Z(const FactoredModulus& W, unsigned k, const BigInt& b) {
  if (b < 1 || b > W.value) throw domain_error("in_Z: residue must lie in [1, W]");
  if (mp::gcd(b, W.value) != 1) return false;
  return sigma_roots(W, k, b) > 0;
}

bool in_Z(u64 W, unsigned k, u64 b) {
  return in_Z(FactoredModulus::from_u64(W), k, BigInt(b));
}

std::vector<u64> enumerate_Z(const FactoredModulus& W, unsigned k) {
  if (!W.fits_u64() || W.value_u64() > kEnumCap)
    throw capacity_error("Z(W) enumeration beyond cap");
  u64 w = W.value_u64();
  // Local root-count tables answer both membership questions at once:
  // sigma > 0 and coprimality (class divisible by p has roots only when the
  // table says so, and such classes are excluded by the gcd test below).
  std::vector<const std::vector<u32>*> tables;
  std::vector<u64> mods;
  for (size_t i = 0; i < W.factors.size(); ++i) {
    tables.push_back(&local_sigma_table(W.factors[i].p, W.factors[i].e, k));
    mods.push_back(W.local_modulus(i));
  }
  std::vector<u64> out;
  for (u64 b = 1; b <= w; ++b) {
    bool ok = true;
    for (size_t i = 0; i < mods.size(); ++i) {
      u64 loc = b % mods[i];
      if (loc % W.factors[i].p == 0 || (*tables[i])[loc] == 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(b);
  }
  return out;
}

}  // namespace wg
