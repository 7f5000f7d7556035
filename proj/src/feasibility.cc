#include "wg/feasibility.hh"

#include <algorithm>
#include <map>
#include <tuple>

#include "wg/arith.hh"
#include "wg/errors.hh"
#include "wg/residue.hh"

namespace wg {

namespace {

const Rational kHalf(BigInt(1), BigInt(2));
const Rational kOne(1L);

void require_density(const Rational& d, const char* name) {
  if (d.sign() <= 0 || d > kOne)
    throw domain_error(std::string(name) + " must lie in (0, 1]");
}

// Sweeps re-evaluate hypotheses thousands of times; the product over p <= P
// is far too slow to recompute per sample.
const std::pair<Rational, Rational>& cached_bracket(unsigned k, u64 P, bool doubled) {
  static std::map<std::tuple<unsigned, u64, bool>, std::pair<Rational, Rational>> memo;
  const auto key = std::make_tuple(k, P, doubled);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, euler_constant(k, P, doubled).bracket()).first;
  return it->second;
}

bool uses_doubled(const std::string& id) {
  return id == "1.5" || id == "1.6" || id == "1.7" || id == "1.8";
}

}  // namespace

bool theorem_allows_k(const std::string& id, unsigned k) {
  if (id == "1.1" || id == "1.2" || id == "1.3" || id == "1.4")
    return k >= 3 && k != 4 && k != 8 && k != 9;
  if (id == "1.5" || id == "1.7") return k == 4 || k == 8 || k == 9;
  if (id == "1.6" || id == "1.8") return k == 8 || k == 9;
  throw domain_error("unknown statement id " + id);
}

unsigned minimal_s1(unsigned k, unsigned s2) {
  if (k < 2 || s2 < 1) throw domain_error("minimal_s1: need k >= 2, s2 >= 1");
  const u64 a = 16ull * k * omega(k) + 4ull * k + 4 + s2;
  const u64 kk = u64(k) * k + k + 1;
  const u64 b = kk > s2 ? kk - s2 : 0;
  return unsigned(std::max(a, b));
}

Margin condition_sup_margin(unsigned k, u64 P, bool plus_half) {
  const auto& z = cached_bracket(k, P, false);
  const auto& t = cached_bracket(k, P, true);
  const Rational add = plus_half ? kHalf : kOne;
  Margin m;
  m.name = plus_half ? "T + 1/2 - Z" : "1 + T - Z";
  m.lo = t.first + add - z.second;
  m.hi = t.second + add - z.first;
  return m;
}

TheoremCheck check_theorem(const std::string& id, unsigned k, const Rational& delta_A,
                           const Rational& delta_B, const Rational& delta, u64 P) {
  if (k < 2) throw domain_error("check_theorem: k >= 2 required");
  require_density(delta_A, "delta_A");
  require_density(delta_B, "delta_B");
  require_density(delta, "delta");

  TheoremCheck tc;
  tc.id = id;
  tc.k = k;
  tc.k_allowed = theorem_allows_k(id, k);  // also validates the id
  tc.R_k = compute_Rk(k);
  tc.minimal_s2 = 1;
  tc.minimal_s1 = minimal_s1(k, 1);

  const auto& z = cached_bracket(k, P, false);
  const Rational& zlo = z.first;
  const Rational& zhi = z.second;
  tc.Z_lo = zlo;
  tc.Z_hi = zhi;
  Rational tlo(0L), thi(0L);
  if (uses_doubled(id)) {
    const auto& t = cached_bracket(k, P, true);
    tlo = t.first;
    thi = t.second;
    tc.T_lo = tlo;
    tc.T_hi = thi;
  }

  if (!tc.k_allowed) {
    tc.verdict = "infeasible";
    tc.reason = "k=" + std::to_string(k) + " lies outside the admissible exponents for " + id;
    // Explain the two boundary exclusions by the constant gap that forces them.
    if ((id == "1.5" || id == "1.7") && k == 2)
      tc.margins.push_back(condition_sup_margin(k, P, false));
    if ((id == "1.6" || id == "1.8") && k == 4)
      tc.margins.push_back(condition_sup_margin(k, P, true));
    return tc;
  }

  const Rational dBk = delta_B.pow(k);
  const Rational kq{long(k)};
  const Rational km1(long(k - 1));

  if (id == "1.1" || id == "1.5") {
    const Rational m = delta_A - Rational(BigInt(2 * k - 1), BigInt(2 * k));
    tc.margins.push_back({"delta_A - (1 - 1/(2k))", m, m});
  }
  if (id == "1.2" || id == "1.4") {
    // dB^k vs 1 - 1/(2Z); the bound rises with Z
    const Rational f_lo = kOne - kHalf * zlo.inverse();
    const Rational f_hi = kOne - kHalf * zhi.inverse();
    tc.margins.push_back({"delta_B^k - (1 - 1/(2Z))", dBk - f_hi, dBk - f_lo});
  }
  if (id == "1.6" || id == "1.8") {
    const Rational r_lo = (zlo - kHalf) / thi;
    const Rational r_hi = (zhi - kHalf) / tlo;
    tc.margins.push_back({"delta_B^k - (Z - 1/2)/T", dBk - r_hi, dBk - r_lo});
  }
  if (id == "1.3" || id == "1.7") {
    const Rational m = delta - kHalf;
    tc.margins.push_back({"delta - 1/2", m, m});
  }

  if (id == "1.1" || id == "1.2") {
    // k dA + Z dB^k - (Z + k - 1) = [k dA - (k-1)] + Z (dB^k - 1), factor <= 0
    const Rational base = kq * delta_A - km1;
    const Rational fac = dBk - kOne;
    tc.margins.push_back({"k delta_A + Z delta_B^k - (Z + k - 1)", base + zhi * fac,
                          base + zlo * fac});
  }
  if (id == "1.3" || id == "1.4") {
    const Rational fac = dBk - kOne;
    tc.margins.push_back({"delta + Z delta_B^k - Z", delta + zhi * fac, delta + zlo * fac});
  }
  if (id == "1.5" || id == "1.6") {
    const Rational base = kq * delta_A - km1;
    tc.margins.push_back({"k delta_A + T delta_B^k - (Z + k - 1)", base + tlo * dBk - zhi,
                          base + thi * dBk - zlo});
  }
  if (id == "1.7" || id == "1.8") {
    tc.margins.push_back({"delta + T delta_B^k - Z", delta + tlo * dBk - zhi,
                          delta + thi * dBk - zlo});
  }

  bool all_proven = true;
  for (const auto& m : tc.margins) {
    if (m.refuted()) {
      tc.verdict = "infeasible";
      tc.reason = "hypothesis fails: " + m.name;
      return tc;
    }
    all_proven = all_proven && m.proven();
  }
  if (all_proven) {
    tc.verdict = "feasible";
  } else {
    tc.verdict = "undecidable";
    for (const auto& m : tc.margins)
      if (!m.proven()) {
        tc.reason = "interval for '" + m.name + "' straddles zero; raise P";
        break;
      }
  }
  return tc;
}

SplitCheck sum_condition_split(unsigned k, const Rational& dA, const Rational& dB, u64 P) {
  if (k < 2) throw domain_error("remark_split: k >= 2 required");
  require_density(dA, "delta_A");
  require_density(dB, "delta_B");
  const Rational& zstar = cached_bracket(k, P, false).second;
  SplitCheck s;
  const Rational dBk = dB.pow(k);
  const Rational kq{long(k)};
  s.branch_a = kq * dA - Rational(long(k - 1));
  s.branch_b = zstar * (dBk - kOne) + kOne;
  s.sum_margin = kq * dA + zstar * dBk - (zstar + kq - kOne);
  s.applies = s.sum_margin.sign() > 0;
  s.holds = !s.applies || s.branch_a > kHalf || s.branch_b > kHalf;
  return s;
}

}  // namespace wg
