#include "wg/wtrick.hh"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wg/errors.hh"
#include "wg/primes.hh"

namespace wg {

WTrickContext build_context(unsigned k, u64 w, bool doubled, const BigInt& n0, unsigned s1,
                            unsigned s2) {
  if (k < 2) throw domain_error("build_context: k >= 2 required");
  if (w < 2) throw domain_error("build_context: w >= 2 required");
  if (s1 + s2 < 2) throw domain_error("build_context: s1 + s2 >= 2 required");
  if (n0 <= 0) throw domain_error("build_context: n0 must be positive");
  WTrickContext ctx;
  ctx.k = k;
  ctx.w = w;
  ctx.doubled = doubled;
  unsigned e = doubled ? 2 * k : k;
  std::vector<PrimePower> pps;
  for (u64 p : sieve_primes(w)) pps.push_back({p, e});
  ctx.W = FactoredModulus::from_prime_powers(std::move(pps));
  ctx.W_u64 = ctx.W.value_u64();
  ctx.phi_W = ctx.W.phi();
  ctx.n0 = n0;
  ctx.s1 = s1;
  ctx.s2 = s2;
  BigInt N = 2 * n0 / ((s1 + s2) * BigInt(ctx.W_u64));
  if (N < 10) throw domain_error("build_context: N < 10; raise n0 or lower w");
  if (N > BigInt(std::numeric_limits<u64>::max() / 2))
    throw capacity_error("build_context: N exceeds the sequence capacity");
  ctx.N = N.convert_to<u64>();
  // Weight scans form W(N+1); keep that within 64 bits.
  if (ctx.W_u64 > std::numeric_limits<u64>::max() / (ctx.N + 1))
    throw capacity_error("build_context: W(N+1) exceeds 64 bits");
  ctx.R_k = compute_Rk(k);
  ctx.congruence_ok = (n0 % ctx.R_k) == ((s1 + s2) % ctx.R_k);
  ctx.Z = enumerate_Z(ctx.W, k);
  ctx.sigma.reserve(ctx.Z.size());
  for (u64 b : ctx.Z) ctx.sigma.push_back(sigma_roots(ctx.W, k, BigInt(b)));
  return ctx;
}

const char* weight_kind_name(WeightKind kind) {
  switch (kind) {
    case WeightKind::f_prime: return "f_prime";
    case WeightKind::f_doubleprime: return "f_doubleprime";
    case WeightKind::f_bold: return "f_bold";
    case WeightKind::nu_prime: return "nu_prime";
    case WeightKind::nu_doubleprime: return "nu_doubleprime";
  }
  return "?";
}

double WeightedSequence::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

namespace {

bool prime_kind(WeightKind kind) {
  return kind == WeightKind::f_prime || kind == WeightKind::f_bold ||
         kind == WeightKind::nu_prime;
}

// First t with t^k >= lo.
u64 kth_root_ceil(u64 lo, unsigned k) {
  bool exact = false;
  u64 t = ikroot(lo, k, &exact);
  return exact ? t : t + 1;
}

}  // namespace

WeightedSequence build_weight(const WTrickContext& ctx, WeightKind kind, u64 b,
                              const DensitySubset* subset) {
  if (b < 1 || b > ctx.W_u64) throw domain_error("build_weight: residue outside [1, W]");
  u64 sigma_b = sigma_roots(ctx.W, ctx.k, BigInt(b));
  if (sigma_b == 0 || !in_Z(ctx.W, ctx.k, BigInt(b)))
    throw domain_error("build_weight: residue not in Z(W)");
  bool needs_subset = kind == WeightKind::f_prime || kind == WeightKind::f_bold ||
                      kind == WeightKind::f_doubleprime;
  if (needs_subset && subset == nullptr)
    throw domain_error("build_weight: this weight kind requires a subset");

  WeightedSequence seq;
  seq.kind = kind;
  seq.b = b;
  seq.k = ctx.k;
  seq.W = ctx.W_u64;
  seq.N = ctx.N;
  seq.values.assign(ctx.N, 0.0);

  const double phi_over_W = Rational(ctx.phi_W, BigInt(ctx.W_u64)).to_double();
  const double inv_sigma = 1.0 / static_cast<double>(sigma_b);
  const u64 m_hi = ctx.W_u64 * ctx.N + b;

  if (kind == WeightKind::f_doubleprime) {
    if (subset->base != BaseKind::kth_powers || subset->k != ctx.k)
      throw domain_error("build_weight: f_doubleprime needs a k-th power subset of matching k");
    if (subset->X < m_hi)
      throw domain_error("build_weight: subset bound below W*N+b; rebuild with larger X");
  }
  if (kind == WeightKind::f_prime || kind == WeightKind::f_bold) {
    if (subset->base != BaseKind::primes)
      throw domain_error("build_weight: prime weight needs a prime subset");
    if (subset->X < ikroot(m_hi, ctx.k))
      throw domain_error("build_weight: subset bound below (W*N+b)^{1/k}; rebuild with larger X");
  }

  // One t per n: Wn+b = t^k determines t uniquely, and t -> n is injective.
  const u64 t_hi = ikroot(m_hi, ctx.k);
  for (u64 t = kth_root_ceil(ctx.W_u64 + b, ctx.k); t <= t_hi; ++t) {
    u64 m = ipow_checked(t, ctx.k);
    if ((m - b) % ctx.W_u64 != 0) continue;
    u64 n = (m - b) / ctx.W_u64;
    if (n < 1 || n > ctx.N) continue;
    double tk1 = static_cast<double>(ipow_checked(t, ctx.k - 1));
    if (prime_kind(kind)) {
      if (!is_prime_u64(t)) continue;
      if (kind != WeightKind::nu_prime && !subset->contains(t)) continue;
      seq.values[n - 1] = phi_over_W * inv_sigma * ctx.k * tk1 * std::log(static_cast<double>(t));
    } else {
      if (kind == WeightKind::f_doubleprime && !subset->contains(m)) continue;
      seq.values[n - 1] = ctx.k * inv_sigma * tk1;
    }
  }
  return seq;
}

double g_mean(const WeightedSequence& seq) { return seq.mean(); }

double threshold_transform(double g, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("threshold_transform: eps in (0,1)");
  double v = (g - eps / 2.0) / (1.0 + eps);
  if (v < 0.0) return 0.0;
  // Finite-N overshoot guard: the downstream combinatorics expects [0, 1).
  return std::min(v, 1.0 - 1e-12);
}

GTables build_g_tables(const WTrickContext& ctx, const DensitySubset* A, const DensitySubset* B,
                       const DensitySubset* P) {
  GTables t;
  t.residues = ctx.Z;
  size_t zn = ctx.Z.size();
  std::vector<int> z_index(ctx.W_u64 + 1, -1);
  for (size_t i = 0; i < zn; ++i) z_index[ctx.Z[i]] = static_cast<int>(i);

  std::vector<double> acc1(A ? zn : 0, 0.0), acc2(B ? zn : 0, 0.0), accb(P ? zn : 0, 0.0);
  const u64 m_hi = ctx.W_u64 * (ctx.N + 1);
  const u64 t_hi = ikroot(m_hi, ctx.k);
  if (B && (B->base != BaseKind::kth_powers || B->k != ctx.k || B->X < m_hi))
    throw domain_error("build_g_tables: power subset must cover k-th powers up to W(N+1)");
  for (const DensitySubset* ps : {A, P})
    if (ps && (ps->base != BaseKind::primes || ps->X < t_hi))
      throw domain_error("build_g_tables: prime subset must cover primes up to (W(N+1))^{1/k}");
  for (u64 tt = kth_root_ceil(ctx.W_u64 + 1, ctx.k); tt <= t_hi; ++tt) {
    u64 m = ipow_checked(tt, ctx.k);
    u64 r = m % ctx.W_u64;
    u64 b = r == 0 ? ctx.W_u64 : r;
    int i = z_index[b];
    if (i < 0) continue;  // b outside Z(W): no weight is ever built there
    u64 n = (m - b) / ctx.W_u64;
    if (n < 1 || n > ctx.N) continue;
    double tk1 = static_cast<double>(ipow_checked(tt, ctx.k - 1));
    if (B && (B->contains(m))) acc2[i] += ctx.k * tk1;
    if ((A || P) && is_prime_u64(tt)) {
      double v = ctx.k * tk1 * std::log(static_cast<double>(tt));
      if (A && A->contains(tt)) acc1[i] += v;
      if (P && P->contains(tt)) accb[i] += v;
    }
  }
  const double phi_over_W = Rational(ctx.phi_W, BigInt(ctx.W_u64)).to_double();
  const double invN = 1.0 / static_cast<double>(ctx.N);
  if (A) t.g1.resize(zn);
  if (B) t.g2.resize(zn);
  if (P) t.gbold.resize(zn);
  for (size_t i = 0; i < zn; ++i) {
    double inv_sigma = 1.0 / static_cast<double>(ctx.sigma[i]);
    if (A) t.g1[i] = acc1[i] * phi_over_W * inv_sigma * invN;
    if (B) t.g2[i] = acc2[i] * inv_sigma * invN;
    if (P) t.gbold[i] = accb[i] * phi_over_W * inv_sigma * invN;
  }
  return t;
}

namespace {

struct DpResult {
  bool reachable = false;
  double total = 0.0;
  std::vector<u64> picks;
};

// Maximize the g-sum over slot choices subject to the congruence; slots
// [0,s1) draw from allowed1, the rest from allowed2.  Exact maximization,
// so a negative verdict is exhaustive.
DpResult congruence_dp(u64 W, u64 target, unsigned s1, unsigned s2,
                       const std::vector<std::pair<u64, double>>& allowed1,
                       const std::vector<std::pair<u64, double>>& allowed2) {
  unsigned s = s1 + s2;
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> dp(W, ninf);
  dp[0] = 0.0;
  // choice[j][r]: index into the slot's allowed list that achieves dp after
  // slot j at residue r, smallest residue first among ties.
  std::vector<std::vector<int>> choice(s, std::vector<int>(W, -1));
  std::vector<double> next(W);
  for (unsigned j = 0; j < s; ++j) {
    const auto& allowed = j < s1 ? allowed1 : allowed2;
    std::fill(next.begin(), next.end(), ninf);
    for (u64 r = 0; r < W; ++r) {
      if (dp[r] == ninf) continue;
      for (size_t a = 0; a < allowed.size(); ++a) {
        u64 nr = r + allowed[a].first;
        if (nr >= W) nr -= W;
        double v = dp[r] + allowed[a].second;
        if (v > next[nr]) {
          next[nr] = v;
          choice[j][nr] = static_cast<int>(a);
        }
      }
    }
    dp.swap(next);
  }
  DpResult res;
  u64 r = target % W;
  if (dp[r] == ninf) return res;
  res.reachable = true;
  res.total = dp[r];
  res.picks.resize(s);
  for (unsigned j = s; j-- > 0;) {
    const auto& allowed = j < s1 ? allowed1 : allowed2;
    int a = choice[j][r];
    res.picks[j] = allowed[a].first;
    r = (r + W - allowed[a].first % W) % W;
  }
  return res;
}

}  // namespace

ResidueSelection select_residues(const WTrickContext& ctx, u64 n_class, unsigned s1, unsigned s2,
                                 const std::vector<double>& g1, const std::vector<double>& g2,
                                 double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("select_residues: eps in (0,1)");
  if (s1 < 1 || s2 < 1) throw domain_error("select_residues: s1, s2 >= 1");
  if (g1.size() != ctx.Z.size() || g2.size() != ctx.Z.size())
    throw domain_error("select_residues: table size mismatch with Z(W)");
  ResidueSelection sel;
  std::vector<std::pair<u64, double>> allowed1, allowed2;
  for (size_t i = 0; i < ctx.Z.size(); ++i) {
    if (g1[i] > eps / 2.0) allowed1.push_back({ctx.Z[i], g1[i]});
    if (g2[i] > eps / 2.0) allowed2.push_back({ctx.Z[i], g2[i]});
  }
  if (allowed1.empty() || allowed2.empty()) {
    sel.reason = allowed1.empty() ? "no residue clears the mean floor in the prime table"
                                  : "no residue clears the mean floor in the power table";
    return sel;
  }
  unsigned s = s1 + s2;
  double threshold = s * (1.0 + eps) / 2.0;
  double dp_cost = static_cast<double>(s) * ctx.W_u64 *
                   std::max(allowed1.size(), allowed2.size());
  if (dp_cost <= 2e8) {
    auto res = congruence_dp(ctx.W_u64, n_class % ctx.W_u64, s1, s2, allowed1, allowed2);
    sel.method = "dp";
    if (!res.reachable) {
      sel.reason = "target class unreachable from qualifying residues";
      return sel;
    }
    if (res.total <= threshold) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "maximal total %.6f does not clear (s)(1+eps)/2 = %.6f",
                    res.total, threshold);
      sel.reason = buf;
      return sel;
    }
    sel.feasible = true;
    sel.b = std::move(res.picks);
    sel.total = res.total;
    return sel;
  }
  // Large-W path: repeat the argmax residues, then close the congruence with
  // a bounded number of free prime-table slots.
  sel.method = "greedy";
  auto best1 = *std::max_element(allowed1.begin(), allowed1.end(),
                                 [](auto& a, auto& b) { return a.second < b.second; });
  auto best2 = *std::max_element(allowed2.begin(), allowed2.end(),
                                 [](auto& a, auto& b) { return a.second < b.second; });
  unsigned free_cap = 8 * ctx.k * omega(ctx.k) + 2 * ctx.k + 2;
  unsigned free_slots = std::min(s1, free_cap);
  unsigned fixed1 = s1 - free_slots;
  if (static_cast<double>(free_slots) * ctx.W_u64 * allowed1.size() > 2e8)
    throw capacity_error("select_residues: search budget exceeded at this W");
  u64 fixed_sum =
      (mulmod(fixed1, best1.first, ctx.W_u64) + mulmod(s2, best2.first, ctx.W_u64)) % ctx.W_u64;
  u64 residual = (n_class % ctx.W_u64 + ctx.W_u64 - fixed_sum) % ctx.W_u64;
  auto res = congruence_dp(ctx.W_u64, residual, free_slots, 0, allowed1, allowed2);
  if (!res.reachable) {
    sel.reason = "greedy closure cannot reach the target class";
    return sel;
  }
  double total = res.total + fixed1 * best1.second + s2 * best2.second;
  if (total <= threshold) {
    sel.reason = "greedy total does not clear the threshold";
    return sel;
  }
  sel.feasible = true;
  sel.total = total;
  sel.b.assign(res.picks.begin(), res.picks.end());
  sel.b.insert(sel.b.end(), fixed1, best1.first);
  sel.b.insert(sel.b.end(), s2, best2.first);
  return sel;
}

bool verify_selection(const WTrickContext& ctx, u64 n_class, unsigned s1, unsigned s2,
                      const std::vector<double>& g1, const std::vector<double>& g2, double eps,
                      const ResidueSelection& sel, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!sel.feasible) return fail("selection not marked feasible");
  if (sel.b.size() != s1 + s2) return fail("wrong tuple length");
  std::vector<int> z_index(ctx.W_u64 + 1, -1);
  for (size_t i = 0; i < ctx.Z.size(); ++i) z_index[ctx.Z[i]] = static_cast<int>(i);
  u64 acc = 0;
  double total = 0.0;
  for (size_t j = 0; j < sel.b.size(); ++j) {
    u64 b = sel.b[j];
    if (b < 1 || b > ctx.W_u64 || z_index[b] < 0) return fail("slot residue outside Z(W)");
    double g = j < s1 ? g1[z_index[b]] : g2[z_index[b]];
    if (!(g > eps / 2.0)) return fail("slot mean does not exceed eps/2");
    total += g;
    acc = (acc + b) % ctx.W_u64;
  }
  if (acc != n_class % ctx.W_u64) return fail("congruence sum mismatch");
  if (!(total > (s1 + s2) * (1.0 + eps) / 2.0)) return fail("total does not clear the threshold");
  return true;
}

}  // namespace wg
