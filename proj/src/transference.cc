#include "wg/transference.hh"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wg/errors.hh"
#include "wg/spectral.hh"

namespace wg {

std::vector<double> convolve_all(const std::vector<std::vector<double>>& seqs) {
  if (seqs.size() < 2) throw domain_error("convolve_all: need at least two sequences");
  const size_t N = seqs[0].size();
  if (N == 0) throw domain_error("convolve_all: empty sequences");
  for (const auto& s : seqs)
    if (s.size() != N) throw domain_error("convolve_all: length mismatch");
  std::vector<double> acc(N + 1, 0.0);
  for (size_t n = 1; n <= N; ++n) acc[n] = seqs[0][n - 1];
  for (size_t i = 1; i < seqs.size(); ++i) {
    std::vector<size_t> sup;
    for (size_t n = 1; n <= N; ++n)
      if (seqs[i][n - 1] != 0.0) sup.push_back(n);
    std::vector<double> next(acc.size() + N, 0.0);
    for (size_t m = 0; m < acc.size(); ++m) {
      const double a = acc[m];
      if (a == 0.0) continue;
      for (size_t n : sup) next[m + n] += a * seqs[i][n - 1];
    }
    acc.swap(next);
  }
  return acc;
}

std::vector<double> convolve_all_fft(const std::vector<std::vector<double>>& seqs) {
  if (seqs.size() < 2) throw domain_error("convolve_all_fft: need at least two sequences");
  const size_t N = seqs[0].size();
  if (N == 0) throw domain_error("convolve_all_fft: empty sequences");
  for (const auto& s : seqs)
    if (s.size() != N) throw domain_error("convolve_all_fft: length mismatch");
  const size_t total = seqs.size() * N + 1;
  const size_t M = size_t(next_pow2(total));
  std::vector<std::complex<double>> prod(M, std::complex<double>(1.0, 0.0));
  std::vector<std::complex<double>> a(M);
  for (const auto& s : seqs) {
    std::fill(a.begin(), a.end(), std::complex<double>(0.0, 0.0));
    for (size_t n = 1; n <= N; ++n) a[n] = s[n - 1];
    fft_inplace(a, +1);
    for (size_t j = 0; j < M; ++j) prod[j] *= a[j];
  }
  fft_inplace(prod, -1);
  std::vector<double> out(total);
  for (size_t m = 0; m < total; ++m) out[m] = prod[m].real() / double(M);
  return out;
}

WindowAudit positivity_window(const std::vector<double>& conv, unsigned s, u64 N, double eps) {
  if (s == 0 || N == 0) throw domain_error("positivity_window: need s, N >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("positivity_window: eps in (0,1)");
  if (conv.size() != size_t(s) * N + 1)
    throw domain_error("positivity_window: convolution length mismatch");
  const double kappa = eps / 32.0;
  const double sN = double(s) * double(N);
  const double lo = (1.0 - kappa * kappa) * sN / 2.0;
  const double hi = (1.0 + kappa) * sN / 2.0;
  WindowAudit a;
  a.first_n = u64(std::floor(lo)) + 1;
  a.last_n = u64(std::floor(hi));
  if (double(a.last_n) == hi) --a.last_n;  // the window is open at both ends
  a.empty = a.first_n > a.last_n;
  if (a.empty) {
    a.all_positive = true;
    return a;
  }
  a.min_value = std::numeric_limits<double>::infinity();
  for (u64 n = a.first_n; n <= a.last_n; ++n) {
    const double v = conv[size_t(n)];
    if (v < a.min_value) {
      a.min_value = v;
      a.argmin = n;
    }
    if (!(v > 0.0)) {
      ++a.violation_count;
      if (a.violations.size() < 20) a.violations.push_back(n);
    }
  }
  a.all_positive = a.violation_count == 0;
  a.marginal = a.all_positive && a.min_value < 1e-9 * std::pow(double(N), double(s - 1));
  return a;
}

namespace {

struct WitnessSearch {
  std::vector<u64> pv, tv;      // candidate k-th power values, ascending
  std::vector<u64> proot, troot;
  unsigned s1 = 0, s2 = 0, s = 0;
  std::vector<u64> suffix_min;  // minimal completion of slots > idx
  std::vector<size_t> pick;     // chosen candidate index per slot
  u64 budget = 0, nodes = 0;

  bool is_power_slot(unsigned idx) const { return idx < s2; }
  const std::vector<u64>& list(unsigned idx) const { return is_power_slot(idx) ? tv : pv; }

  // largest candidate index with value <= cap, or npos
  static size_t bound_index(const std::vector<u64>& v, u64 cap) {
    auto it = std::upper_bound(v.begin(), v.end(), cap);
    if (it == v.begin()) return size_t(-1);
    return size_t(it - v.begin()) - 1;
  }

  bool dfs(unsigned idx, u64 remaining, size_t t_bound, size_t p_bound) {
    const std::vector<u64>& L = list(idx);
    const size_t same_bound = is_power_slot(idx) ? t_bound : p_bound;
    if (L.empty()) return false;
    if (idx == s - 1) {
      ++nodes;
      auto it = std::lower_bound(L.begin(), L.end(), remaining);
      if (it == L.end() || *it != remaining) return false;
      const size_t i = size_t(it - L.begin());
      if (i > same_bound) return false;
      pick[idx] = i;
      return true;
    }
    size_t start = bound_index(L, remaining);
    if (start == size_t(-1)) return false;
    start = std::min(start, same_bound);
    for (size_t i = start; i != size_t(-1); --i) {
      if (++nodes > budget)
        throw capacity_error("witness search budget exhausted after " + std::to_string(nodes) +
                             " nodes at depth " + std::to_string(idx));
      const u64 v = L[i];
      const u64 rest = remaining - v;
      if (rest < suffix_min[idx + 1]) continue;  // smaller v only helps, keep going
      unsigned __int128 max_rest = 0;
      if (is_power_slot(idx)) {
        max_rest = (unsigned __int128)(s2 - 1 - idx) * v;
        if (s1 > 0) max_rest += (unsigned __int128)s1 * pv.back();
      } else {
        max_rest = (unsigned __int128)(s - 1 - idx) * v;
      }
      if ((unsigned __int128)rest > max_rest) break;  // shrinking v cannot recover
      pick[idx] = i;
      const size_t nt = is_power_slot(idx) ? i : t_bound;
      const size_t np = is_power_slot(idx) ? p_bound : i;
      if (dfs(idx + 1, rest, nt, np)) return true;
    }
    return false;
  }
};

}  // namespace

Witness find_witness(const BigInt& n0, unsigned k, unsigned s1, unsigned s2,
                     const DensitySubset& A, const DensitySubset& B, u64 cap, u64 budget) {
  if (k < 2) throw domain_error("find_witness: k >= 2 required");
  if (s1 + s2 == 0) throw domain_error("find_witness: need at least one slot");
  if (n0 <= 0) throw domain_error("find_witness: n0 must be positive");
  Witness w;
  if (n0 > BigInt(std::numeric_limits<u64>::max()))
    throw capacity_error("find_witness: n0 exceeds the native search range");
  const u64 n0u = n0.convert_to<u64>();

  WitnessSearch ws;
  ws.s1 = s1;
  ws.s2 = s2;
  ws.s = s1 + s2;
  ws.budget = budget;
  ws.pick.assign(ws.s, 0);

  if (s1 > 0) {
    if (A.base != BaseKind::primes) throw domain_error("find_witness: A must be a prime subset");
    const u64 pcap = std::min(cap, A.X);
    for (size_t i = 0; i < A.elements.size(); ++i) {
      const u64 p = A.elements[i];
      if (p > pcap) break;
      if (!A.member_index(i)) continue;
      u64 v;
      try {
        v = ipow_checked(p, k);
      } catch (const capacity_error&) {
        break;
      }
      if (v > n0u) break;
      ws.pv.push_back(v);
      ws.proot.push_back(p);
    }
  }
  if (s2 > 0) {
    if (B.base != BaseKind::kth_powers || B.k != k)
      throw domain_error("find_witness: B must be a k-th power subset of matching k");
    for (size_t i = 0; i < B.elements.size(); ++i) {
      const u64 v = B.elements[i];
      if (v > n0u) break;
      if (!B.member_index(i)) continue;
      const u64 t = ikroot(v, k);
      if (t > cap) break;
      ws.tv.push_back(v);
      ws.troot.push_back(t);
    }
  }
  if ((s1 > 0 && ws.pv.empty()) || (s2 > 0 && ws.tv.empty())) return w;

  ws.suffix_min.assign(ws.s + 1, 0);
  for (unsigned idx = ws.s; idx-- > 0;) {
    const u64 mn = ws.is_power_slot(idx) ? ws.tv.front() : ws.pv.front();
    ws.suffix_min[idx] = ws.suffix_min[idx + 1] + mn;
  }

  const size_t npos = size_t(-1);
  if (!ws.dfs(0, n0u, ws.tv.empty() ? npos : ws.tv.size() - 1,
              ws.pv.empty() ? npos : ws.pv.size() - 1))
    return w;

  w.found = true;
  for (unsigned idx = 0; idx < ws.s; ++idx) {
    if (ws.is_power_slot(idx))
      w.roots.push_back(ws.troot[ws.pick[idx]]);
    else
      w.primes.push_back(ws.proot[ws.pick[idx]]);
  }
  std::sort(w.primes.begin(), w.primes.end());
  std::sort(w.roots.begin(), w.roots.end());
  return w;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  if (!cfg.A || !cfg.B) throw domain_error("run_pipeline: both subsets required");
  if (cfg.s1 == 0 || cfg.s2 == 0) throw domain_error("run_pipeline: need s1, s2 >= 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 0.25)) throw domain_error("run_pipeline: eps in (0, 1/4)");
  PipelineReport rep;
  rep.k = cfg.k;
  rep.s1 = cfg.s1;
  rep.s2 = cfg.s2;
  rep.eps = cfg.eps;
  rep.kappa = cfg.eps / 32.0;

  WTrickContext ctx = build_context(cfg.k, cfg.w, cfg.doubled, cfg.n0, cfg.s1, cfg.s2);
  rep.W = ctx.W_u64;
  rep.N = ctx.N;
  rep.R_k = ctx.R_k;
  rep.congruence_ok = ctx.congruence_ok;
  if (!ctx.congruence_ok && !cfg.proceed_on_congruence) {
    rep.failure_stage = "congruence";
    rep.note = "n0 mod " + std::to_string(ctx.R_k) + " != s1+s2 mod " + std::to_string(ctx.R_k);
    return rep;
  }

  GTables gt = cfg.use_bold ? build_g_tables(ctx, nullptr, cfg.B, cfg.A)
                            : build_g_tables(ctx, cfg.A, cfg.B, nullptr);
  const std::vector<double>& gp = cfg.use_bold ? gt.gbold : gt.g1;

  u64 n_class = (cfg.n0 % BigInt(ctx.W_u64)).convert_to<u64>();
  if (n_class == 0) n_class = ctx.W_u64;
  rep.selection = select_residues(ctx, n_class, cfg.s1, cfg.s2, gp, gt.g2, cfg.eps);
  if (!rep.selection.feasible) {
    rep.failure_stage = "selection";
    rep.note = rep.selection.reason;
    return rep;
  }

  const unsigned s = cfg.s1 + cfg.s2;
  std::vector<std::vector<double>> fs;
  fs.reserve(s);
  BigInt sum_b = 0;
  for (unsigned j = 0; j < s; ++j) {
    const u64 b = rep.selection.b[j];
    sum_b += b;
    const WeightKind kind = j < cfg.s1 ? (cfg.use_bold ? WeightKind::f_bold : WeightKind::f_prime)
                                       : WeightKind::f_doubleprime;
    fs.push_back(build_weight(ctx, kind, b, j < cfg.s1 ? cfg.A : cfg.B).values);
  }

  auto conv = convolve_all(fs);
  rep.audit = positivity_window(conv, s, ctx.N, cfg.eps);
  if (!rep.audit.empty)
    rep.window_values.assign(conv.begin() + long(rep.audit.first_n),
                             conv.begin() + long(rep.audit.last_n) + 1);

  BigInt num = cfg.n0 - sum_b;
  if (num % BigInt(ctx.W_u64) != 0) {
    rep.failure_stage = "selection";
    rep.note = "selected residues break the congruence with n0";
    return rep;
  }
  rep.target_n = num / BigInt(ctx.W_u64);
  double value_at_target = 0.0;
  bool target_indexable = rep.target_n >= 0 && rep.target_n <= BigInt(u64(s) * ctx.N);
  if (target_indexable) {
    const u64 m = rep.target_n.convert_to<u64>();
    value_at_target = conv[size_t(m)];
    rep.target_in_window = !rep.audit.empty && m >= rep.audit.first_n && m <= rep.audit.last_n;
  }
  rep.value_at_target = value_at_target;

  if (!rep.audit.all_positive) {
    rep.failure_stage = "window";
    rep.note = std::to_string(rep.audit.violation_count) + " non-positive window entries";
  }

  if (value_at_target > 0.0 && cfg.n0 <= BigInt(std::numeric_limits<u64>::max())) {
    rep.witness_attempted = true;
    const u64 n0u = cfg.n0.convert_to<u64>();
    const u64 cap = ikroot(n0u, cfg.k);
    rep.witness = find_witness(cfg.n0, cfg.k, cfg.s1, cfg.s2, *cfg.A, *cfg.B, cap,
                               cfg.witness_budget);
    if (rep.witness.found) {
      BigInt total = 0;
      bool members = true;
      for (u64 p : rep.witness.primes) {
        total += BigInt(ipow_checked(p, cfg.k));
        members = members && cfg.A->contains(p);
      }
      for (u64 t : rep.witness.roots) {
        const u64 v = ipow_checked(t, cfg.k);
        total += BigInt(v);
        members = members && cfg.B->contains(v);
      }
      rep.witness_verified = members && total == cfg.n0;
      if (!rep.witness_verified && rep.failure_stage.empty()) {
        rep.failure_stage = "witness";
        rep.note = "witness failed exact re-verification";
      }
    } else if (rep.failure_stage.empty()) {
      rep.failure_stage = "witness";
      rep.note = "no decomposition found under the candidate cap";
    }
  }
  return rep;
}

}  // namespace wg
