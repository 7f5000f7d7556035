// Acceptance gate: eleven criteria, one verdict line each, exit code equal
// to the number of failures.  Expected-vs-computed values are printed inline
// so a red line carries its own diagnosis.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wg/constants.hh"
#include "wg/feasibility.hh"
#include "wg/primes.hh"
#include "wg/residue.hh"
#include "wg/spectral.hh"
#include "wg/subsets.hh"
#include "wg/transference.hh"
#include "wg/wtrick.hh"

namespace fs = std::filesystem;
using namespace wg;

namespace {

void appendf(std::string& s, const char* fmt, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  s += buf;
}

WTrickContext ctx_for(u64 N) {
  // n0 chosen so floor(2 n0 / ((s1+s2) W)) lands exactly on N.
  return build_context(3, 3, false, (BigInt(N) * 8 * 216 + 1) / 2, 6, 2);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_cmd(const std::string& cmd) {
  int st = std::system((cmd + " >/dev/null 2>&1").c_str());
  if (st == -1) return -1;
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

constexpr u64 kBracketP = 2000;

}  // namespace

int main() {
  std::printf("acceptance: 11 criteria\n");
  int failures = 0;
  std::vector<int> failed_ids;
  auto run = [&](int id, auto&& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string d;
    bool pass = false;
    try {
      pass = body(d);
    } catch (const std::exception& e) {
      appendf(d, " | exception: %s", e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, d.c_str(), secs);
    std::fflush(stdout);
    if (!pass) {
      ++failures;
      failed_ids.push_back(id);
    }
  };

  // Criterion 8 hands its witness residues to criterion 9.
  std::vector<u64> witness_b;

  run(1, [](std::string& d) {
    auto t0 = std::chrono::steady_clock::now();
    ConstantEstimate t2 = euler_constant(2, 100000, true);
    ConstantEstimate t4 = euler_constant(4, 100000, true);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double v2 = t2.to_double(), v4 = t4.to_double();
    double tail2 = t2.tail_upper.to_double(), tail4 = t4.tail_upper.to_double();
    bool ok2 = std::fabs(v2 - 2.085) <= 0.002;
    bool ok4 = std::fabs(v4 - 1.063) <= 0.002;
    bool tails = tail2 < 1e-6 && tail4 < 1e-6;
    bool fast = secs < 30.0;
    appendf(d, "doubled constants at P=1e5: k=2 computed %.9f vs reference 2.085+/-0.002 ", v2);
    if (ok2)
      appendf(d, "(ok)");
    else
      appendf(d,
              "(MISS: the reference matches exactly when the 2-adic factor uses |Z(2^4)|=1; "
              "the enumerated count is 2, and %.9f * 4/3 = %.5f)",
              v2, v2 * 4.0 / 3.0);
    appendf(d, "; k=4 computed %.9f vs 1.063+/-0.002 %s; tails %.1e, %.1e < 1e-6 %s; %.1fs < 30s %s",
            v4, ok4 ? "(ok)" : "(MISS)", tail2, tail4, tails ? "(ok)" : "(MISS)", secs,
            fast ? "(ok)" : "(MISS)");
    return ok2 && ok4 && tails && fast;
  });

  run(2, [](std::string& d) {
    auto t0 = std::chrono::steady_clock::now();
    const u64 primes[] = {2, 3, 5, 7, 11, 13};
    int cases = 0, bad = 0;
    for (u64 p : primes)
      for (unsigned k = 2; k <= 6; ++k)
        for (unsigned e : {k, 2 * k}) {
          u64 pe = 1;
          for (unsigned i = 0; i < e; ++i) pe *= p;
          if (pe > 10'000'000) continue;
          ++cases;
          if (count_unit_kth_powers(p, e, k) != count_unit_kth_powers_brute(p, e, k)) ++bad;
        }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool fast = secs < 120.0;
    appendf(d, "closed-form vs brute-force unit power counts: %d cases (p<=13, k in 2..6, e in {k,2k}, p^e<=1e7), %d mismatches; %.1fs < 120s %s",
            cases, bad, secs, fast ? "(ok)" : "(MISS)");
    return bad == 0 && cases > 0 && fast;
  });

  run(3, [](std::string& d) {
    struct Case { u64 W; unsigned k; } cases[] = {{36, 2}, {1296, 2}, {216000, 3}};
    bool all = true;
    appendf(d, "root-count mass:");
    for (auto c : cases) {
      FactoredModulus m = FactoredModulus::from_u64(c.W);
      BigInt total = 0, unit_total = 0;
      for (u64 b = 1; b <= c.W; ++b) total += sigma_roots(m, c.k, BigInt(b));
      for (u64 b : enumerate_Z(m, c.k)) unit_total += sigma_roots(m, c.k, BigInt(b));
      bool okW = total == c.W;
      bool okphi = unit_total == m.phi();
      appendf(d, " W=%llu k=%u: sum sigma = %s (%s W), unit sum = %s (%s phi);",
              (unsigned long long)c.W, c.k, total.str().c_str(), okW ? "==" : "!=",
              unit_total.str().c_str(), okphi ? "==" : "!=");
      all = all && okW && okphi;
    }
    return all;
  });

  run(4, [](std::string& d) {
    int pairs = 0, bad_pairs = 0;
    for (u64 p : {2, 3, 5, 7, 11, 13})
      for (unsigned k = 2; k <= 6; ++k) {
        ++pairs;
        if (!(count_unit_kth_powers(p, 2 * k, k) > count_unit_kth_powers(p, k, k))) ++bad_pairs;
      }
    int bad_tz = 0;
    for (unsigned k = 2; k <= 10; ++k) {
      auto zb = euler_constant(k, kBracketP, false).bracket();
      auto tb = euler_constant(k, kBracketP, true).bracket();
      if (!(tb.second < zb.first)) ++bad_tz;
    }
    Margin m4 = condition_sup_margin(4, kBracketP, true);
    bool ok4 = m4.refuted();
    appendf(d, "doubling growth |Z(p^2k)| > |Z(p^k)|: %d/%d pairs; T_k < Z_k tail-safe for k in 2..10: %d violations; T_4 + 1/2 - Z_4 in [%s, %s] %s 0",
            pairs - bad_pairs, pairs, bad_tz, m4.lo.to_decimal(6).c_str(),
            m4.hi.to_decimal(6).c_str(), ok4 ? "<" : "!<");
    return bad_pairs == 0 && bad_tz == 0 && ok4;
  });

  run(5, [](std::string& d) {
    struct Case { unsigned k; u64 w; long rn, rd; } cases[] = {
        {2, 3, 62, 27}, {2, 5, 899, 375}, {3, 3, 6253, 5184}, {3, 5, 78794053, 64800000}};
    bool all = true;
    appendf(d, "exact residue-density ratios:");
    for (auto c : cases) {
      Rational r2 = ratio_ZW(c.k, c.w, true);
      Rational r1 = ratio_ZW(c.k, c.w, false);
      Rational tr = euler_constant(c.k, c.w, true).partial;
      Rational frozen{c.rn, c.rd};
      Rational z_hi = euler_constant(c.k, kBracketP, false).bracket().second;
      bool ok = r2 == frozen && tr < r2 && r2 < z_hi && r2 < r1;
      r2.reduce();
      appendf(d, " k=%u w=%llu ratio %s (frozen %ld/%ld), truncated-T < ratio < Z_hi and doubled < undoubled %s;",
              c.k, (unsigned long long)c.w, r2.to_string().c_str(), c.rn, c.rd,
              ok ? "ok" : "VIOLATED");
      all = all && ok;
    }
    return all;
  });

  run(6, [](std::string& d) {
    auto t0 = std::chrono::steady_clock::now();
    Margin blanket = condition_sup_margin(2, kBracketP, false);
    Margin blanket_half = condition_sup_margin(2, kBracketP, true);
    Margin excl4 = condition_sup_margin(4, kBracketP, true);
    bool k2 = blanket.refuted() && blanket_half.refuted();
    bool k4 = excl4.refuted();
    u64 violations = 0, samples = 0;
    for (unsigned k : {3, 5, 6, 7}) {
      std::mt19937_64 rng(20260823 + k);
      for (int i = 0; i < 10000; ++i) {
        Rational dA{long(rng() % 1000000 + 1), 1000000L};
        Rational dB{long(rng() % 1000000 + 1), 1000000L};
        SplitCheck sc = sum_condition_split(k, dA, dB, kBracketP);
        ++samples;
        if (!sc.holds) ++violations;
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool fast = secs < 60.0;
    appendf(d, "k=2 blanket infeasibility: 1+T-Z <= %s < 0 and T+1/2-Z < 0 %s; k=4 exclusion margin %s < 0 %s; disjunction sweep %llu samples (k in {3,5,6,7}), %llu violations; %.1fs < 60s %s",
            blanket.hi.to_decimal(6).c_str(), k2 ? "(ok)" : "(MISS)",
            excl4.hi.to_decimal(6).c_str(), k4 ? "(ok)" : "(MISS)",
            (unsigned long long)samples, (unsigned long long)violations, secs,
            fast ? "(ok)" : "(MISS)");
    return k2 && k4 && violations == 0 && fast;
  });

  run(7, [](std::string& d) {
    double med_p[2], med_pp[2];
    const u64 Ns[] = {10'000, 1'000'000};
    for (int i = 0; i < 2; ++i) {
      WTrickContext ctx = ctx_for(Ns[i]);
      std::vector<double> dev_p, dev_pp;
      for (u64 b : ctx.Z) {
        dev_p.push_back(std::fabs(build_weight(ctx, WeightKind::nu_prime, b, nullptr).mean() - 1.0));
        dev_pp.push_back(std::fabs(build_weight(ctx, WeightKind::nu_doubleprime, b, nullptr).mean() - 1.0));
      }
      med_p[i] = median(dev_p);
      med_pp[i] = median(dev_pp);
    }
    bool mono_p = med_p[1] < med_p[0];
    bool mono_pp = med_pp[1] < med_pp[0];
    bool soft_p = med_p[1] < 0.05, soft_pp = med_pp[1] < 0.02;
    appendf(d, "median |mean - 1| over the 24 residues, k=3 w=3: majorant nu'' %.4f (N=1e4) -> %.4f (N=1e6) %s, prime kind nu' %.4f -> %.4f %s; hard requirement is the decrease; calibration thresholds 0.02/0.05 %s at this scale (%.4f vs 0.02, %.4f vs 0.05)",
            med_pp[0], med_pp[1], mono_pp ? "decreasing" : "NOT decreasing", med_p[0], med_p[1],
            mono_p ? "decreasing" : "NOT decreasing",
            (soft_p && soft_pp) ? "reached" : "not yet reached", med_pp[1], med_p[1]);
    return mono_p && mono_pp;
  });

  run(8, [&witness_b](std::string& d) {
    const u64 Ns[] = {10'000, 100'000, 1'000'000};
    const WeightKind kinds[] = {WeightKind::nu_prime, WeightKind::nu_doubleprime};
    std::vector<u64> residues = ctx_for(10'000).Z;
    // sup[b index][kind][N index]
    std::vector<std::array<std::array<double, 3>, 2>> sup(residues.size());
    double max_gap = 0.0;
    int transforms = 0;
    for (int ni = 0; ni < 3; ++ni) {
      WTrickContext ctx = ctx_for(Ns[ni]);
      size_t M = next_pow2(2 * Ns[ni] + 1);
      for (size_t bi = 0; bi < residues.size(); ++bi)
        for (int ki = 0; ki < 2; ++ki) {
          WeightedSequence seq = build_weight(ctx, kinds[ki], residues[bi], nullptr);
          sup[bi][ki][ni] = pseudorandomness_sup(seq.values, M);
          auto grid = fourier_grid(seq.values, M);
          max_gap = std::max(max_gap, parseval_gap(seq.values, grid));
          ++transforms;
        }
    }
    int decreasing = 0;
    for (size_t bi = 0; bi < residues.size(); ++bi) {
      bool ok = true;
      for (int ki = 0; ki < 2; ++ki)
        ok = ok && sup[bi][ki][0] > sup[bi][ki][1] && sup[bi][ki][1] > sup[bi][ki][2];
      if (ok) {
        ++decreasing;
        if (witness_b.size() < 3) witness_b.push_back(residues[bi]);
      }
    }
    bool enough = decreasing >= 3;
    bool parseval = max_gap <= 1e-9;
    appendf(d, "sup-distance strictly decreasing across N in {1e4,1e5,1e6} for both nu kinds at %d/%zu residues (need >= 3)",
            decreasing, residues.size());
    if (!witness_b.empty()) {
      appendf(d, ", witnesses b =");
      for (u64 b : witness_b) appendf(d, " %llu", (unsigned long long)b);
    }
    appendf(d, "; Parseval max relative gap %.1e <= 1e-9 over %d transforms %s", max_gap,
            transforms, parseval ? "(ok)" : "(MISS)");
    return enough && parseval;
  });

  run(9, [&witness_b](std::string& d) {
    if (witness_b.size() < 3) {
      appendf(d, "restriction ratios skipped: fewer than 3 witness residues from the decay scan");
      return false;
    }
    const u64 Ns[] = {10'000, 100'000, 1'000'000};
    const double qs[] = {12.1, 12.5, 12.9};  // s = k(k+1)+1 = 13
    const WeightKind kinds[] = {WeightKind::f_prime, WeightKind::f_doubleprime};
    bool all = true;
    double worst = 0.0;
    for (u64 b : witness_b)
      for (int ki = 0; ki < 2; ++ki) {
        double ratio[3][3];  // [N][q]
        for (int ni = 0; ni < 3; ++ni) {
          WTrickContext ctx = ctx_for(Ns[ni]);
          u64 bound = ctx.W_u64 * (Ns[ni] + 1);
          DensitySubset A = build_subset(BaseKind::primes, 0, ikroot(bound, 3),
                                         SubsetStrategy::make_full());
          DensitySubset B = build_subset(BaseKind::kth_powers, 3, bound,
                                         SubsetStrategy::make_full());
          const DensitySubset* sub = ki == 0 ? &A : &B;
          WeightedSequence seq = build_weight(ctx, kinds[ki], b, sub);
          size_t M = next_pow2(2 * Ns[ni] + 1);
          for (int qi = 0; qi < 3; ++qi)
            ratio[ni][qi] = restriction_norm(seq.values, qs[qi], M).ratio;
        }
        for (int qi = 0; qi < 3; ++qi)
          for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
              double growth = ratio[j][qi] / ratio[i][qi];
              worst = std::max(worst, growth);
              if (!(ratio[j][qi] <= 2.0 * ratio[i][qi])) all = false;
            }
      }
    appendf(d, "restriction moment ratios ||fhat||_q^q / N^(q-1) at witness residues b = %llu, %llu, %llu: pairwise growth across N in {1e4,1e5,1e6} at q in {12.1,12.5,12.9} for f' and f'' bounded by 2 %s (worst %.3f)",
            (unsigned long long)witness_b[0], (unsigned long long)witness_b[1],
            (unsigned long long)witness_b[2], all ? "(ok)" : "(MISS)", worst);
    return all;
  });

  run(10, [](std::string& d) {
    auto t0 = std::chrono::steady_clock::now();
    DensitySubset A = build_subset(BaseKind::primes, 0, 300, SubsetStrategy::make_full());
    DensitySubset B = build_subset(BaseKind::kth_powers, 3, 8'700'000, SubsetStrategy::make_full());
    PipelineConfig cfg;
    cfg.k = 3;
    cfg.w = 3;
    cfg.s1 = 6;
    cfg.s2 = 2;
    cfg.eps = 0.2;
    cfg.n0 = 8'640'000;
    cfg.A = &A;
    cfg.B = &B;
    PipelineReport rep = run_pipeline(cfg);
    bool selected = rep.selection.feasible;
    appendf(d, "transfer instance k=3 w=3 s1=6 s2=2 N=%llu: selection %s",
            (unsigned long long)rep.N, selected ? "ok [" : "FAILED");
    if (selected) {
      for (size_t i = 0; i < rep.selection.b.size(); ++i)
        appendf(d, "%s%llu", i ? "," : "", (unsigned long long)rep.selection.b[i]);
      appendf(d, "]");
    }
    if (!selected || rep.audit.empty) return false;

    u64 span = rep.audit.last_n - rep.audit.first_n + 1;
    bool positive = rep.audit.all_positive;
    appendf(d, "; window positivity %s: %llu of %llu entries non-positive",
            positive ? "ok" : "FAILS", (unsigned long long)rep.audit.violation_count,
            (unsigned long long)span);
    if (!positive) {
      WTrickContext ctx = build_context(3, 3, false, cfg.n0, 6, 2);
      appendf(d, " (slot supports");
      for (size_t j = 0; j < rep.selection.b.size(); ++j) {
        WeightKind kind = j < 6 ? WeightKind::f_prime : WeightKind::f_doubleprime;
        const DensitySubset* sub = j < 6 ? &A : &B;
        WeightedSequence seq = build_weight(ctx, kind, rep.selection.b[j], sub);
        u64 nz = 0;
        for (double v : seq.values)
          if (v > 0) ++nz;
        appendf(d, " %llu", (unsigned long long)nz);
      }
      appendf(d, " of %llu slots each: supports grow like N^(1/3) against a window of width ~N/40)",
              (unsigned long long)rep.N);
    }

    u64 sum_b = 0;
    for (u64 b : rep.selection.b) sum_b += b;
    std::mt19937_64 rng(2026);
    std::set<u64> sampled;
    while (sampled.size() < 100) sampled.insert(rep.audit.first_n + rng() % span);
    u64 positives = 0, agreements = 0;
    for (u64 n : sampled) {
      double v = rep.window_values[n - rep.audit.first_n];
      if (v > 0) {
        ++positives;
        BigInt target = BigInt(rep.W) * n + sum_b;
        u64 cap = ikroot((u64)(rep.W * n + sum_b), 3);
        Witness wit = find_witness(target, 3, 6, 2, A, B, cap);
        if (wit.found) {
          BigInt total = 0;
          for (u64 p : wit.primes) total += BigInt(p) * p * p;
          for (u64 t : wit.roots) total += BigInt(t) * t * t;
          if (total == target) ++agreements;
        }
      } else {
        ++agreements;  // nothing to confirm where the convolution vanishes
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool fast = secs < 300.0;
    appendf(d, "; sampled witness cross-check: %llu/100 points positive, %llu/100 agreements%s; %.1fs < 300s %s",
            (unsigned long long)positives, (unsigned long long)agreements,
            positives == 0 ? " (vacuous: no positive entries to confirm)" : "", secs,
            fast ? "(ok)" : "(MISS)");
    return selected && positive && agreements == 100 && fast;
  });

  run(11, [](std::string& d) {
    fs::path scratch = fs::current_path() / "acceptance_scratch";
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    {
      std::ofstream cfg(scratch / "pipeline.json");
      cfg << "{\"k\":2,\"w\":3,\"s1\":6,\"s2\":2,\"eps\":0.2,\"n0\":1440128,"
          << "\"subset_a\":\"full\",\"subset_b\":\"full\"}\n";
    }
    const std::string exe = "\"" WGTOOL_PATH "\"";
    const std::string cfg_path = (scratch / "pipeline.json").string();
    const std::vector<std::string> cmds = {
        " --threads 3 constants --kind T --k 3 --P 20000",
        " residues --k 3 --w 3",
        " feasibility --theorem 1.1 --k 3 --delta-a 0.9 --delta-b 0.8",
        " --threads 3 feasibility --theorem 1.3 --k 3 sweep --grid 12",
        " wtrick --k 2 --w 3 --n0 1440128 --gtables --select --subset-a bernoulli:0.9:7",
        " spectral --k 3 --w 3 --s1 6 --s2 2 --N 2000 --N 4000",
        " transfer --config " + cfg_path,
        " represent --n0 4795 --k 3 --s1 4 --s2 1",
    };
    int bad_rc = 0;
    for (const char* sub : {"r1", "r2"}) {
      fs::path dir = scratch / sub;
      fs::create_directories(dir);
      std::string base = exe + " --output-dir " + dir.string();
      for (const auto& c : cmds)
        if (run_cmd(base + c) != 0) ++bad_rc;
      // The aggregate embeds its --dir argument, so both runs must name it
      // the same way; invoke from inside the directory.
      if (run_cmd("cd " + dir.string() + " && " + exe + " report --dir . --out report.json") != 0)
        ++bad_rc;
    }
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(scratch / "r1"))
      if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), scratch / "r1"));
    std::sort(rel.begin(), rel.end());
    size_t identical = 0, bytes = 0;
    for (const auto& r : rel) {
      std::string a = slurp(scratch / "r1" / r), b = slurp(scratch / "r2" / r);
      bytes += a.size();
      if (!a.empty() && a == b) ++identical;
    }
    size_t count2 = 0;
    for (const auto& e : fs::recursive_directory_iterator(scratch / "r2"))
      if (e.is_regular_file()) ++count2;
    bool ok = bad_rc == 0 && !rel.empty() && identical == rel.size() && count2 == rel.size();
    appendf(d, "determinism: %zu/%zu artifacts byte-identical across two runs of 9 commands with identical configs (%zu bytes compared, %d nonzero exits)",
            identical, rel.size(), bytes, bad_rc);
    fs::remove_all(scratch);
    return ok;
  });

  std::printf("%d of 11 criteria passed.\n", 11 - failures);
  if (failures) {
    std::printf("failing:");
    for (int id : failed_ids) std::printf(" %d", id);
    std::printf("\n");
  }
  return failures;
}
