#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wg/constants.hh"
#include "wg/errors.hh"
#include "wg/feasibility.hh"
#include "wg/primes.hh"
#include "wg/residue.hh"
#include "wg/spectral.hh"
#include "wg/subsets.hh"
#include "wg/transference.hh"
#include "wg/wtrick.hh"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace wg;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Global {
  std::string output_dir = ".";
  unsigned threads = 1;
};

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// All artifacts go through here: write to a sibling temp file, then rename.
void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw domain_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw domain_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

ojson artifact_skeleton(const std::string& subcommand, const ojson& config) {
  ojson j;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  return j;
}

std::string csv_stamp(const std::string& subcommand, const ojson& config) {
  std::string line = "# wgtool ";
  line += kVersion;
  line += ' ';
  line += subcommand;
  for (const auto& [key, val] : config.items()) {
    line += ' ';
    line += key;
    line += '=';
    line += val.is_string() ? val.get<std::string>() : val.dump();
  }
  line += '\n';
  return line;
}

void emit_json(const Global& g, const std::string& name, const ojson& j) {
  const std::string text = j.dump(2) + "\n";
  atomic_write(fs::path(g.output_dir) / name, text);
  std::cout << text;
}

void emit_csv(const Global& g, const std::string& name, const std::string& content) {
  atomic_write(fs::path(g.output_dir) / name, content);
  std::cout << (fs::path(g.output_dir) / name).string() << "\n";
}

template <class F>
void parallel_for(size_t n, unsigned threads, F&& body) {
  if (n == 0) return;
  threads = std::max<unsigned>(1, std::min<size_t>(threads, n));
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

// Subset spec grammar:
//   full
//   bernoulli:<delta>:<seed>
//   pattern:<m>:<r>
//   list:<path>   newline-delimited member values
//   file:<path>   bitset file written by save_subset
DensitySubset make_subset(const std::string& spec, BaseKind base, unsigned k, u64 X) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "full") {
    if (!rest.empty()) throw domain_error("subset spec 'full' takes no arguments");
    return build_subset(base, k, X, SubsetStrategy::make_full());
  }
  if (head == "bernoulli") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos)
      throw domain_error("subset spec: expected bernoulli:<delta>:<seed>");
    const double delta = std::stod(rest.substr(0, c2));
    const u64 seed = std::stoull(rest.substr(c2 + 1));
    return build_subset(base, k, X, SubsetStrategy::make_bernoulli(delta, seed));
  }
  if (head == "pattern") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw domain_error("subset spec: expected pattern:<m>:<r>");
    const u64 m = std::stoull(rest.substr(0, c2));
    const u64 r = std::stoull(rest.substr(c2 + 1));
    return build_subset(base, k, X, SubsetStrategy::make_index_pattern(m, r));
  }
  if (head == "list") {
    std::ifstream in(rest);
    if (!in) throw domain_error("cannot read member list " + rest);
    std::vector<u64> values;
    u64 v;
    while (in >> v) values.push_back(v);
    return build_subset_from_list(base, k, X, values);
  }
  if (head == "file") {
    DensitySubset s = load_subset(rest);
    if (s.base != base || (base == BaseKind::kth_powers && s.k != k))
      throw domain_error("subset file " + rest + " has a different base");
    if (s.X < X)
      throw domain_error("subset file " + rest + " covers values up to " + std::to_string(s.X) +
                         ", need " + std::to_string(X));
    return s;
  }
  throw domain_error("unknown subset spec '" + head + "'");
}

std::string bigint_str(const BigInt& v) { return v.str(); }

ojson margin_json(const Margin& m) {
  ojson j;
  j["name"] = m.name;
  j["lo"] = m.lo.to_decimal(30);
  j["hi"] = m.hi.to_decimal(30);
  j["proven"] = m.proven();
  j["refuted"] = m.refuted();
  return j;
}

// ---------------------------------------------------------------- constants

struct ConstantsOpts {
  std::string kind = "Z";
  unsigned k = 2;
  u64 P = 100000;
  std::string out;
};

int run_constants(const Global& g, const ConstantsOpts& o) {
  const bool doubled = o.kind == "T";
  const auto est = euler_constant(o.k, o.P, doubled);
  ojson config;
  config["kind"] = o.kind;
  config["k"] = o.k;
  config["P"] = o.P;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("constants", config);
  j["kind"] = o.kind;
  j["k"] = o.k;
  j["P"] = o.P;
  j["value"] = est.partial.to_decimal(30);
  j["tail_upper"] = est.tail_upper.to_double();
  j["decimal"] = est.to_double();
  const std::string name =
      o.out.empty() ? "constants_" + o.kind + std::to_string(o.k) + "_P" + std::to_string(o.P) +
                          ".json"
                    : o.out;
  emit_json(g, name, j);
  return 0;
}

// ----------------------------------------------------------------- residues

struct ResiduesOpts {
  unsigned k = 2;
  u64 w = 0;
  u64 modulus = 0;
  bool doubled = false;
  u64 max_list = 64;
  std::string out;
};

int run_residues(const Global& g, const ResiduesOpts& o) {
  if ((o.w == 0) == (o.modulus == 0))
    throw domain_error("residues: give exactly one of --w and --modulus");
  FactoredModulus W;
  if (o.w != 0) {
    std::vector<PrimePower> pps;
    for (u64 p : sieve_primes(o.w))
      pps.push_back({p, o.doubled ? 2 * o.k : o.k});
    if (pps.empty()) throw domain_error("residues: no primes up to w");
    W = FactoredModulus::from_prime_powers(std::move(pps));
  } else {
    W = FactoredModulus::from_u64(o.modulus);
  }
  const auto kc = make_kpower_context(o.k);

  ojson config;
  config["k"] = o.k;
  if (o.w != 0) config["w"] = o.w;
  if (o.modulus != 0) config["modulus"] = o.modulus;
  config["doubled"] = o.doubled;
  config["max_list"] = o.max_list;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("residues", config);
  j["k"] = o.k;
  j["omega_k"] = kc.omega_k;
  j["R_k"] = kc.R_k;
  j["modulus"] = bigint_str(W.value);
  j["phi"] = bigint_str(W.phi());
  j["unit_power_count"] = bigint_str(count_unit_kth_powers(W, o.k));
  j["all_power_count"] = bigint_str(count_all_kth_powers(W, o.k));

  // root-count mass per factor: summing the local table over all classes
  // gives p^e, over units phi(p^e); the products are exact
  BigInt sigma_total = 1, sigma_unit_total = 1;
  for (size_t i = 0; i < W.factors.size(); ++i) {
    const u64 pe = W.local_modulus(i);
    const auto& table = local_sigma_table(W.factors[i].p, W.factors[i].e, o.k);
    BigInt all = 0, unit = 0;
    for (u64 r = 0; r < pe; ++r) {
      all += table[size_t(r)];
      if (r % W.factors[i].p != 0) unit += table[size_t(r)];
    }
    sigma_total *= all;
    sigma_unit_total *= unit;
  }
  j["sigma_total"] = bigint_str(sigma_total);
  j["sigma_unit_total"] = bigint_str(sigma_unit_total);

  const bool enumerable = W.fits_u64() && W.value_u64() <= kEnumCap;
  j["enumerable"] = enumerable;
  if (enumerable) {
    const auto Z = enumerate_Z(W, o.k);
    j["z_count"] = Z.size();
    ojson zs = ojson::array(), sigmas = ojson::array();
    for (size_t i = 0; i < Z.size() && i < o.max_list; ++i) {
      zs.push_back(Z[i]);
      sigmas.push_back(sigma_roots(W.value_u64(), o.k, Z[i]));
    }
    j["z"] = zs;
    j["sigma"] = sigmas;
    j["z_truncated"] = Z.size() > o.max_list;
  }

  std::string name = o.out;
  if (name.empty()) {
    name = "residues_k" + std::to_string(o.k) + "_" +
           (o.w != 0 ? "w" + std::to_string(o.w) : "m" + std::to_string(o.modulus)) +
           (o.doubled ? "_d" : "") + ".json";
  }
  emit_json(g, name, j);
  return 0;
}

// -------------------------------------------------------------- feasibility

struct FeasibilityOpts {
  std::string theorem = "1.1";
  unsigned k = 3;
  std::string delta_a = "1";
  std::string delta_b = "1";
  std::string delta = "1";
  u64 P = 2000;
  std::string out;
  unsigned grid = 40;
  std::string sweep_out;
};

ojson theorem_check_json(const TheoremCheck& tc) {
  ojson j;
  j["theorem"] = tc.id;
  j["k"] = tc.k;
  j["k_allowed"] = tc.k_allowed;
  j["verdict"] = tc.verdict;
  j["reason"] = tc.reason;
  ojson margins = ojson::array();
  for (const auto& m : tc.margins) margins.push_back(margin_json(m));
  j["margins"] = margins;
  j["Z_lo"] = tc.Z_lo.to_decimal(30);
  j["Z_hi"] = tc.Z_hi.to_decimal(30);
  if (tc.T_hi.sign() != 0) {
    j["T_lo"] = tc.T_lo.to_decimal(30);
    j["T_hi"] = tc.T_hi.to_decimal(30);
  }
  j["minimal_s1"] = tc.minimal_s1;
  j["minimal_s2"] = tc.minimal_s2;
  j["R_k"] = tc.R_k;
  return j;
}

int run_feasibility(const Global& g, const FeasibilityOpts& o) {
  const auto tc = check_theorem(o.theorem, o.k, Rational::from_decimal(o.delta_a),
                                Rational::from_decimal(o.delta_b),
                                Rational::from_decimal(o.delta), o.P);
  ojson config;
  config["theorem"] = o.theorem;
  config["k"] = o.k;
  config["delta_a"] = o.delta_a;
  config["delta_b"] = o.delta_b;
  config["delta"] = o.delta;
  config["precision_P"] = o.P;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("feasibility", config);
  const ojson tcj = theorem_check_json(tc);
  for (const auto& [key, val] : tcj.items()) j[key] = val;
  std::string name = o.out;
  if (name.empty())
    name = "feasibility_" + o.theorem + "_k" + std::to_string(o.k) + ".json";
  emit_json(g, name, j);
  return tc.verdict == "undecidable" ? 4 : 0;
}

int run_feasibility_sweep(const Global& g, const FeasibilityOpts& o) {
  // P-relative statements vary (delta, delta_B); the others (delta_A, delta_B)
  const bool relative = o.theorem == "1.3" || o.theorem == "1.4" || o.theorem == "1.7" ||
                        o.theorem == "1.8";
  ojson config;
  config["theorem"] = o.theorem;
  config["k"] = o.k;
  config["grid"] = o.grid;
  config["precision_P"] = o.P;
  config["threads"] = g.threads;

  const unsigned G = o.grid;
  if (G < 2) throw domain_error("sweep: grid must be >= 2");
  std::vector<std::string> rows(size_t(G) * G);
  parallel_for(rows.size(), g.threads, [&](size_t idx) {
    const unsigned i = unsigned(idx / G) + 1, jj = unsigned(idx % G) + 1;
    const Rational da{long(i), long(G)}, db{long(jj), long(G)};
    const Rational one(1L);
    const auto tc = relative ? check_theorem(o.theorem, o.k, one, db, da, o.P)
                             : check_theorem(o.theorem, o.k, da, db, one, o.P);
    const Margin* worst = nullptr;
    for (const auto& m : tc.margins)
      if (!worst || m.hi < worst->hi) worst = &m;
    std::string row = da.to_decimal(6) + "," + db.to_decimal(6) + "," + tc.verdict + ",";
    if (worst)
      row += "\"" + worst->name + "\"," + worst->lo.to_decimal(17) + "," +
             worst->hi.to_decimal(17);
    else
      row += ",,";
    rows[idx] = row + "\n";
  });

  std::string csv = csv_stamp("feasibility-sweep", config);
  csv += relative ? "delta,delta_b,verdict,worst_margin,worst_lo,worst_hi\n"
                  : "delta_a,delta_b,verdict,worst_margin,worst_lo,worst_hi\n";
  for (const auto& r : rows) csv += r;
  std::string name = o.sweep_out;
  if (name.empty())
    name = "feasibility_sweep_" + o.theorem + "_k" + std::to_string(o.k) + ".csv";
  emit_csv(g, name, csv);
  return 0;
}

// ------------------------------------------------------------------- wtrick

struct WtrickOpts {
  unsigned k = 2;
  u64 w = 3;
  bool doubled = false;
  std::string n0 = "1440128";
  unsigned s1 = 6, s2 = 2;
  bool gtables = false;
  bool select = false;
  double eps = 0.2;
  std::string subset_a = "full";
  std::string subset_b = "full";
  u64 max_list = 64;
  std::string out;
};

int run_wtrick(const Global& g, const WtrickOpts& o) {
  const BigInt n0(o.n0);
  const auto ctx = build_context(o.k, o.w, o.doubled, n0, o.s1, o.s2);

  ojson config;
  config["k"] = o.k;
  config["w"] = o.w;
  config["doubled"] = o.doubled;
  config["n0"] = o.n0;
  config["s1"] = o.s1;
  config["s2"] = o.s2;
  config["gtables"] = o.gtables;
  config["select"] = o.select;
  config["eps"] = o.eps;
  config["subset_a"] = o.subset_a;
  config["subset_b"] = o.subset_b;
  config["max_list"] = o.max_list;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("wtrick", config);
  j["k"] = ctx.k;
  j["w"] = ctx.w;
  j["doubled"] = ctx.doubled;
  j["W"] = ctx.W_u64;
  j["phi_W"] = bigint_str(ctx.phi_W);
  j["n0"] = bigint_str(ctx.n0);
  j["s1"] = ctx.s1;
  j["s2"] = ctx.s2;
  j["N"] = ctx.N;
  j["R_k"] = ctx.R_k;
  j["congruence_ok"] = ctx.congruence_ok;
  j["z_count"] = ctx.Z.size();
  ojson zs = ojson::array(), sigmas = ojson::array();
  for (size_t i = 0; i < ctx.Z.size() && i < o.max_list; ++i) {
    zs.push_back(ctx.Z[i]);
    sigmas.push_back(ctx.sigma[i]);
  }
  j["z"] = zs;
  j["sigma"] = sigmas;
  j["z_truncated"] = ctx.Z.size() > o.max_list;

  std::string stem = o.out;
  if (stem.empty())
    stem = "wtrick_k" + std::to_string(o.k) + "_w" + std::to_string(o.w) +
           (o.doubled ? "_d" : "");

  if (o.gtables || o.select) {
    const BigInt bound = BigInt(ctx.W_u64) * (ctx.N + 1);
    if (bound > BigInt(std::numeric_limits<u64>::max()))
      throw capacity_error("wtrick: value range exceeds 64 bits");
    const u64 bound_u = bound.convert_to<u64>();
    const u64 tmax = ikroot(bound_u, o.k);
    auto A = make_subset(o.subset_a, BaseKind::primes, 0, tmax);
    auto B = make_subset(o.subset_b, BaseKind::kth_powers, o.k, bound_u);
    auto P = build_subset(BaseKind::primes, 0, tmax, SubsetStrategy::make_full());
    const auto tables = build_g_tables(ctx, &A, &B, &P);

    std::string csv = csv_stamp("wtrick-gtables", config);
    csv += "b,g1,g2,gbold\n";
    for (size_t i = 0; i < tables.residues.size(); ++i) {
      csv += std::to_string(tables.residues[i]) + "," + fmt_double(tables.g1[i]) + "," +
             fmt_double(tables.g2[i]) + "," + fmt_double(tables.gbold[i]) + "\n";
    }
    atomic_write(fs::path(g.output_dir) / (stem + "_gtables.csv"), csv);
    j["gtables_csv"] = stem + "_gtables.csv";

    if (o.select) {
      u64 n_class = (ctx.n0 % ctx.W_u64).convert_to<u64>();
      if (n_class == 0) n_class = ctx.W_u64;
      const auto sel =
          select_residues(ctx, n_class, o.s1, o.s2, tables.g1, tables.g2, o.eps);
      ojson sj;
      sj["feasible"] = sel.feasible;
      sj["b"] = sel.b;
      sj["total"] = sel.total;
      sj["method"] = sel.method;
      sj["reason"] = sel.reason;
      std::string why;
      sj["verified"] =
          sel.feasible &&
          verify_selection(ctx, n_class, o.s1, o.s2, tables.g1, tables.g2, o.eps, sel, &why);
      if (!why.empty()) sj["verify_note"] = why;
      j["selection"] = sj;
    }
  }

  emit_json(g, stem + ".json", j);
  return 0;
}

// ----------------------------------------------------------------- spectral

struct SpectralOpts {
  unsigned k = 3;
  u64 w = 3;
  bool doubled = false;
  unsigned s1 = 6, s2 = 2;
  std::vector<u64> Ns{10000};
  std::vector<std::string> kinds{"nu_prime", "nu_doubleprime"};
  std::vector<u64> residues;
  std::vector<double> qs;
  std::string subset_a = "full";
  std::string subset_b = "full";
  std::string out;
};

WeightKind parse_kind(const std::string& s) {
  for (WeightKind k :
       {WeightKind::f_prime, WeightKind::f_doubleprime, WeightKind::f_bold,
        WeightKind::nu_prime, WeightKind::nu_doubleprime})
    if (s == weight_kind_name(k)) return k;
  throw domain_error("unknown weight kind '" + s + "'");
}

int run_spectral(const Global& g, const SpectralOpts& o) {
  if (o.Ns.empty()) throw domain_error("spectral: need at least one N");
  const unsigned s_slots = o.s1 + o.s2;

  // contexts per N; n0 synthesized so floor(2 n0 / (s W)) lands exactly on N
  std::map<u64, WTrickContext> ctxs;
  u64 Nmax = 0;
  for (u64 N : o.Ns) {
    Nmax = std::max(Nmax, N);
    if (ctxs.count(N)) continue;
    WTrickContext probe = build_context(o.k, o.w, o.doubled, BigInt(1) << 40, o.s1, o.s2);
    const BigInt twice = BigInt(N) * s_slots * probe.W_u64;
    ctxs.emplace(N, build_context(o.k, o.w, o.doubled, (twice + 1) / 2, o.s1, o.s2));
    if (ctxs.at(N).N != N) throw domain_error("spectral: could not hit requested N exactly");
  }
  const WTrickContext& ctx0 = ctxs.begin()->second;

  std::vector<u64> residues = o.residues;
  if (residues.empty())
    residues.assign(ctx0.Z.begin(),
                    ctx0.Z.begin() + std::min<size_t>(3, ctx0.Z.size()));
  std::vector<double> qs = o.qs;
  if (qs.empty()) qs.push_back(double(o.k * (o.k + 1) + 1) - 0.5);

  bool wants_subsets = false;
  for (const auto& ks : o.kinds)
    if (ks[0] == 'f') wants_subsets = true;
  DensitySubset A, B;
  if (wants_subsets) {
    const BigInt bound = BigInt(ctx0.W_u64) * (Nmax + 1);
    if (bound > BigInt(std::numeric_limits<u64>::max()))
      throw capacity_error("spectral: value range exceeds 64 bits");
    const u64 bound_u = bound.convert_to<u64>();
    A = make_subset(o.subset_a, BaseKind::primes, 0, ikroot(bound_u, o.k));
    B = make_subset(o.subset_b, BaseKind::kth_powers, o.k, bound_u);
  }

  struct Task {
    u64 b;
    WeightKind kind;
    std::string kind_name;
    u64 N;
  };
  std::vector<Task> tasks;
  for (u64 b : residues)
    for (const auto& ks : o.kinds)
      for (u64 N : o.Ns) tasks.push_back({b, parse_kind(ks), ks, N});

  std::vector<std::string> blocks(tasks.size());
  parallel_for(tasks.size(), g.threads, [&](size_t ti) {
    const Task& t = tasks[ti];
    const WTrickContext& ctx = ctxs.at(t.N);
    const DensitySubset* sub = nullptr;
    if (t.kind == WeightKind::f_prime || t.kind == WeightKind::f_bold) sub = &A;
    if (t.kind == WeightKind::f_doubleprime) sub = &B;
    const auto seq = build_weight(ctx, t.kind, t.b, sub);
    const size_t M = size_t(next_pow2(2 * t.N + 1));
    const double sup = pseudorandomness_sup(seq.values, M);
    std::string block;
    for (double q : qs) {
      const auto rr = restriction_norm(seq.values, q, M);
      block += std::to_string(t.b) + "," + t.kind_name + "," + std::to_string(t.N) + "," +
               std::to_string(M) + "," + fmt_double(sup) + "," + fmt_double(q) + "," +
               fmt_double(rr.ratio) + "\n";
    }
    blocks[ti] = block;
  });

  ojson config;
  config["k"] = o.k;
  config["w"] = o.w;
  config["doubled"] = o.doubled;
  config["s1"] = o.s1;
  config["s2"] = o.s2;
  config["N"] = o.Ns;
  config["kinds"] = o.kinds;
  config["residues"] = residues;
  config["q"] = o.qs.empty() ? std::vector<double>{qs} : o.qs;
  config["subset_a"] = o.subset_a;
  config["subset_b"] = o.subset_b;
  config["threads"] = g.threads;
  std::string csv = csv_stamp("spectral", config);
  csv += "b,kind,N,M,sup_distance,q,lq_ratio\n";
  for (const auto& blk : blocks) csv += blk;

  std::string name = o.out;
  if (name.empty())
    name = "spectral_k" + std::to_string(o.k) + "_w" + std::to_string(o.w) +
           (o.doubled ? "_d" : "") + ".csv";
  emit_csv(g, name, csv);
  return 0;
}

// ----------------------------------------------------------------- transfer

struct TransferOpts {
  std::string config_path;
  std::string out;
};

int run_transfer(const Global& g, const TransferOpts& o) {
  std::ifstream in(o.config_path);
  if (!in) throw domain_error("cannot read config " + o.config_path);
  ojson cfgj;
  try {
    cfgj = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config " << o.config_path << ": " << e.what() << "\n";
    return 2;
  }
  if (!cfgj.is_object()) throw domain_error("config must be a JSON object");

  const std::vector<std::string> allowed = {
      "k",        "w",        "doubled",  "s1",       "s2",
      "eps",      "n0",       "subset_a", "subset_b", "use_bold",
      "proceed_on_congruence", "witness_budget"};
  for (const auto& [key, val] : cfgj.items()) {
    (void)val;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok) throw domain_error("unknown config key '" + key + "'");
  }
  for (const char* req : {"k", "s1", "s2", "n0"})
    if (!cfgj.contains(req)) throw domain_error(std::string("config missing '") + req + "'");

  PipelineConfig pc;
  pc.k = cfgj.at("k").get<unsigned>();
  pc.w = cfgj.value("w", u64(2));
  pc.doubled = cfgj.value("doubled", false);
  pc.s1 = cfgj.at("s1").get<unsigned>();
  pc.s2 = cfgj.at("s2").get<unsigned>();
  pc.eps = cfgj.value("eps", 0.2);
  pc.n0 = cfgj.at("n0").is_string() ? BigInt(cfgj.at("n0").get<std::string>())
                                    : BigInt(cfgj.at("n0").get<u64>());
  pc.use_bold = cfgj.value("use_bold", false);
  pc.proceed_on_congruence = cfgj.value("proceed_on_congruence", false);
  pc.witness_budget = cfgj.value("witness_budget", u64(50'000'000));
  const std::string spec_a = cfgj.value("subset_a", "full");
  const std::string spec_b = cfgj.value("subset_b", "full");

  const auto ctx = build_context(pc.k, pc.w, pc.doubled, pc.n0, pc.s1, pc.s2);
  const BigInt bound = BigInt(ctx.W_u64) * (ctx.N + 1);
  const BigInt u64max(std::numeric_limits<u64>::max());
  u64 xa, xb;
  if (pc.n0 <= u64max) {
    const u64 n0u = pc.n0.convert_to<u64>();
    xa = std::max(bound <= u64max ? ikroot(bound.convert_to<u64>(), pc.k) : 0,
                  ikroot(n0u, pc.k));
    xb = std::max(bound <= u64max ? bound.convert_to<u64>() : 0, n0u);
  } else {
    if (bound > u64max) throw capacity_error("transfer: value range exceeds 64 bits");
    xa = ikroot(bound.convert_to<u64>(), pc.k);
    xb = bound.convert_to<u64>();
  }
  auto A = make_subset(spec_a, BaseKind::primes, 0, xa);
  auto B = make_subset(spec_b, BaseKind::kth_powers, pc.k, xb);
  pc.A = &A;
  pc.B = &B;

  const auto rep = run_pipeline(pc);

  ojson config;
  config["k"] = pc.k;
  config["w"] = pc.w;
  config["doubled"] = pc.doubled;
  config["s1"] = pc.s1;
  config["s2"] = pc.s2;
  config["eps"] = pc.eps;
  config["n0"] = bigint_str(pc.n0);
  config["subset_a"] = spec_a;
  config["subset_b"] = spec_b;
  config["use_bold"] = pc.use_bold;
  config["proceed_on_congruence"] = pc.proceed_on_congruence;
  config["witness_budget"] = pc.witness_budget;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("transfer", config);
  j["k"] = rep.k;
  j["s1"] = rep.s1;
  j["s2"] = rep.s2;
  j["eps"] = rep.eps;
  j["kappa"] = rep.kappa;
  j["W"] = rep.W;
  j["N"] = rep.N;
  j["R_k"] = rep.R_k;
  j["congruence_ok"] = rep.congruence_ok;
  j["failure_stage"] = rep.failure_stage;
  j["note"] = rep.note;
  ojson sj;
  sj["feasible"] = rep.selection.feasible;
  sj["b"] = rep.selection.b;
  sj["total"] = rep.selection.total;
  sj["method"] = rep.selection.method;
  sj["reason"] = rep.selection.reason;
  j["selection"] = sj;
  ojson aj;
  aj["first_n"] = rep.audit.first_n;
  aj["last_n"] = rep.audit.last_n;
  aj["empty"] = rep.audit.empty;
  aj["all_positive"] = rep.audit.all_positive;
  aj["marginal"] = rep.audit.marginal;
  aj["min_value"] = rep.audit.min_value;
  aj["argmin"] = rep.audit.argmin;
  aj["violation_count"] = rep.audit.violation_count;
  aj["violations"] = rep.audit.violations;
  j["window"] = aj;
  j["target_n"] = bigint_str(rep.target_n);
  j["target_in_window"] = rep.target_in_window;
  j["value_at_target"] = rep.value_at_target;
  j["witness_attempted"] = rep.witness_attempted;
  ojson wj;
  wj["found"] = rep.witness.found;
  wj["primes"] = rep.witness.primes;
  wj["roots"] = rep.witness.roots;
  j["witness"] = wj;
  j["witness_verified"] = rep.witness_verified;

  std::string stem = o.out;
  if (stem.empty())
    stem = "transfer_k" + std::to_string(pc.k) + "_w" + std::to_string(pc.w) + "_" +
           bigint_str(pc.n0);
  if (!rep.window_values.empty()) {
    std::string csv = csv_stamp("transfer-window", config);
    csv += "n,value\n";
    for (size_t i = 0; i < rep.window_values.size(); ++i)
      csv += std::to_string(rep.audit.first_n + i) + "," + fmt_double(rep.window_values[i]) +
             "\n";
    atomic_write(fs::path(g.output_dir) / (stem + "_window.csv"), csv);
    j["window_csv"] = stem + "_window.csv";
  }
  emit_json(g, stem + ".json", j);
  return 0;
}

// ---------------------------------------------------------------- represent

struct RepresentOpts {
  std::string n0;
  unsigned k = 2;
  unsigned s1 = 4;
  unsigned s2 = 1;
  u64 cap = 0;
  u64 budget = 50'000'000;
  std::string subset_a = "full";
  std::string subset_b = "full";
  std::string out;
};

int run_represent(const Global& g, const RepresentOpts& o) {
  const BigInt n0(o.n0);
  if (n0 > BigInt(std::numeric_limits<u64>::max()))
    throw capacity_error("represent: n0 exceeds 64 bits");
  const u64 n0u = n0.convert_to<u64>();
  const u64 cap = o.cap != 0 ? o.cap : ikroot(n0u, o.k);
  auto A = make_subset(o.subset_a, BaseKind::primes, 0, cap);
  auto B = make_subset(o.subset_b, BaseKind::kth_powers, o.k, n0u);
  const auto wit = find_witness(n0, o.k, o.s1, o.s2, A, B, cap, o.budget);

  ojson config;
  config["n0"] = o.n0;
  config["k"] = o.k;
  config["s1"] = o.s1;
  config["s2"] = o.s2;
  config["cap"] = cap;
  config["budget"] = o.budget;
  config["subset_a"] = o.subset_a;
  config["subset_b"] = o.subset_b;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("represent", config);
  j["found"] = wit.found;
  j["primes"] = wit.primes;
  j["roots"] = wit.roots;
  if (wit.found) {
    BigInt total = 0;
    for (u64 p : wit.primes) total += BigInt(ipow_checked(p, o.k));
    for (u64 t : wit.roots) total += BigInt(ipow_checked(t, o.k));
    j["sum"] = bigint_str(total);
    j["verified"] = total == n0;
  }
  std::string name = o.out;
  if (name.empty()) name = "represent_" + o.n0 + "_k" + std::to_string(o.k) + ".json";
  emit_json(g, name, j);
  return 0;
}

// ------------------------------------------------------------------- report

struct ReportOpts {
  std::string dir;
  std::string out = "report.json";
};

int run_report(const Global& g, const ReportOpts& o) {
  const fs::path dir = o.dir.empty() ? fs::path(g.output_dir) : fs::path(o.dir);
  if (!fs::is_directory(dir)) throw domain_error("report: " + dir.string() + " is not a directory");
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == o.out || entry.path().extension() != ".json") continue;
    names.push_back(name);
  }
  std::sort(names.begin(), names.end());

  ojson config;
  config["dir"] = o.dir;
  config["threads"] = g.threads;
  ojson j = artifact_skeleton("report", config);
  ojson arts = ojson::array();
  for (const auto& name : names) {
    ojson entry;
    entry["file"] = name;
    try {
      std::ifstream in(dir / name);
      const ojson a = ojson::parse(in);
      entry["subcommand"] = a.value("subcommand", "?");
      entry["version"] = a.value("version", "?");
      if (a.contains("verdict")) entry["verdict"] = a.at("verdict");
      if (a.contains("failure_stage")) entry["failure_stage"] = a.at("failure_stage");
    } catch (const std::exception&) {
      entry["error"] = "unparseable";
    }
    arts.push_back(entry);
  }
  j["artifact_count"] = arts.size();
  j["artifacts"] = arts;
  const std::string text = j.dump(2) + "\n";
  atomic_write(dir / o.out, text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sums of prime powers and integer powers from dense subsets: "
               "constants, residue counts, hypothesis checks, weighted spectra, "
               "and the transference pipeline"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--output-dir", g.output_dir, "directory for artifacts")
      ->envname("WG_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker cap for sweeps")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  ConstantsOpts co;
  auto* constants = app.add_subcommand("constants", "Euler-product constants with tail bounds");
  constants->add_option("--kind", co.kind)->check(CLI::IsMember({"Z", "T"}))->required();
  constants->add_option("--k", co.k)->required();
  constants->add_option("--P", co.P)->capture_default_str();
  constants->add_option("--out", co.out);

  ResiduesOpts ro;
  auto* residues = app.add_subcommand("residues", "power residue counts and root tables");
  residues->add_option("--k", ro.k)->required();
  residues->add_option("--w", ro.w);
  residues->add_option("--modulus", ro.modulus);
  residues->add_flag("--doubled", ro.doubled);
  residues->add_option("--max-list", ro.max_list)->capture_default_str();
  residues->add_option("--out", ro.out);

  FeasibilityOpts fo;
  auto* feas = app.add_subcommand("feasibility", "hypothesis margins for one statement");
  feas->add_option("--theorem", fo.theorem)->required();
  feas->add_option("--k", fo.k)->required();
  feas->add_option("--delta-a", fo.delta_a)->capture_default_str();
  feas->add_option("--delta-b", fo.delta_b)->capture_default_str();
  feas->add_option("--delta", fo.delta)->capture_default_str();
  feas->add_option("--precision-P", fo.P)->capture_default_str();
  feas->add_option("--out", fo.out);
  auto* sweep = feas->add_subcommand("sweep", "density-grid phase diagram as CSV");
  sweep->add_option("--grid", fo.grid)->capture_default_str();
  sweep->add_option("--sweep-out", fo.sweep_out);

  WtrickOpts wo;
  auto* wtrick = app.add_subcommand("wtrick", "progression context, mean tables, selection");
  wtrick->add_option("--k", wo.k)->required();
  wtrick->add_option("--w", wo.w)->capture_default_str();
  wtrick->add_flag("--doubled", wo.doubled);
  wtrick->add_option("--n0", wo.n0)->required();
  wtrick->add_option("--s1", wo.s1)->capture_default_str();
  wtrick->add_option("--s2", wo.s2)->capture_default_str();
  wtrick->add_flag("--gtables", wo.gtables);
  wtrick->add_flag("--select", wo.select);
  wtrick->add_option("--eps", wo.eps)->capture_default_str();
  wtrick->add_option("--subset-a", wo.subset_a)->capture_default_str();
  wtrick->add_option("--subset-b", wo.subset_b)->capture_default_str();
  wtrick->add_option("--max-list", wo.max_list)->capture_default_str();
  wtrick->add_option("--out", wo.out);

  SpectralOpts so;
  auto* spectral = app.add_subcommand("spectral", "transform distances and moment ratios");
  spectral->add_option("--k", so.k)->required();
  spectral->add_option("--w", so.w)->capture_default_str();
  spectral->add_flag("--doubled", so.doubled);
  spectral->add_option("--s1", so.s1)->capture_default_str();
  spectral->add_option("--s2", so.s2)->capture_default_str();
  spectral->add_option("--N", so.Ns)->capture_default_str();
  spectral->add_option("--kinds", so.kinds)->capture_default_str();
  spectral->add_option("--residues", so.residues);
  spectral->add_option("--q", so.qs);
  spectral->add_option("--subset-a", so.subset_a)->capture_default_str();
  spectral->add_option("--subset-b", so.subset_b)->capture_default_str();
  spectral->add_option("--out", so.out);

  TransferOpts to;
  auto* transfer = app.add_subcommand("transfer", "full pipeline from a JSON run-config");
  transfer->add_option("--config", to.config_path)->required()->check(CLI::ExistingFile);
  transfer->add_option("--out", to.out);

  RepresentOpts po;
  auto* represent = app.add_subcommand("represent", "decomposition witness search");
  represent->add_option("--n0", po.n0)->required();
  represent->add_option("--k", po.k)->required();
  represent->add_option("--s1", po.s1)->capture_default_str();
  represent->add_option("--s2", po.s2)->capture_default_str();
  represent->add_option("--cap", po.cap);
  represent->add_option("--budget", po.budget)->capture_default_str();
  represent->add_option("--subset-a", po.subset_a)->capture_default_str();
  represent->add_option("--subset-b", po.subset_b)->capture_default_str();
  represent->add_option("--out", po.out);

  ReportOpts eo;
  auto* report = app.add_subcommand("report", "aggregate JSON artifacts in a directory");
  report->add_option("--dir", eo.dir);
  report->add_option("--out", eo.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constants->parsed()) return run_constants(g, co);
    if (residues->parsed()) return run_residues(g, ro);
    if (feas->parsed())
      return sweep->parsed() ? run_feasibility_sweep(g, fo) : run_feasibility(g, fo);
    if (wtrick->parsed()) return run_wtrick(g, wo);
    if (spectral->parsed()) return run_spectral(g, so);
    if (transfer->parsed()) return run_transfer(g, to);
    if (represent->parsed()) return run_represent(g, po);
    if (report->parsed()) return run_report(g, eo);
  } catch (const undecidable_error& e) {
    std::cerr << "undecidable: " << e.what() << "\n";
    return 4;
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
