#include "wg/subsets.hh"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "wg/errors.hh"
#include "wg/primes.hh"

namespace wg {

SubsetStrategy SubsetStrategy::make_full() { return SubsetStrategy{}; }

SubsetStrategy SubsetStrategy::make_bernoulli(double delta, u64 seed) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw domain_error("bernoulli density must lie in (0, 1]");
  SubsetStrategy s;
  s.kind = bernoulli;
  s.delta = delta;
  s.seed = seed;
  return s;
}

SubsetStrategy SubsetStrategy::make_index_pattern(u64 m, u64 r) {
  if (m == 0 || r > m) throw domain_error("index pattern requires 0 <= r <= m, m >= 1");
  SubsetStrategy s;
  s.kind = index_pattern;
  s.m = m;
  s.r = r;
  return s;
}

std::string SubsetStrategy::describe() const {
  char buf[96];
  switch (kind) {
    case full:
      return "full";
    case bernoulli:
      std::snprintf(buf, sizeof buf, "bernoulli(%.17g,%llu)", delta,
                    static_cast<unsigned long long>(seed));
      return buf;
    case index_pattern:
      std::snprintf(buf, sizeof buf, "index_pattern(%llu,%llu)",
                    static_cast<unsigned long long>(m), static_cast<unsigned long long>(r));
      return buf;
    case explicit_list:
      return "explicit";
  }
  return "?";
}

bool DensitySubset::contains(u64 value) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), value);
  if (it == elements.end() || *it != value) return false;
  return member_index(static_cast<size_t>(it - elements.begin()));
}

size_t DensitySubset::member_count() const {
  size_t c = 0;
  for (u64 wgrp : member_bits) c += static_cast<size_t>(__builtin_popcountll(wgrp));
  return c;
}

bool DensitySubset::is_full() const { return member_count() == elements.size(); }

namespace {

std::vector<u64> base_elements(BaseKind base, unsigned k, u64 X) {
  if (base == BaseKind::primes) {
    if (X < 2) throw domain_error("prime base needs X >= 2");
    return sieve_primes(X);
  }
  if (k < 2) throw domain_error("k-th power base needs k >= 2");
  if (X < 1) throw domain_error("k-th power base empty below X");
  std::vector<u64> out;
  u64 tmax = ikroot(X, k);
  for (u64 t = 1; t <= tmax; ++t) out.push_back(ipow_checked(t, k));
  return out;
}

// One uniform draw per element in ascending order, member iff draw < delta.
// Keeps bernoulli(d1) a subset of bernoulli(d2) for d1 <= d2 at equal seed.
double uniform_draw(std::mt19937_64& rng) { return (rng() >> 11) * 0x1p-53; }

}  // namespace

DensitySubset build_subset(BaseKind base, unsigned k, u64 X, const SubsetStrategy& strategy) {
  DensitySubset s;
  s.base = base;
  s.k = base == BaseKind::kth_powers ? k : 0;
  s.X = X;
  s.strategy = strategy;
  s.elements = base_elements(base, k, X);
  s.member_bits.assign((s.elements.size() + 63) / 64, 0);
  auto set = [&](size_t i) { s.member_bits[i >> 6] |= 1ull << (i & 63); };
  switch (strategy.kind) {
    case SubsetStrategy::full: {
      for (size_t i = 0; i < s.elements.size(); ++i) set(i);
      s.target_density = 1.0;
      break;
    }
    case SubsetStrategy::bernoulli: {
      if (!(strategy.delta > 0.0 && strategy.delta <= 1.0))
        throw domain_error("bernoulli density must lie in (0, 1]");
      std::mt19937_64 rng(strategy.seed);
      for (size_t i = 0; i < s.elements.size(); ++i)
        if (uniform_draw(rng) < strategy.delta) set(i);
      s.target_density = strategy.delta;
      break;
    }
    case SubsetStrategy::index_pattern: {
      if (strategy.m == 0 || strategy.r > strategy.m)
        throw domain_error("index pattern requires 0 <= r <= m, m >= 1");
      for (size_t i = 0; i < s.elements.size(); ++i)
        if (i % strategy.m < strategy.r) set(i);
      s.target_density = static_cast<double>(strategy.r) / static_cast<double>(strategy.m);
      break;
    }
    case SubsetStrategy::explicit_list:
      throw domain_error("use build_subset_from_list for explicit members");
  }
  return s;
}

DensitySubset build_subset_from_list(BaseKind base, unsigned k, u64 X,
                                     const std::vector<u64>& values) {
  DensitySubset s;
  s.base = base;
  s.k = base == BaseKind::kth_powers ? k : 0;
  s.X = X;
  s.strategy.kind = SubsetStrategy::explicit_list;
  s.elements = base_elements(base, k, X);
  s.member_bits.assign((s.elements.size() + 63) / 64, 0);
  for (u64 v : values) {
    auto it = std::lower_bound(s.elements.begin(), s.elements.end(), v);
    if (it == s.elements.end() || *it != v)
      throw domain_error("explicit member " + std::to_string(v) + " is not a base element <= X");
    size_t i = static_cast<size_t>(it - s.elements.begin());
    s.member_bits[i >> 6] |= 1ull << (i & 63);
  }
  s.target_density =
      s.elements.empty() ? 0.0
                         : static_cast<double>(s.member_count()) / s.elements.size();
  return s;
}

double empirical_density(const DensitySubset& s, u64 up_to) {
  if (up_to > s.X) throw domain_error("density query beyond the built bound");
  auto end = std::upper_bound(s.elements.begin(), s.elements.end(), up_to);
  size_t n = static_cast<size_t>(end - s.elements.begin());
  if (n == 0) throw domain_error("no base elements below the query point");
  size_t c = 0;
  for (size_t i = 0; i < n; ++i) c += s.member_index(i);
  return static_cast<double>(c) / static_cast<double>(n);
}

void save_subset(const DensitySubset& s, const std::string& path) {
  std::ostringstream hdr;
  hdr << "{\"base\":\"" << (s.base == BaseKind::primes ? "primes" : "kth_powers")
      << "\",\"k\":" << s.k << ",\"X\":" << s.X << ",\"strategy\":\"" << s.strategy.describe()
      << "\",\"delta\":" << s.strategy.delta << ",\"seed\":" << s.strategy.seed
      << ",\"m\":" << s.strategy.m << ",\"r\":" << s.strategy.r
      << ",\"count\":" << s.elements.size() << "}\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw domain_error("cannot open " + path + " for writing");
  out << hdr.str();
  for (u64 wgrp : s.member_bits)
    for (int byte = 0; byte < 8; ++byte) out.put(static_cast<char>((wgrp >> (8 * byte)) & 0xff));
  if (!out) throw domain_error("short write to " + path);
}

namespace {

u64 header_field(const std::string& hdr, const std::string& key) {
  auto pos = hdr.find("\"" + key + "\":");
  if (pos == std::string::npos) throw domain_error("subset header missing field " + key);
  pos += key.size() + 3;
  return std::stoull(hdr.substr(pos));
}

}  // namespace

DensitySubset load_subset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot open " + path);
  std::string hdr;
  std::getline(in, hdr);
  DensitySubset s;
  s.base = hdr.find("\"base\":\"primes\"") != std::string::npos ? BaseKind::primes
                                                                : BaseKind::kth_powers;
  s.k = static_cast<unsigned>(header_field(hdr, "k"));
  s.X = header_field(hdr, "X");
  u64 count = header_field(hdr, "count");
  auto strat = hdr.find("\"strategy\":\"");
  if (strat != std::string::npos) {
    std::string name = hdr.substr(strat + 12);
    if (name.rfind("full", 0) == 0)
      s.strategy.kind = SubsetStrategy::full;
    else if (name.rfind("bernoulli", 0) == 0)
      s.strategy.kind = SubsetStrategy::bernoulli;
    else if (name.rfind("index_pattern", 0) == 0)
      s.strategy.kind = SubsetStrategy::index_pattern;
    else
      s.strategy.kind = SubsetStrategy::explicit_list;
  }
  s.strategy.seed = header_field(hdr, "seed");
  s.strategy.m = header_field(hdr, "m");
  s.strategy.r = header_field(hdr, "r");
  {
    auto pos = hdr.find("\"delta\":");
    if (pos != std::string::npos) s.strategy.delta = std::stod(hdr.substr(pos + 8));
  }
  s.elements = base_elements(s.base, s.base == BaseKind::kth_powers ? s.k : 2, s.X);
  if (s.elements.size() != count)
    throw domain_error("subset file count disagrees with rebuilt base");
  s.member_bits.assign((count + 63) / 64, 0);
  for (auto& wgrp : s.member_bits) {
    u64 v = 0;
    for (int byte = 0; byte < 8; ++byte) {
      int c = in.get();
      if (c == EOF) throw domain_error("truncated subset file " + path);
      v |= static_cast<u64>(static_cast<unsigned char>(c)) << (8 * byte);
    }
    wgrp = v;
  }
  s.target_density = s.strategy.kind == SubsetStrategy::bernoulli ? s.strategy.delta
                     : s.strategy.kind == SubsetStrategy::index_pattern
                         ? static_cast<double>(s.strategy.r) / s.strategy.m
                         : 1.0;
  return s;
}

}  // namespace wg
