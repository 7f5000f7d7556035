#ifndef WG_WTRICK_HH
#define WG_WTRICK_HH

#include <string>
#include <vector>

#include "wg/residue.hh"
#include "wg/subsets.hh"

namespace wg {

// W = prod_{1<p<=w} p^k (doubled: p^{2k}); N = floor(2 n0 / ((s1+s2) W)).
struct WTrickContext {
  unsigned k = 0;
  u64 w = 0;
  bool doubled = false;
  FactoredModulus W;
  u64 W_u64 = 0;
  BigInt phi_W;
  BigInt n0;
  unsigned s1 = 0, s2 = 0;
  u64 N = 0;
  u64 R_k = 0;
  bool congruence_ok = false;  // n0 == s1+s2 mod R_k
  std::vector<u64> Z;          // Z(W) ascending
  std::vector<u64> sigma;      // root counts, parallel to Z
};

WTrickContext build_context(unsigned k, u64 w, bool doubled, const BigInt& n0, unsigned s1,
                            unsigned s2);

enum class WeightKind { f_prime, f_doubleprime, f_bold, nu_prime, nu_doubleprime };

const char* weight_kind_name(WeightKind kind);

// values[n-1] holds the weight at n, n in [1, N].
struct WeightedSequence {
  WeightKind kind;
  u64 b = 0;
  unsigned k = 0;
  u64 W = 0;
  u64 N = 0;
  std::vector<double> values;

  double sum() const;
  double mean() const { return sum() / static_cast<double>(N); }
};

// subset: A (or P) for the prime kinds, B for f_doubleprime, ignored for the
// nu kinds.  Prime kinds weigh n with (phi(W)/(W sigma(b))) k t^{k-1} log t
// when Wn+b = t^k with t prime; power kinds with (k/sigma(b)) t^{k-1}.
WeightedSequence build_weight(const WTrickContext& ctx, WeightKind kind, u64 b,
                              const DensitySubset* subset);

double g_mean(const WeightedSequence& seq);

// max(0, (g - eps/2) / (1+eps)), clamped into [0, 1-1e-12].
double threshold_transform(double g, double eps);

// Mean tables over Z(W), one accumulation sweep across the k-th powers in
// (W, W(N+1)].  Entries parallel ctx.Z; a table stays empty when its input
// subset pointer is null.
struct GTables {
  std::vector<u64> residues;
  std::vector<double> g1;     // f'-means with A
  std::vector<double> g2;     // f''-means with B
  std::vector<double> gbold;  // f'-means with P
};

GTables build_g_tables(const WTrickContext& ctx, const DensitySubset* A, const DensitySubset* B,
                       const DensitySubset* P);

struct ResidueSelection {
  bool feasible = false;
  std::vector<u64> b;   // residues, slot order: s1 prime slots then s2 power slots
  double total = 0.0;
  std::string method;   // "dp" or "greedy"
  std::string reason;   // set when infeasible
};

// Find b_1..b_{s1+s2} in Z(W) with sum == n_class mod W, per-slot mean
// > eps/2, and total mean sum > (s1+s2)(1+eps)/2.  The dp path maximizes the
// total subject to the first two constraints, so its infeasible verdict is
// exhaustive; the greedy path (large W) repeats the argmax residues and
// closes the congruence with a bounded number of free slots.
ResidueSelection select_residues(const WTrickContext& ctx, u64 n_class, unsigned s1, unsigned s2,
                                 const std::vector<double>& g1, const std::vector<double>& g2,
                                 double eps);

// Re-checks a selection against the tables from scratch.
bool verify_selection(const WTrickContext& ctx, u64 n_class, unsigned s1, unsigned s2,
                      const std::vector<double>& g1, const std::vector<double>& g2, double eps,
                      const ResidueSelection& sel, std::string* why = nullptr);

}  // namespace wg

#endif  // WG_WTRICK_HH
