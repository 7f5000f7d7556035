#ifndef WG_TRANSFERENCE_HH
#define WG_TRANSFERENCE_HH

#include <string>
#include <vector>

#include "wg/subsets.hh"
#include "wg/wtrick.hh"

namespace wg {

// s-fold convolution of sequences supported on [1, N] (values[n-1]).
// Result is indexed by the sum value directly: out[m] = sum over
// n_1 + ... + n_s = m of the product, for m in [0, s*N].  Serial exact
// summation; every addend enters in a fixed order.
std::vector<double> convolve_all(const std::vector<std::vector<double>>& seqs);

// Same quantity through zero-padded transforms.  Must agree with the
// serial path within 1e-6 relative error on all non-negligible entries.
std::vector<double> convolve_all_fft(const std::vector<std::vector<double>>& seqs);

struct WindowAudit {
  u64 first_n = 0;  // smallest integer strictly inside the open window
  u64 last_n = 0;   // largest such integer; first_n > last_n means empty
  bool empty = true;
  bool all_positive = false;
  bool marginal = false;  // min positive value below 1e-9 * N^{s-1}
  double min_value = 0.0;
  u64 argmin = 0;
  u64 violation_count = 0;
  std::vector<u64> violations;  // first few offending n
};

// Audits conv > 0 on the open window ((1-kappa^2) sN/2, (1+kappa) sN/2)
// with kappa = eps/32.
WindowAudit positivity_window(const std::vector<double>& conv, unsigned s, u64 N, double eps);

struct Witness {
  bool found = false;
  std::vector<u64> primes;  // s1 primes p with p^k in the sum
  std::vector<u64> roots;   // s2 integers t with t^k in the sum
};

// Searches for n0 = p_1^k + ... + p_{s1}^k + t_1^k + ... + t_{s2}^k with
// each p in A and each t^k in B, candidates bounded by cap.  Deterministic:
// depth-first over non-increasing choices, largest first.  Throws
// capacity_error when the node budget is exhausted.
Witness find_witness(const BigInt& n0, unsigned k, unsigned s1, unsigned s2,
                     const DensitySubset& A, const DensitySubset& B, u64 cap,
                     u64 budget = 50'000'000);

struct PipelineConfig {
  unsigned k = 0;
  u64 w = 2;
  bool doubled = false;
  unsigned s1 = 0;
  unsigned s2 = 0;
  double eps = 0.2;
  BigInt n0;
  const DensitySubset* A = nullptr;  // primes; interpreted as the full-P role when use_bold
  const DensitySubset* B = nullptr;  // k-th powers
  bool use_bold = false;
  bool proceed_on_congruence = false;
  u64 witness_budget = 50'000'000;
};

struct PipelineReport {
  unsigned k = 0, s1 = 0, s2 = 0;
  double eps = 0.0, kappa = 0.0;
  u64 W = 0, N = 0, R_k = 0;
  bool congruence_ok = false;
  std::string failure_stage;  // empty on full success
  std::string note;
  ResidueSelection selection;
  WindowAudit audit;
  std::vector<double> window_values;  // conv on [first_n, last_n], empty if unreached
  BigInt target_n;  // (n0 - sum b) / W
  bool target_in_window = false;
  double value_at_target = 0.0;
  bool witness_attempted = false;
  Witness witness;
  bool witness_verified = false;
};

PipelineReport run_pipeline(const PipelineConfig& cfg);

}  // namespace wg

#endif  // WG_TRANSFERENCE_HH
