#ifndef WG_FEASIBILITY_HH
#define WG_FEASIBILITY_HH

#include <string>
#include <vector>

#include "wg/constants.hh"

namespace wg {

// Certified interval for a hypothesis value LHS - RHS.  lo > 0 proves the
// hypothesis, hi <= 0 refutes it, anything else is unresolved at this P.
struct Margin {
  std::string name;
  Rational lo, hi;

  bool proven() const { return lo.sign() > 0; }
  bool refuted() const { return hi.sign() <= 0; }
};

struct TheoremCheck {
  std::string id;  // "1.1" .. "1.8"
  unsigned k = 0;
  bool k_allowed = false;
  std::string verdict;  // "feasible" | "infeasible" | "undecidable"
  std::string reason;
  std::vector<Margin> margins;
  Rational Z_lo, Z_hi;  // undoubled Euler constant bracket
  Rational T_lo, T_hi;  // doubled bracket; zero for the undoubled statements
  unsigned minimal_s1 = 0, minimal_s2 = 0;
  u64 R_k = 0;
};

bool theorem_allows_k(const std::string& id, unsigned k);

// Density hypotheses for one statement of the family, at Euler-product
// precision P.  delta_A and delta_B are the two subset densities; delta is
// the relative density inside the primes where the statement uses one.
// Root conditions are compared in the power domain, so every margin is an
// exact rational interval.
TheoremCheck check_theorem(const std::string& id, unsigned k, const Rational& delta_A,
                           const Rational& delta_B, const Rational& delta, u64 P);

// Smallest admissible s1 for the given k and s2: the larger of the
// transference demand 16 k omega(k) + 4k + 4 + s2 and the exceptional-set
// demand s1 + s2 > k^2 + k.
unsigned minimal_s1(unsigned k, unsigned s2);

// 1 + T - Z (plus_half false) or T + 1/2 - Z (plus_half true), bracketed.
Margin condition_sup_margin(unsigned k, u64 P, bool plus_half);

// One-constant split of the sum condition: with a single rational stand-in
// for the Euler constant, branch_a + branch_b == sum_margin + 1 identically,
// so sum_margin > 0 forces one branch above 1/2.
struct SplitCheck {
  Rational branch_a;    // k dA - (k-1)
  Rational branch_b;    // Z (dB^k - 1) + 1
  Rational sum_margin;  // k dA + Z dB^k - (Z + k - 1)
  bool applies = false;
  bool holds = false;
};

SplitCheck sum_condition_split(unsigned k, const Rational& dA, const Rational& dB, u64 P);

}  // namespace wg

#endif  // WG_FEASIBILITY_HH
