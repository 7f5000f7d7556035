#ifndef WG_SUBSETS_HH
#define WG_SUBSETS_HH

#include <string>
#include <vector>

#include "wg/arith.hh"

namespace wg {

enum class BaseKind { primes, kth_powers };

// How members are chosen from the base elements, in ascending order:
//   full:           every element
//   bernoulli:      element i included iff the i-th uniform draw < delta
//   index_pattern:  element i included iff i mod m < r  (exact density r/m)
//   explicit_list:  caller-supplied element values
struct SubsetStrategy {
  enum Kind { full, bernoulli, index_pattern, explicit_list } kind = full;
  double delta = 1.0;
  u64 seed = 0;
  u64 m = 1, r = 1;

  static SubsetStrategy make_full();
  static SubsetStrategy make_bernoulli(double delta, u64 seed);
  static SubsetStrategy make_index_pattern(u64 m, u64 r);
  std::string describe() const;
};

struct DensitySubset {
  BaseKind base;
  unsigned k = 0;  // exponent for kth_powers; 0 for primes
  u64 X = 0;
  SubsetStrategy strategy;
  std::vector<u64> elements;     // base elements <= X, ascending
  std::vector<u64> member_bits;  // bit i set <=> elements[i] is a member
  double target_density = 1.0;

  bool member_index(size_t i) const { return (member_bits[i >> 6] >> (i & 63)) & 1; }
  bool contains(u64 value) const;  // binary search over elements
  size_t member_count() const;
  bool is_full() const;
};

DensitySubset build_subset(BaseKind base, unsigned k, u64 X, const SubsetStrategy& strategy);

// Explicit member list; every value must be a base element <= X.
DensitySubset build_subset_from_list(BaseKind base, unsigned k, u64 X,
                                     const std::vector<u64>& values);

// |members <= up_to| / |base elements <= up_to|.
double empirical_density(const DensitySubset& s, u64 up_to);

// Compact bitset file with a JSON header line.
void save_subset(const DensitySubset& s, const std::string& path);
DensitySubset load_subset(const std::string& path);

}  // namespace wg

#endif  // WG_SUBSETS_HH
