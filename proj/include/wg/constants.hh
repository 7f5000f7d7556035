#ifndef WG_CONSTANTS_HH
#define WG_CONSTANTS_HH

#include <string>

#include "wg/rational.hh"
#include "wg/residue.hh"

namespace wg {

// Euler-product constant over primes: prod_p (1 + 1/|Z(p^e)|) with e = k
// (kind Z) or e = 2k (kind T).  partial is the exact product over p <= P;
// the true value lies in [partial, partial * exp(tail_upper)].
struct ConstantEstimate {
  char kind;  // 'Z' or 'T'
  unsigned k;
  u64 P;
  Rational partial;
  Rational tail_upper;

  Rational lower() const { return partial; }
  // Rational upper bound via exp(t) <= 1/(1-t), valid since tail < 1 here.
  Rational upper() const;
  double to_double() const { return partial.to_double(); }

  // Outward-rounded compact interval (denominators ~2^96); keeps later
  // interval arithmetic cheap without losing soundness.
  std::pair<Rational, Rational> bracket() const;
};

// 1 + 1/|Z(p^{e})| with e = k or 2k, as an exact rational.
Rational local_factor(u64 p, unsigned k, bool doubled);

ConstantEstimate euler_constant(unsigned k, u64 P, bool doubled);

// prod_{p | W} |Z_{p^e}^{(k)}| / |Z(p^e)| over the prime support of
// W = prod_{1<p<=w} p^{e}, e = k or 2k.  Exact rational.
Rational ratio_ZW(unsigned k, u64 w, bool doubled);

}  // namespace wg

#endif  // WG_CONSTANTS_HH
