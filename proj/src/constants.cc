#include "wg/constants.hh"

#include "wg/errors.hh"
#include "wg/primes.hh"

namespace wg {

namespace mp = boost::multiprecision;

Rational ConstantEstimate::upper() const {
  if (tail_upper >= Rational(1))
    throw domain_error("tail bound too large for exp bound; raise P");
  // exp(t) <= 1/(1-t) = den/(den-num) for t = num/den in [0,1).
  Rational expb(tail_upper.den(), tail_upper.den() - tail_upper.num());
  return partial * expb;
}

namespace {

Rational round_scaled(const Rational& r, bool up) {
  // floor/ceil of r * 2^96, back over 2^96.
  BigInt scaled = (r.num() << 96) / r.den();
  if (up && scaled * r.den() != (r.num() << 96)) scaled += 1;
  return Rational(scaled, BigInt(1) << 96);
}

}  // namespace

std::pair<Rational, Rational> ConstantEstimate::bracket() const {
  return {round_scaled(lower(), false), round_scaled(upper(), true)};
}

Rational local_factor(u64 p, unsigned k, bool doubled) {
  if (k < 2) throw domain_error("local_factor: k >= 2 required");
  unsigned e = doubled ? 2 * k : k;
  BigInt z = count_unit_kth_powers(p, e, k);
  return Rational(z + 1, z);
}

ConstantEstimate euler_constant(unsigned k, u64 P, bool doubled) {
  if (k < 2) throw domain_error("euler_constant: k >= 2 required");
  if (P < 2) throw domain_error("euler_constant: P >= 2 required");
  unsigned e = doubled ? 2 * k : k;
  // Accumulate numerator and denominator separately; no per-step gcd.
  BigInt num = 1, den = 1;
  for (u64 p : sieve_primes(P)) {
    BigInt z = count_unit_kth_powers(p, e, k);
    num *= z + 1;
    den *= z;
  }
  // Tail: for odd p, |Z(p^e)| >= p^{e-1}(p-1)/k, so
  //   sum_{p > P} 1/|Z(p^e)| <= k * sum_{n > P} 1/(n^{e-1}(n-1))
  //                          <= k * sum_{m >= P} m^{-e}
  //                          <= k * integral_{P-1}^inf x^{-e} dx
  //                           = k * (P-1)^{1-e} / (e-1).
  BigInt tail_den = e - 1;
  for (unsigned i = 0; i + 1 < e; ++i) tail_den *= P - 1;
  ConstantEstimate est;
  est.kind = doubled ? 'T' : 'Z';
  est.k = k;
  est.P = P;
  est.partial = Rational(std::move(num), std::move(den));
  est.tail_upper = Rational(BigInt(k), std::move(tail_den));
  return est;
}

Rational ratio_ZW(unsigned k, u64 w, bool doubled) {
  if (k < 2) throw domain_error("ratio_ZW: k >= 2 required");
  unsigned e = doubled ? 2 * k : k;
  Rational r(1);
  for (u64 p : sieve_primes(w)) {
    BigInt all = count_all_kth_powers_local(p, e, k);
    BigInt units = count_unit_kth_powers(p, e, k);
    r *= Rational(std::move(all), std::move(units));
  }
  return r;
}

}  // namespace wg
