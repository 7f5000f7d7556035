#ifndef WG_SPECTRAL_HH
#define WG_SPECTRAL_HH

#include <complex>
#include <vector>

#include "wg/wtrick.hh"

namespace wg {

u64 next_pow2(u64 x);

// In-place radix-2 transform, a.size() a power of two.  sign +1 applies
// e(+jk/M), matching the convention fhat(alpha) = sum f(n) e(n alpha);
// sign -1 inverts up to the 1/M factor (not applied here).
void fft_inplace(std::vector<std::complex<double>>& a, int sign);

// fhat(j/M) for j = 0..M-1 with f supported on n in [1, N] (values[n-1]).
// Direct O(NM) summation; the arbiter for the fast path in tests.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& values, size_t M);

// Same grid through the radix-2 transform when M is a power of two, else
// the direct path.  Requires M >= 2N.
std::vector<std::complex<double>> fourier_grid(const std::vector<double>& values, size_t M);

// max_j |nuhat(j/M) - 1hat(j/M)| / N, computed as one transform of nu - 1.
double pseudorandomness_sup(const WeightedSequence& nu, size_t M);
double pseudorandomness_sup(const std::vector<double>& values, size_t M);

struct RestrictionResult {
  double lq_norm;  // (1/M) sum_j |fhat(j/M)|^q
  double ratio;    // lq_norm / N^{q-1}
};

RestrictionResult restriction_norm(const std::vector<double>& values, double q, size_t M);

// |(1/M) sum |fhat|^2 - sum f^2| relative to sum f^2.
double parseval_gap(const std::vector<double>& values,
                    const std::vector<std::complex<double>>& grid);

struct SpectrumReport {
  u64 N = 0;
  size_t M = 0;
  double sup_distance = 0.0;
  double q = 0.0;
  double lq_norm = 0.0;
  double lq_ratio = 0.0;
};

}  // namespace wg

#endif  // WG_SPECTRAL_HH
