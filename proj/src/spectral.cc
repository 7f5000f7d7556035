#include "wg/spectral.hh"

#include <cmath>
#include <numbers>

#include "wg/errors.hh"

namespace wg {

u64 next_pow2(u64 x) {
  if (x == 0) return 1;
  u64 p = 1;
  while (p < x) {
    if (p > (u64(1) << 62)) throw capacity_error("next_pow2: out of range");
    p <<= 1;
  }
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw domain_error("fft: size must be a power of two");
  if (sign != 1 && sign != -1) throw domain_error("fft: sign must be +-1");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t j2 = 0; j2 < len / 2; ++j2) {
        std::complex<double> u = a[i + j2];
        std::complex<double> v = a[i + j2 + len / 2] * w;
        a[i + j2] = u + v;
        a[i + j2 + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<std::complex<double>> naive_dft(const std::vector<double>& values, size_t M) {
  if (M == 0) throw domain_error("dft: M must be positive");
  const size_t N = values.size();
  std::vector<std::complex<double>> out(M);
  const double two_pi = 2.0 * std::numbers::pi;
  for (size_t j = 0; j < M; ++j) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t n = 1; n <= N; ++n) {
      if (values[n - 1] == 0.0) continue;
      const double ang = two_pi * double((n * j) % M) / double(M);
      acc += values[n - 1] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[j] = acc;
  }
  return out;
}

std::vector<std::complex<double>> fourier_grid(const std::vector<double>& values, size_t M) {
  const size_t N = values.size();
  if (M < 2 * N) throw domain_error("fourier_grid: need M >= 2N");
  if ((M & (M - 1)) != 0) return naive_dft(values, M);
  std::vector<std::complex<double>> a(M, std::complex<double>(0.0, 0.0));
  for (size_t n = 1; n <= N; ++n) a[n] = values[n - 1];
  fft_inplace(a, +1);
  return a;
}

double pseudorandomness_sup(const std::vector<double>& values, size_t M) {
  const size_t N = values.size();
  if (N == 0) throw domain_error("pseudorandomness_sup: empty sequence");
  std::vector<double> diff(N);
  for (size_t i = 0; i < N; ++i) diff[i] = values[i] - 1.0;
  auto grid = fourier_grid(diff, M);
  double sup = 0.0;
  for (const auto& c : grid) sup = std::max(sup, std::abs(c));
  return sup / double(N);
}

double pseudorandomness_sup(const WeightedSequence& nu, size_t M) {
  if (nu.kind != WeightKind::nu_prime && nu.kind != WeightKind::nu_doubleprime)
    throw domain_error("pseudorandomness_sup: expects a majorant sequence");
  return pseudorandomness_sup(nu.values, M);
}

RestrictionResult restriction_norm(const std::vector<double>& values, double q, size_t M) {
  if (!(q > 2.0)) throw domain_error("restriction_norm: need q > 2");
  const size_t N = values.size();
  if (N == 0) throw domain_error("restriction_norm: empty sequence");
  auto grid = fourier_grid(values, M);
  double acc = 0.0;
  for (const auto& c : grid) {
    const double m = std::abs(c);
    if (m > 0.0) acc += std::pow(m, q);
  }
  RestrictionResult r;
  r.lq_norm = acc / double(M);
  r.ratio = r.lq_norm / std::pow(double(N), q - 1.0);
  return r;
}

double parseval_gap(const std::vector<double>& values,
                    const std::vector<std::complex<double>>& grid) {
  double time_side = 0.0;
  for (double v : values) time_side += v * v;
  double freq_side = 0.0;
  for (const auto& c : grid) freq_side += std::norm(c);
  freq_side /= double(grid.size());
  if (time_side == 0.0) return freq_side == 0.0 ? 0.0 : 1.0;
  return std::abs(freq_side - time_side) / time_side;
}

}  // namespace wg
