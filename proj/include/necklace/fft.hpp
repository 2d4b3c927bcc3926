#pragma once
// Iterative radix-2 complex FFT and the standard (+,*) convolution, written
// against the standard library only.
//
// Both real inputs are packed into a single complex transform and untangled
// in the frequency domain, so one convolution costs two transforms. Twiddle
// factors come from a directly evaluated table, which keeps the error of a
// length 2^21 transform comfortably inside the documented bound.

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace necklace {

namespace fft_detail {

// In-place iterative radix-2 transform; a.size() must be a power of two.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool invert) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::complex<double>> w(n / 2);
  const double sign = invert ? -1.0 : 1.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang =
        sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + half] * w[k * stride];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (invert) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

inline void require_finite(const std::vector<double>& v, const char* side) {
  for (double d : v) {
    if (!(d - d == 0.0)) {
      throw std::invalid_argument(std::string("convolve_sum_product: ") + side +
                                  " input must be finite");
    }
  }
}

}  // namespace fft_detail

// (+,*) convolution: out[k] = sum over i of x[i] * y[k-i], for k in
// [0, |x| + |y| - 2]. Entries must be finite reals.
inline std::vector<double> convolve_sum_product(const std::vector<double>& x,
                                                const std::vector<double>& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("convolve_sum_product: inputs must be nonempty");
  }
  fft_detail::require_finite(x, "left");
  fft_detail::require_finite(y, "right");

  const std::size_t out_len = x.size() + y.size() - 1;
  const std::size_t n = std::bit_ceil(out_len);

  // Pack x into the real lane and y into the imaginary lane.
  std::vector<std::complex<double>> a(n);
  for (std::size_t i = 0; i < x.size(); ++i) a[i] += std::complex<double>(x[i], 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) a[i] += std::complex<double>(0.0, y[i]);
  fft_detail::fft_pow2(a, false);

  // With A = X + iY (X, Y Hermitian spectra of the real inputs):
  //   X_k * Y_k = (A_k^2 - conj(A_{n-k})^2) / (4i)
  std::vector<std::complex<double>> c(n);
  const std::size_t mask = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> ak = a[k];
    const std::complex<double> bk = std::conj(a[(n - k) & mask]);
    c[k] = (ak * ak - bk * bk) * std::complex<double>(0.0, -0.25);
  }
  fft_detail::fft_pow2(c, true);

  std::vector<double> out(out_len);
  for (std::size_t k = 0; k < out_len; ++k) out[k] = c[k].real();
  return out;
}

}  // namespace necklace
