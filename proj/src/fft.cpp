// Copyright 2025 The persakit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "persakit/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace persakit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) {
    throw std::invalid_argument("fft_pow2: size must be a power of two");
  }
  if (n <= 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv_n;
  }
}

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a,
                                      bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return a;
  if (is_pow2(n)) {
    fft_pow2(a, inverse);
    return a;
  }

  // Bluestein: X[k] = conj(w[k]) * IFFT(FFT(a*conj(w)) .* FFT(w-chirp)),
  // with w[j] = exp(+/- i*pi*j^2/n) and the convolution done at a padded
  // power-of-two size m >= 2n-1.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the chirp argument small for large sizes.
    const std::size_t j2 = (j * j) % (2 * n);
    const double ang = sign * kPi * static_cast<double>(j2) /
                       static_cast<double>(n);
    w[j] = {std::cos(ang), std::sin(ang)};
  }

  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<std::complex<double>> fa(m), fb(m);
  for (std::size_t j = 0; j < n; ++j) fa[j] = a[j] * w[j];
  fb[0] = std::conj(w[0]);
  for (std::size_t j = 1; j < n; ++j) {
    fb[j] = fb[m - j] = std::conj(w[j]);
  }
  fft_pow2(fa, false);
  fft_pow2(fb, false);
  for (std::size_t j = 0; j < m; ++j) fa[j] *= fb[j];
  fft_pow2(fa, true);

  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = fa[j] * w[j];
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : out) x *= inv_n;
  }
  return out;
}

std::vector<double> power_spectrum(const double* frame, std::size_t n,
                                   std::size_t fft_len) {
  if (!is_pow2(fft_len)) {
    throw std::invalid_argument("power_spectrum: fft_len must be a power of two");
  }
  std::vector<std::complex<double>> buf(fft_len, {0.0, 0.0});
  const std::size_t copy = n < fft_len ? n : fft_len;
  for (std::size_t i = 0; i < copy; ++i) buf[i] = {frame[i], 0.0};
  fft_pow2(buf, false);

  std::vector<double> power(fft_len / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) {
    power[k] = std::norm(buf[k]);
  }
  return power;
}

}  // namespace persakit
