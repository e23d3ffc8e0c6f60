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

// Test-only reference computations: a naive DFT for small sizes, a
// periodogram slope fit, spectral flatness, and random-input helpers. The
// long-signal helpers build their periodograms with persakit::fft, which is
// itself checked against the naive DFT in test_fft; the quantity under test
// (spectral shape) is computed here from scratch.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "persakit/fft.hpp"
#include "persakit/rng.hpp"
#include "persakit/types.hpp"

namespace oracles {

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * 3.14159265358979323846 *
                         static_cast<double>(k * j % n) / static_cast<double>(n);
      out[k] += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    if (inverse) out[k] /= static_cast<double>(n);
  }
  return out;
}

inline std::vector<double> periodogram(const std::vector<double>& x) {
  std::vector<std::complex<double>> spec(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) spec[i] = {x[i], 0.0};
  spec = persakit::fft(std::move(spec), false);
  std::vector<double> p(x.size() / 2 + 1);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(spec[k]);
  return p;
}

/// Least-squares slope of 10*log10(PSD) against log10(f), in dB per decade,
/// fitted over [f_lo, f_hi]. The periodogram is averaged in log-spaced bands
/// before fitting to tame the chi-square scatter of raw bins.
inline double psd_slope_db_per_decade(const std::vector<double>& x,
                                      int sample_rate_hz, double f_lo,
                                      double f_hi) {
  const std::vector<double> p = periodogram(x);
  const double bin_hz = static_cast<double>(sample_rate_hz) / x.size();

  const int bands_per_decade = 24;
  std::vector<double> log_f, log_p;
  double lo = f_lo;
  while (lo < f_hi) {
    const double hi = std::min(lo * std::pow(10.0, 1.0 / bands_per_decade), f_hi);
    const std::size_t k0 = static_cast<std::size_t>(std::ceil(lo / bin_hz));
    const std::size_t k1 = static_cast<std::size_t>(std::floor(hi / bin_hz));
    if (k1 >= k0 && k1 < p.size()) {
      double acc = 0.0;
      for (std::size_t k = k0; k <= k1; ++k) acc += p[k];
      acc /= static_cast<double>(k1 - k0 + 1);
      log_f.push_back(std::log10(std::sqrt(lo * hi)));
      log_p.push_back(10.0 * std::log10(acc));
    }
    lo = hi;
  }

  const std::size_t m = log_f.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += log_f[i];
    sy += log_p[i];
    sxx += log_f[i] * log_f[i];
    sxy += log_f[i] * log_p[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Geometric over arithmetic mean of the power spectrum (excluding DC).
inline double spectral_flatness(const std::vector<double>& x) {
  const std::vector<double> p = periodogram(x);
  double log_acc = 0.0, acc = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    const double v = p[k] + 1e-30;
    log_acc += std::log(v);
    acc += v;
  }
  const double count = static_cast<double>(p.size() - 1);
  return std::exp(log_acc / count) / (acc / count);
}

/// Random TFSample with values uniform in [lo, hi).
inline persakit::TFSample random_tf(int rows, int cols, std::uint64_t seed,
                                    double lo = 0.0, double hi = 1.0) {
  persakit::Rng rng(seed);
  persakit::TFSample s(rows, cols);
  for (auto& v : s.values) v = rng.uniform(lo, hi);
  return s;
}

}  // namespace oracles
