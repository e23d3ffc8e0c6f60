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

#include "persakit/noise.hpp"

#include <cmath>
#include <complex>

#include "persakit/fft.hpp"
#include "persakit/kernels.hpp"
#include "persakit/rng.hpp"

namespace persakit {

namespace {

constexpr double kTargetRms = 0.1;
constexpr double kPinkCornerHz = 20.0;

void normalize_rms(std::vector<double>& x) {
  const double ms = kernels::mean_sq(x.data(), x.size());
  if (ms <= 0.0) return;
  kernels::scale(x.data(), x.size(), kTargetRms / std::sqrt(ms));
}

std::vector<double> white_samples(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.gaussian();
  return x;
}

std::vector<double> pink_samples(std::size_t n, std::uint64_t seed,
                                 int sample_rate_hz) {
  const std::size_t n_fft = next_pow2(n);
  std::vector<double> white = white_samples(n_fft, seed);
  std::vector<std::complex<double>> spec(n_fft);
  for (std::size_t i = 0; i < n_fft; ++i) spec[i] = {white[i], 0.0};
  fft_pow2(spec, false);

  // 1/sqrt(f) amplitude above the corner, flat below; DC follows the
  // corner gain. Conjugate symmetry is preserved by shaping positive and
  // negative frequencies identically.
  const double bin_hz = static_cast<double>(sample_rate_hz) / n_fft;
  const double corner_gain = 1.0 / std::sqrt(kPinkCornerHz);
  spec[0] *= corner_gain;
  for (std::size_t k = 1; k <= n_fft / 2; ++k) {
    const double f = k * bin_hz;
    const double g = f <= kPinkCornerHz ? corner_gain : 1.0 / std::sqrt(f);
    spec[k] *= g;
    if (k != n_fft / 2) spec[n_fft - k] *= g;
  }
  fft_pow2(spec, true);

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = spec[i].real();
  return x;
}

}  // namespace

Waveform synth_noise(const NoiseSpec& spec, int sample_rate_hz) {
  if (spec.duration_ms <= 0) throw Error("noise duration must be positive");
  if (sample_rate_hz <= 0) throw Error("noise sample rate must be positive");
  const std::size_t n = static_cast<std::size_t>(
      static_cast<std::int64_t>(sample_rate_hz) * spec.duration_ms / 1000);

  Waveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.samples = spec.kind == NoiseKind::white
                  ? white_samples(n, spec.seed)
                  : pink_samples(n, spec.seed, sample_rate_hz);
  normalize_rms(w.samples);
  return w;
}

TFSample noise_tf(const NoiseSpec& spec, const PipelineConfig& cfg,
                  const MelFilterbank& fb) {
  if (spec.duration_ms != cfg.slice_ms) {
    throw Error("noise_tf: spec duration must equal the pipeline slice");
  }
  return mel_magnitude(synth_noise(spec, cfg.sample_rate_hz), cfg, fb);
}

}  // namespace persakit
