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

#include "persakit/synth_task.hpp"

#include <cmath>
#include <complex>

#include "persakit/degrade.hpp"
#include "persakit/fft.hpp"
#include "persakit/kernels.hpp"
#include "persakit/rng.hpp"

namespace persakit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPeakDbfs = -3.0;

std::vector<double> tonal_samples(std::size_t n, int sample_rate, Rng& rng) {
  const double f0 = rng.uniform(120.0, 400.0);
  // Random harmonic balance per clip keeps the class from collapsing to a
  // fixed spectral template.
  const double amps[3] = {1.0, rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)};
  double phases[3];
  for (double& p : phases) p = rng.uniform(0.0, 2.0 * kPi);

  std::vector<double> x(n, 0.0);
  for (int h = 0; h < 3; ++h) {
    const double w = 2.0 * kPi * f0 * (h + 1) / sample_rate;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += amps[h] * std::sin(w * static_cast<double>(i) + phases[h]);
    }
  }
  return x;
}

std::vector<double> noiselike_samples(std::size_t n, int sample_rate,
                                      Rng& rng) {
  const double center_hz = rng.uniform(500.0, 4000.0);
  const std::size_t n_fft = next_pow2(n);

  std::vector<std::complex<double>> spec(n_fft);
  for (auto& v : spec) v = {rng.gaussian(), 0.0};
  fft_pow2(spec, false);

  // Pink slope times a Gaussian band around the center; the bandwidth
  // varies per clip from narrow to near-broadband.
  const double bin_hz = static_cast<double>(sample_rate) / n_fft;
  const double sigma_oct = rng.uniform(0.2, 1.2);
  spec[0] = 0.0;
  for (std::size_t k = 1; k <= n_fft / 2; ++k) {
    const double f = k * bin_hz;
    const double oct = std::log2(f / center_hz);
    const double g = std::exp(-0.5 * (oct / sigma_oct) * (oct / sigma_oct)) /
                     std::sqrt(f);
    spec[k] *= g;
    if (k != n_fft / 2) spec[n_fft - k] *= g;
  }
  fft_pow2(spec, true);

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = spec[i].real();
  return x;
}

std::vector<double> modulated_samples(std::size_t n, int sample_rate,
                                      Rng& rng) {
  const double rate_hz = rng.uniform(4.0, 16.0);
  const double phase = rng.uniform(0.0, 2.0 * kPi);
  const double depth = 0.8;

  std::vector<double> x(n);
  const double w = 2.0 * kPi * rate_hz / sample_rate;
  for (std::size_t i = 0; i < n; ++i) {
    const double envelope = 1.0 + depth * std::sin(w * static_cast<double>(i) + phase);
    x[i] = envelope * rng.gaussian();
  }
  return x;
}

}  // namespace

const char* synth_class_name(SynthClass c) {
  switch (c) {
    case SynthClass::tonal: return "tonal";
    case SynthClass::noiselike: return "noiselike";
    case SynthClass::modulated: return "modulated";
  }
  return "unknown";
}

std::vector<LabeledClip> synth_dataset(const SynthTaskSpec& spec) {
  if (spec.n_per_class < 10) throw Error("synth_dataset: n_per_class must be >= 10");
  const std::size_t n = static_cast<std::size_t>(
      static_cast<std::int64_t>(spec.sample_rate_hz) * spec.duration_ms / 1000);

  std::vector<LabeledClip> out;
  out.reserve(static_cast<std::size_t>(spec.n_per_class) * kSynthClassCount);
  for (int cls = 0; cls < kSynthClassCount; ++cls) {
    for (int i = 0; i < spec.n_per_class; ++i) {
      Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(cls),
                          static_cast<std::uint64_t>(i)));
      std::vector<double> samples;
      switch (static_cast<SynthClass>(cls)) {
        case SynthClass::tonal:
          samples = tonal_samples(n, spec.sample_rate_hz, rng);
          break;
        case SynthClass::noiselike:
          samples = noiselike_samples(n, spec.sample_rate_hz, rng);
          break;
        case SynthClass::modulated:
          samples = modulated_samples(n, spec.sample_rate_hz, rng);
          break;
      }
      Waveform w;
      w.sample_rate_hz = spec.sample_rate_hz;
      w.samples = std::move(samples);
      LabeledClip clip;
      clip.audio = peak_normalize_dbfs(w, kPeakDbfs);
      clip.label = cls;
      out.push_back(std::move(clip));
    }
  }
  return out;
}

}  // namespace persakit
