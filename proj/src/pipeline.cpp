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

#include "persakit/pipeline.hpp"

#include <cmath>
#include <string>

#include "persakit/fft.hpp"
#include "persakit/kernels.hpp"

namespace persakit {

void PipelineConfig::validate() const {
  if (sample_rate_hz <= 0) throw Error("pipeline: sample_rate must be positive");
  if (hop_len <= 0 || window_len <= 0 || fft_len <= 0)
    throw Error("pipeline: framing lengths must be positive");
  if (!(hop_len <= window_len && window_len <= fft_len))
    throw Error("pipeline: need hop_len <= window_len <= fft_len");
  if (!is_pow2(static_cast<std::size_t>(fft_len)))
    throw Error("pipeline: fft_len must be a power of two");
  if (slice_ms < 500 || slice_ms > 5000)
    throw Error("pipeline: slice_ms must be in [500, 5000]");
  if (mel_bands < 2) throw Error("pipeline: mel_bands must be >= 2");
}

std::vector<double> hann_window(int len) {
  std::vector<double> w(len);
  for (int i = 0; i < len; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * 3.14159265358979323846 * i / len);
  }
  return w;
}

std::vector<Waveform> slice_samples(const Waveform& w,
                                    const PipelineConfig& cfg) {
  cfg.validate();
  if (w.sample_rate_hz != cfg.sample_rate_hz) {
    throw Error("sample-rate mismatch: waveform is " +
                std::to_string(w.sample_rate_hz) + " Hz, pipeline expects " +
                std::to_string(cfg.sample_rate_hz) + " Hz (no resampling)");
  }
  const std::size_t slice_len = static_cast<std::size_t>(cfg.slice_samples());
  std::vector<Waveform> out;
  for (std::size_t pos = 0; pos + slice_len <= w.samples.size();
       pos += slice_len) {
    Waveform s;
    s.sample_rate_hz = w.sample_rate_hz;
    s.samples.assign(w.samples.begin() + pos,
                     w.samples.begin() + pos + slice_len);
    out.push_back(std::move(s));
  }
  return out;
}

TFSample mel_magnitude(const Waveform& w, const PipelineConfig& cfg,
                       const MelFilterbank& fb) {
  cfg.validate();
  if (w.sample_rate_hz != cfg.sample_rate_hz) {
    throw Error("sample-rate mismatch: waveform is " +
                std::to_string(w.sample_rate_hz) + " Hz, pipeline expects " +
                std::to_string(cfg.sample_rate_hz) + " Hz (no resampling)");
  }
  if (fb.bands != cfg.mel_bands || fb.bins != cfg.fft_len / 2 + 1) {
    throw Error("mel_magnitude: filterbank does not match pipeline config");
  }
  const int frames = cfg.frames_for(w.samples.size());
  if (frames < 1) {
    throw Error("mel_magnitude: waveform shorter than one analysis window");
  }

  const std::vector<double> window = hann_window(cfg.window_len);
  std::vector<double> frame(cfg.window_len);

  TFSample out(frames, cfg.mel_bands);
  for (int t = 0; t < frames; ++t) {
    const double* src = w.samples.data() + static_cast<std::size_t>(t) * cfg.hop_len;
    kernels::multiply(frame.data(), src, window.data(), frame.size());
    const std::vector<double> power =
        power_spectrum(frame.data(), frame.size(), cfg.fft_len);
    for (int m = 0; m < cfg.mel_bands; ++m) {
      const int begin = fb.row_begin[m];
      const int len = fb.row_end[m] - begin;
      const double mel_power =
          kernels::dot(fb.row(m) + begin, power.data() + begin, len);
      out.at(t, m) = std::sqrt(mel_power > 0.0 ? mel_power : 0.0);
    }
  }
  return out;
}

}  // namespace persakit
