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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace persakit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mono time-domain audio. Samples are full-scale floats (nominal [-1, 1],
/// not clipped).
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Analysis-frontend configuration: STFT framing, mel resolution, and the
/// fixed slice duration that defines one sample.
struct PipelineConfig {
  int sample_rate_hz = 16000;
  int window_len = 512;  // Hann window, periodic
  int hop_len = 256;
  int fft_len = 512;  // must be a power of two
  int mel_bands = 64;
  int slice_ms = 1000;  // duration of one analysis sample, 500..5000

  int slice_samples() const {
    return static_cast<int>(static_cast<std::int64_t>(sample_rate_hz) *
                            slice_ms / 1000);
  }
  /// Frames produced for n input samples: floor((n - window)/hop) + 1.
  int frames_for(std::size_t n_samples) const {
    if (n_samples < static_cast<std::size_t>(window_len)) return 0;
    return static_cast<int>((n_samples - window_len) / hop_len) + 1;
  }
  void validate() const;
};

/// One L x M nonnegative magnitude mel spectrogram slice (time-major).
struct TFSample {
  std::vector<double> values;  // rows*cols, row-major, rows = time frames
  int rows = 0;  // L
  int cols = 0;  // M

  TFSample() = default;
  TFSample(int l, int m) : values(static_cast<std::size_t>(l) * m, 0.0),
                           rows(l), cols(m) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return values.size(); }
  bool same_shape(const TFSample& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

}  // namespace persakit
