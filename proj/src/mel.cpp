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

#include "persakit/mel.hpp"

#include <algorithm>
#include <cmath>

namespace persakit {

MelFilterbank make_mel_filterbank(const PipelineConfig& cfg) {
  cfg.validate();
  const int m_bands = cfg.mel_bands;
  const int k_bins = cfg.fft_len / 2 + 1;
  const double nyquist = cfg.sample_rate_hz / 2.0;

  // M+2 equally spaced mel points; edges at 0 and Nyquist.
  const double mel_hi = hz_to_mel(nyquist);
  std::vector<double> edge_hz(m_bands + 2);
  for (int i = 0; i < m_bands + 2; ++i) {
    edge_hz[i] = mel_to_hz(mel_hi * i / (m_bands + 1));
  }

  MelFilterbank fb;
  fb.bands = m_bands;
  fb.bins = k_bins;
  fb.weights.assign(static_cast<std::size_t>(m_bands) * k_bins, 0.0);
  fb.row_begin.assign(m_bands, 0);
  fb.row_end.assign(m_bands, 0);
  fb.center_hz.assign(edge_hz.begin() + 1, edge_hz.end() - 1);

  const double bin_hz = static_cast<double>(cfg.sample_rate_hz) / cfg.fft_len;
  for (int m = 0; m < m_bands; ++m) {
    const double lo = edge_hz[m], center = edge_hz[m + 1], hi = edge_hz[m + 2];
    double* row = fb.weights.data() + static_cast<std::size_t>(m) * k_bins;
    double peak = 0.0;
    int begin = k_bins, end = 0;
    for (int k = 0; k < k_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > lo && f < hi) {
        w = f <= center ? (f - lo) / (center - lo) : (hi - f) / (hi - center);
      }
      if (w > 0.0) {
        row[k] = w;
        begin = std::min(begin, k);
        end = k + 1;
        peak = std::max(peak, w);
      }
    }
    if (end <= begin) {
      // Triangle narrower than one bin: pin unit weight at the nearest bin
      // so every band stays live.
      int k = static_cast<int>(std::lround(center / bin_hz));
      k = std::clamp(k, 0, k_bins - 1);
      row[k] = 1.0;
      begin = k;
      end = k + 1;
      peak = 1.0;
    }
    if (peak != 1.0) {
      for (int k = begin; k < end; ++k) row[k] /= peak;
    }
    fb.row_begin[m] = begin;
    fb.row_end[m] = end;
  }
  return fb;
}

}  // namespace persakit
