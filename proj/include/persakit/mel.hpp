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

#include <cmath>
#include <vector>

#include "persakit/types.hpp"

namespace persakit {

inline double hz_to_mel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}
inline double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

/// Triangular mel filterbank over the one-sided FFT bins. Centers are
/// equally spaced on the mel scale between 0 Hz and Nyquist; each row is
/// peak-normalized so its largest weight is exactly 1. Rows are stored
/// dense but with a [begin, end) support so projection touches only the
/// nonzero span.
struct MelFilterbank {
  int bands = 0;         // M
  int bins = 0;          // K = fft_len/2 + 1
  std::vector<double> weights;      // bands * bins, row-major
  std::vector<int> row_begin;       // first nonzero bin per row
  std::vector<int> row_end;         // one past last nonzero bin per row
  std::vector<double> center_hz;

  const double* row(int m) const { return weights.data() + static_cast<std::size_t>(m) * bins; }
};

MelFilterbank make_mel_filterbank(const PipelineConfig& cfg);

}  // namespace persakit
