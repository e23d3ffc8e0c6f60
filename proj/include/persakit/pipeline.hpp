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

#include <vector>

#include "persakit/mel.hpp"
#include "persakit/types.hpp"

namespace persakit {

/// Periodic Hann window of the given length.
std::vector<double> hann_window(int len);

/// Cuts w into consecutive non-overlapping slices of cfg.slice_ms each.
/// A trailing remainder shorter than one slice is discarded; a waveform
/// shorter than one slice yields an empty list.
std::vector<Waveform> slice_samples(const Waveform& w,
                                    const PipelineConfig& cfg);

/// Magnitude mel spectrogram: Hann-windowed hops, per-frame |FFT|^2, mel
/// projection, then sqrt. Output values are magnitudes so squaring them
/// recovers mel power.
TFSample mel_magnitude(const Waveform& w, const PipelineConfig& cfg,
                       const MelFilterbank& fb);

}  // namespace persakit
