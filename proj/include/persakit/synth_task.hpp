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

#include <cstdint>
#include <string>
#include <vector>

#include "persakit/types.hpp"

// A desk-scale 3-class task whose class evidence is spectral, so it
// survives the normalizers under comparison:
//
//   tonal      three harmonics of f0 ~ U(120, 400) Hz, random phases
//   noiselike  pink noise band-passed around a random center in
//              (500, 4000) Hz (half-octave Gaussian band)
//   modulated  white noise amplitude-modulated at 4..16 Hz, depth 0.8
//
// Every clip is peak-normalized to -3 dBFS and fully determined by
// (seed, class, index).

namespace persakit {

enum class SynthClass { tonal = 0, noiselike = 1, modulated = 2 };

inline constexpr int kSynthClassCount = 3;

const char* synth_class_name(SynthClass c);

struct SynthTaskSpec {
  int n_per_class = 64;
  std::uint64_t seed = 0;
  int duration_ms = 1000;
  int sample_rate_hz = 16000;
};

struct LabeledClip {
  Waveform audio;
  int label = 0;
};

std::vector<LabeledClip> synth_dataset(const SynthTaskSpec& spec);

}  // namespace persakit
