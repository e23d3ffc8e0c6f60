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

#include "persakit/pipeline.hpp"
#include "persakit/types.hpp"

namespace persakit {

enum class NoiseKind { white, pink };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::pink;
  int duration_ms = 1000;
  std::uint64_t seed = 0;
};

/// Seeded noise, normalized to RMS 0.1 exactly.
///
/// white: i.i.d. standard Gaussians, rescaled.
/// pink:  frequency-domain shaping of white Gaussian noise with amplitude
///        proportional to 1/sqrt(f) above 20 Hz (flat below), inverse
///        transform, rescaled. Synthesis runs at the next power-of-two
///        length and truncates, which leaves the spectral slope intact.
Waveform synth_noise(const NoiseSpec& spec, int sample_rate_hz);

/// synth_noise composed with mel_magnitude; spec duration must equal
/// cfg.slice_ms.
TFSample noise_tf(const NoiseSpec& spec, const PipelineConfig& cfg,
                  const MelFilterbank& fb);

}  // namespace persakit
