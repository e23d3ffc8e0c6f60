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

#include <string>

#include "persakit/types.hpp"

namespace persakit {

/// Reads a RIFF/WAVE file. Only 16-bit PCM mono is accepted; anything else
/// (float data, multichannel, compressed) raises a descriptive Error.
/// Samples are scaled by 1/32768 to full-scale floats.
Waveform load_wav(const std::string& path);

/// Writes 16-bit PCM mono. Samples are scaled by 32768, rounded to nearest
/// and clamped to the int16 range.
void save_wav(const std::string& path, const Waveform& w);

}  // namespace persakit
