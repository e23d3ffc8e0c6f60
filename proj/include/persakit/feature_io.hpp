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

#include "persakit/frontends.hpp"
#include "persakit/types.hpp"

// PSAF: a minimal binary tensor container for one normalized L x M sample.
//
//   bytes 0..3    magic "PSAF"
//   bytes 4..7    version, u32 little-endian (currently 1)
//   bytes 8..11   L, u32 little-endian
//   bytes 12..15  M, u32 little-endian
//   then          L*M IEEE-754 float32 little-endian values, time-major
//
// Every feature file gets a JSON sidecar at <path>.json carrying the
// pipeline and frontend configurations, seeds, applied gains, the source
// path and a digest of the source bytes - enough to reproduce the file.

namespace persakit {

inline constexpr std::uint32_t kFeatureFileVersion = 1;

struct FeatureFile {
  std::uint32_t rows = 0;  // L
  std::uint32_t cols = 0;  // M
  std::vector<float> values;  // rows*cols, time-major
};

FeatureFile to_feature(const NormalizedSample& s);

/// Serializes to the wire format above.
std::vector<std::uint8_t> encode_feature(const FeatureFile& f);
FeatureFile decode_feature(const std::vector<std::uint8_t>& bytes);

/// Atomic write: the bytes land in a temp file that is renamed into place.
void write_feature(const std::string& path, const FeatureFile& f);
FeatureFile read_feature(const std::string& path);

/// Sidecar metadata, stored as pretty JSON at <feature path>.json.
struct FeatureSidecar {
  PipelineConfig pipeline;
  FrontEndConfig frontend;
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
  double applied_gain_db = 0.0;
  std::string source_path;
  std::string source_digest;  // fnv1a64 of the source file bytes, hex
  std::string rng_scheme;
};

void write_sidecar(const std::string& feature_path, const FeatureSidecar& sc);
FeatureSidecar read_sidecar(const std::string& feature_path);

}  // namespace persakit
