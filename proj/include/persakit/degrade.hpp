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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "persakit/types.hpp"

// Dataset degradation protocols. The "gain" build draws one peak level per
// (fold, class) pair and renormalizes every item of that pair; the "mix"
// build contaminates each item with an interference clip chosen by a
// fold -> class -> interference map, at an SNR drawn from a clamped
// Gaussian. Every draw is seeded and logged in the output manifest, so a
// degraded set can be rebuilt bit-exactly.

namespace persakit {

struct ManifestItem {
  std::string path;
  std::string label;
  int fold = 0;
  nlohmann::json ops = nlohmann::json::array();
};

struct Manifest {
  std::vector<ManifestItem> items;
};

/// Line-delimited JSON, one item per line.
Manifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const Manifest& m);

struct DegradationPlan {
  std::vector<double> gain_levels_dbfs = {0.0, -10.0, -20.0, -30.0};
  double snr_mean_db = 9.0;
  double snr_std_db = 3.0;
  int folds = 3;
  // contamination[fold][class] = interference class
  std::vector<std::map<std::string, std::string>> contamination;
  std::uint64_t seed = 0;

  /// The three-fold Speech/Music/Other rotation (machinery enters as a
  /// fourth interference-only pool).
  static DegradationPlan defaults();
  void validate() const;
};

DegradationPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const DegradationPlan& plan);

/// Rescales so the peak magnitude lands at 10^(level/20). level must be
/// <= 0 dBFS; silent input is an error.
Waveform peak_normalize_dbfs(const Waveform& w, double level_dbfs);

/// signal + g * interference with g chosen so the scaled interference sits
/// exactly snr_db below the signal (mean-square powers). The interference
/// is looped or truncated to the signal length first; snr_db = +infinity
/// returns the signal unchanged.
Waveform mix_at_snr(const Waveform& signal, const Waveform& interference,
                    double snr_db);

/// Random-gain protocol: one seeded draw from plan.gain_levels_dbfs per
/// (fold, class); all items of the pair are peak-normalized to it. Degraded
/// audio is written under out_dir and the returned manifest logs the draw.
Manifest build_v3(const Manifest& input, const DegradationPlan& plan,
                  const std::string& out_dir);

/// Interference pools: class name -> list of audio paths.
using InterferencePools = std::map<std::string, std::vector<std::string>>;

/// Reads every .wav path under each pool directory (sorted, recursive).
InterferencePools load_pools(
    const std::map<std::string, std::string>& pool_dirs);

/// Additive-interference protocol: each item is mixed with a seeded pick
/// from the pool named by contamination[fold][label], at SNR drawn from
/// Normal(snr_mean, snr_std) clamped to +/- 3 sigma. Draws, picks and the
/// measured SNR are logged per item.
Manifest build_v4(const Manifest& input, const DegradationPlan& plan,
                  const InterferencePools& pools, const std::string& out_dir);

struct EvalSplit {
  std::vector<ManifestItem> train;
  std::vector<ManifestItem> test;
};

/// Train on train_src minus test_fold, test on test_src restricted to
/// test_fold. Fold structures must match; the split shares no source
/// recordings.
EvalSplit assemble_eval(const Manifest& train_src, const Manifest& test_src,
                        int test_fold);

}  // namespace persakit
