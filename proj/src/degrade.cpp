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

#include "persakit/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "persakit/digest.hpp"
#include "persakit/kernels.hpp"
#include "persakit/rng.hpp"
#include "persakit/wav.hpp"

namespace fs = std::filesystem;

namespace persakit {

namespace {

constexpr std::uint64_t kStreamGainDraw = 0x763367ULL;
constexpr std::uint64_t kStreamMix = 0x763478ULL;

ManifestItem item_from_json(const nlohmann::json& j) {
  ManifestItem it;
  it.path = j.at("path");
  it.label = j.at("label");
  it.fold = j.at("fold");
  if (j.contains("ops")) it.ops = j.at("ops");
  return it;
}

nlohmann::json item_to_json(const ManifestItem& it) {
  return {{"path", it.path}, {"label", it.label}, {"fold", it.fold},
          {"ops", it.ops}};
}

std::string item_source(const ManifestItem& it) {
  // The original recording an item derives from: first op that recorded a
  // source, else the item's own path.
  for (const auto& op : it.ops) {
    if (op.contains("source")) return op.at("source");
  }
  return it.path;
}

void check_plan_input(const Manifest& input, const DegradationPlan& plan) {
  if (input.items.empty()) throw Error("degrade: input manifest is empty");
  for (const auto& it : input.items) {
    if (it.label.empty()) throw Error("degrade: item missing class label: " + it.path);
    if (it.fold < 0 || it.fold >= plan.folds) {
      throw Error("degrade: fold " + std::to_string(it.fold) +
                  " outside plan's " + std::to_string(plan.folds) + " folds");
    }
  }
}

std::string degraded_path(const std::string& out_dir, const ManifestItem& it) {
  const fs::path dir = fs::path(out_dir) /
                       ("fold" + std::to_string(it.fold)) / it.label;
  fs::create_directories(dir);
  return (dir / fs::path(it.path).filename()).string();
}

}  // namespace

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path);
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    m.items.push_back(item_from_json(nlohmann::json::parse(line)));
  }
  return m;
}

void save_manifest(const std::string& path, const Manifest& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write manifest: " + path);
  for (const auto& it : m.items) {
    out << item_to_json(it).dump() << "\n";
  }
}

DegradationPlan DegradationPlan::defaults() {
  DegradationPlan plan;
  plan.contamination = {
      {{"Music", "Speech"}, {"Speech", "Music"}, {"Other", "machinery"}},
      {{"Music", "Other"}, {"Speech", "machinery"}, {"Other", "Music"}},
      {{"Music", "machinery"}, {"Speech", "Other"}, {"Other", "Music"}},
  };
  return plan;
}

void DegradationPlan::validate() const {
  if (gain_levels_dbfs.empty()) throw Error("plan: no gain levels");
  for (double g : gain_levels_dbfs) {
    if (g > 0.0) throw Error("plan: gain levels must be <= 0 dBFS");
  }
  if (snr_std_db < 0.0) throw Error("plan: snr std must be >= 0");
  if (folds < 2) throw Error("plan: need at least 2 folds");
  if (static_cast<int>(contamination.size()) != folds) {
    throw Error("plan: contamination map must cover every fold");
  }
  for (const auto& per_fold : contamination) {
    if (per_fold.empty()) throw Error("plan: empty contamination entry");
  }
}

DegradationPlan plan_from_json(const nlohmann::json& j) {
  DegradationPlan plan = DegradationPlan::defaults();
  if (j.contains("gain_levels_dbfs"))
    plan.gain_levels_dbfs = j.at("gain_levels_dbfs").get<std::vector<double>>();
  if (j.contains("snr_mean_db")) plan.snr_mean_db = j.at("snr_mean_db");
  if (j.contains("snr_std_db")) plan.snr_std_db = j.at("snr_std_db");
  if (j.contains("folds")) plan.folds = j.at("folds");
  if (j.contains("seed")) plan.seed = j.at("seed");
  if (j.contains("contamination")) {
    plan.contamination.clear();
    for (const auto& per_fold : j.at("contamination")) {
      plan.contamination.push_back(
          per_fold.get<std::map<std::string, std::string>>());
    }
  }
  return plan;
}

nlohmann::json plan_to_json(const DegradationPlan& plan) {
  return {{"gain_levels_dbfs", plan.gain_levels_dbfs},
          {"snr_mean_db", plan.snr_mean_db},
          {"snr_std_db", plan.snr_std_db},
          {"folds", plan.folds},
          {"contamination", plan.contamination},
          {"seed", plan.seed}};
}

Waveform peak_normalize_dbfs(const Waveform& w, double level_dbfs) {
  if (level_dbfs > 0.0) throw Error("peak_normalize: level must be <= 0 dBFS");
  const double peak = kernels::peak_abs(w.samples.data(), w.samples.size());
  if (peak <= 0.0) throw Error("peak_normalize: silent input");
  Waveform out = w;
  kernels::scale(out.samples.data(), out.samples.size(),
                 std::pow(10.0, level_dbfs / 20.0) / peak);
  return out;
}

Waveform mix_at_snr(const Waveform& signal, const Waveform& interference,
                    double snr_db) {
  if (signal.sample_rate_hz != interference.sample_rate_hz) {
    throw Error("mix_at_snr: sample-rate mismatch");
  }
  if (std::isinf(snr_db) && snr_db > 0.0) return signal;

  const std::size_t n = signal.samples.size();
  if (n == 0 || interference.samples.empty()) {
    throw Error("mix_at_snr: empty input");
  }

  // Loop or truncate the interference to the signal length; powers are
  // measured on the looped version so the realized SNR is exact.
  std::vector<double> looped(n);
  for (std::size_t i = 0; i < n; ++i) {
    looped[i] = interference.samples[i % interference.samples.size()];
  }

  const double p_sig = kernels::mean_sq(signal.samples.data(), n);
  const double p_int = kernels::mean_sq(looped.data(), n);
  if (p_sig <= 0.0) throw Error("mix_at_snr: silent signal");
  if (p_int <= 0.0) throw Error("mix_at_snr: silent interference");

  const double g = std::sqrt(p_sig / (p_int * std::pow(10.0, snr_db / 10.0)));
  Waveform out = signal;
  kernels::mix_accum(out.samples.data(), looped.data(), g, n);
  return out;
}

Manifest build_v3(const Manifest& input, const DegradationPlan& plan,
                  const std::string& out_dir) {
  plan.validate();
  check_plan_input(input, plan);

  // One seeded draw per (fold, class); keyed by content, not item order.
  std::map<std::pair<int, std::string>, double> gain_of;
  for (const auto& it : input.items) {
    const auto key = std::make_pair(it.fold, it.label);
    if (gain_of.count(key)) continue;
    Rng rng(derive_seed(plan.seed, kStreamGainDraw,
                        derive_seed(static_cast<std::uint64_t>(it.fold),
                                    fnv1a64(it.label.data(), it.label.size()))));
    gain_of[key] =
        plan.gain_levels_dbfs[rng.below(plan.gain_levels_dbfs.size())];
  }

  Manifest out;
  for (const auto& it : input.items) {
    const double level = gain_of.at({it.fold, it.label});
    const Waveform w = load_wav(it.path);
    const Waveform normalized = peak_normalize_dbfs(w, level);

    ManifestItem copy = it;
    copy.path = degraded_path(out_dir, it);
    copy.ops.push_back({{"op", "gain"},
                        {"level_dbfs", level},
                        {"source", item_source(it)},
                        {"seed", plan.seed}});
    save_wav(copy.path, normalized);
    out.items.push_back(std::move(copy));
  }
  return out;
}

InterferencePools load_pools(
    const std::map<std::string, std::string>& pool_dirs) {
  InterferencePools pools;
  for (const auto& [cls, dir] : pool_dirs) {
    std::vector<std::string>& list = pools[cls];
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wav") {
          list.push_back(entry.path().string());
        }
      }
    }
    std::sort(list.begin(), list.end());
  }
  return pools;
}

Manifest build_v4(const Manifest& input, const DegradationPlan& plan,
                  const InterferencePools& pools, const std::string& out_dir) {
  plan.validate();
  check_plan_input(input, plan);

  Manifest out;
  for (std::size_t idx = 0; idx < input.items.size(); ++idx) {
    const ManifestItem& it = input.items[idx];
    const auto& per_fold = plan.contamination[it.fold];
    const auto cls_it = per_fold.find(it.label);
    if (cls_it == per_fold.end()) {
      throw Error("build_v4: no contamination entry for class '" + it.label +
                  "' in fold " + std::to_string(it.fold));
    }
    const std::string& interference_class = cls_it->second;
    const auto pool_it = pools.find(interference_class);
    if (pool_it == pools.end() || pool_it->second.empty()) {
      throw Error("build_v4: empty interference pool for class '" +
                  interference_class + "'");
    }

    Rng rng(derive_seed(plan.seed, kStreamMix, idx));
    const std::string& pick =
        pool_it->second[rng.below(pool_it->second.size())];
    double snr = plan.snr_mean_db + plan.snr_std_db * rng.gaussian();
    snr = std::clamp(snr, plan.snr_mean_db - 3.0 * plan.snr_std_db,
                     plan.snr_mean_db + 3.0 * plan.snr_std_db);

    const Waveform signal = load_wav(it.path);
    const Waveform interference = load_wav(pick);
    const Waveform mixed = mix_at_snr(signal, interference, snr);

    ManifestItem copy = it;
    copy.path = degraded_path(out_dir, it);
    copy.ops.push_back({{"op", "mix"},
                        {"interference", pick},
                        {"interference_class", interference_class},
                        {"snr_db", snr},
                        {"source", item_source(it)},
                        {"seed", plan.seed}});
    save_wav(copy.path, mixed);
    out.items.push_back(std::move(copy));
  }
  return out;
}

EvalSplit assemble_eval(const Manifest& train_src, const Manifest& test_src,
                        int test_fold) {
  std::set<int> train_folds, test_folds;
  for (const auto& it : train_src.items) train_folds.insert(it.fold);
  for (const auto& it : test_src.items) test_folds.insert(it.fold);
  if (train_folds != test_folds) {
    throw Error("assemble_eval: fold structures do not match");
  }
  if (!train_folds.count(test_fold)) {
    throw Error("assemble_eval: test fold " + std::to_string(test_fold) +
                " not present");
  }

  EvalSplit split;
  for (const auto& it : train_src.items) {
    if (it.fold != test_fold) split.train.push_back(it);
  }
  for (const auto& it : test_src.items) {
    if (it.fold == test_fold) split.test.push_back(it);
  }

  std::set<std::string> train_sources;
  for (const auto& it : split.train) train_sources.insert(item_source(it));
  for (const auto& it : split.test) {
    if (train_sources.count(item_source(it))) {
      throw Error("assemble_eval: train and test share source " +
                  item_source(it));
    }
  }
  return split;
}

}  // namespace persakit
