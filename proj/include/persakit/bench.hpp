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

#include <json.hpp>

#include "persakit/frontends.hpp"
#include "persakit/synth_task.hpp"
#include "persakit/types.hpp"

// The desk-scale robustness harness. Probes are always trained on clean
// synthetic clips (plus whatever augmentation the front-end itself applies)
// and tested under a perturbation scenario:
//
//   clean   no perturbation
//   gain    per-clip peak level drawn from {0, -10, -20, -30} dBFS
//   noisy   cross-class interference mixed at SNR ~ Normal(9, 3), clamped
//           to +/- 3 sigma
//   mixed   union of the clean and noisy test sets
//
// The sweep grid trains a PERSA+ probe per q and tests under pink-noise
// contamination per SNR; one pink realization per (repeat, clip) is shared
// across the grid so cells differ only in the quantity under study.

namespace persakit {

enum class Scenario { clean, gain, noisy, mixed };

const char* scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

struct BenchOptions {
  FrontEndConfig frontend;
  Scenario scenario = Scenario::clean;
  int repeats = 3;
  std::uint64_t seed = 42;
  int n_per_class = 64;
  PipelineConfig pipeline;
};

struct BenchResult {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over repeats
  std::vector<double> runs;
};

BenchResult run_benchmark(const BenchOptions& opts);

struct SweepOptions {
  std::vector<double> q_list = {3.0, 6.0, 9.0, 12.0, 15.0,
                                std::numeric_limits<double>::infinity()};
  std::vector<double> snr_list = {std::numeric_limits<double>::infinity(),
                                  15.0, 12.0, 9.0, 6.0, 3.0};
  std::vector<double> c_list = {12.0, 18.0, 24.0, 30.0, 36.0, 48.0};
  int repeats = 3;
  std::uint64_t seed = 42;
  int n_per_class = 64;
  PipelineConfig pipeline;
};

struct SweepReport {
  SweepOptions options;
  // accuracy[i][j] for q_list[i] x snr_list[j], in [0, 1]
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> stddev;
  // LOG-T accuracy against c on the gain scenario
  std::vector<double> c_mean;
  std::vector<double> c_stddev;
};

SweepReport run_sweep(const SweepOptions& opts);

nlohmann::json bench_report_json(const BenchOptions& opts,
                                 const BenchResult& result);
nlohmann::json sweep_report_json(const SweepReport& report);

/// Aligned plain-text table, rows q and columns SNR, "mean +/- std" cells in
/// percent. Cells within 1 point of their column's best are starred.
std::string sweep_report_table(const SweepReport& report);

}  // namespace persakit
