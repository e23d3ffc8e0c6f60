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
#include <limits>
#include <string>

#include "persakit/noise.hpp"
#include "persakit/types.hpp"

// The six competing spectrogram normalizers.
//
//   LOG        log10(S + floor)
//   LOG-AU     LOG plus a random gain, uniform over [-30, 30] dB
//   LOG-T      per-sample max normalization, then log10(S' + 10^(-c/20));
//              c is the target dynamic range in dB
//   PERSA      LOG minus the sample's log-mean
//   PERSA+     noise injection at level q dB below sample power, then LOG,
//              then mean subtraction, then an optional +/-3 dB random gain
//   PCEN       per-channel energy normalization on S^2 with an IIR smoother
//
// Random gains are applied as additive constants in the log10-magnitude
// domain (g dB -> g/20), which is exactly equivalent to scaling the
// waveform.

namespace persakit {

enum class FrontEndKind { log, log_au, log_t, persa, persa_plus, pcen };

const char* frontend_name(FrontEndKind k);
FrontEndKind parse_frontend(const std::string& name);

struct PcenParams {
  double alpha = 0.98;
  double delta = 2.0;
  double r = 0.5;
  double time_constant_s = 0.4;
  double eps = 1e-6;
};

struct FrontEndConfig {
  FrontEndKind kind = FrontEndKind::persa_plus;
  double q_db = 9.0;  // noise injection level; +infinity disables injection
  double c_db = 30.0;  // LOG-T target dynamic range
  double au_lo_db = -30.0;  // LOG-AU gain range
  double au_hi_db = 30.0;
  double persa_plus_gain_db = 3.0;  // half-range of the PERSA+ random gain
  bool augment = true;  // enables the random gains
  double log_floor = 1e-5;  // magnitude epsilon, -100 dB re full scale
  NoiseKind noise_kind = NoiseKind::pink;
  PcenParams pcen;

  void validate() const;
  static double infinite_q() { return std::numeric_limits<double>::infinity(); }
};

/// Front-end output: an L x M real matrix plus a record of any random gain
/// that was applied (0 when none).
struct NormalizedSample {
  std::vector<double> values;
  int rows = 0;
  int cols = 0;
  FrontEndKind kind = FrontEndKind::log;
  double applied_gain_db = 0.0;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return values.size(); }
};

/// Eq.-style noise injection: S_n[i,j] = sqrt(S^2 + N^2 * p_s/(p_n*10^(q/10)))
/// with p_s, p_n the mean-square values over all bins. q = +infinity returns
/// S unchanged. A silent S (all zeros) is an error since p_s = 0 makes the
/// scaling degenerate.
TFSample inject_noise(const TFSample& s, const TFSample& noise, double q_db);

/// out = log10(S + log_floor), elementwise.
NormalizedSample log_compress(const TFSample& s, double log_floor);

/// out = X - mean(X); output mean is 0 to rounding.
void mean_subtract(NormalizedSample& x);

NormalizedSample persa(const TFSample& s, const FrontEndConfig& cfg);

/// gain_draw is the uniform draw in [0,1) for the random gain; ignored when
/// cfg.augment is false.
NormalizedSample persa_plus(const TFSample& s, const TFSample& noise,
                            const FrontEndConfig& cfg, double gain_draw);

NormalizedSample log_frontend(const TFSample& s, const FrontEndConfig& cfg);
NormalizedSample log_au(const TFSample& s, const FrontEndConfig& cfg,
                        double gain_draw);
NormalizedSample log_t(const TFSample& s, const FrontEndConfig& cfg);
NormalizedSample pcen_frontend(const TFSample& s, const FrontEndConfig& cfg,
                               const PipelineConfig& pipeline);

/// Randomness and noise provisioning for apply_frontend. Gains and noise
/// realizations are derived from (master_seed, sample_index), so concurrent
/// featurization is reproducible. pipeline/filterbank are required for
/// PERSA+ (noise synthesis) and PCEN (smoother time constant).
struct FrontEndContext {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
  const PipelineConfig* pipeline = nullptr;
  const MelFilterbank* filterbank = nullptr;

  std::uint64_t noise_seed() const;
  double gain_draw() const;
};

NormalizedSample apply_frontend(const TFSample& s, const FrontEndConfig& cfg,
                                const FrontEndContext& ctx);

}  // namespace persakit
