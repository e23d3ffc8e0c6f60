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

#include "persakit/frontends.hpp"

#include <cmath>

#include "persakit/kernels.hpp"
#include "persakit/rng.hpp"

namespace persakit {

namespace {

// Stream tags for seed derivation, so noise and gain draws never collide.
constexpr std::uint64_t kStreamNoise = 0x6e6f697365ULL;
constexpr std::uint64_t kStreamGain = 0x6761696eULL;

NormalizedSample make_output(const TFSample& s, FrontEndKind kind) {
  NormalizedSample out;
  out.rows = s.rows;
  out.cols = s.cols;
  out.kind = kind;
  out.values.resize(s.size());
  return out;
}

void check_not_silent(const TFSample& s, const char* op) {
  if (kernels::peak_abs(s.values.data(), s.size()) == 0.0) {
    throw Error(std::string(op) + ": silent sample");
  }
}

}  // namespace

const char* frontend_name(FrontEndKind k) {
  switch (k) {
    case FrontEndKind::log: return "log";
    case FrontEndKind::log_au: return "log-au";
    case FrontEndKind::log_t: return "log-t";
    case FrontEndKind::persa: return "persa";
    case FrontEndKind::persa_plus: return "persa-plus";
    case FrontEndKind::pcen: return "pcen";
  }
  return "unknown";
}

FrontEndKind parse_frontend(const std::string& name) {
  if (name == "log") return FrontEndKind::log;
  if (name == "log-au") return FrontEndKind::log_au;
  if (name == "log-t") return FrontEndKind::log_t;
  if (name == "persa") return FrontEndKind::persa;
  if (name == "persa-plus") return FrontEndKind::persa_plus;
  if (name == "pcen") return FrontEndKind::pcen;
  throw Error("unknown front-end: " + name);
}

void FrontEndConfig::validate() const {
  if (!(q_db > 0.0))  // infinity passes
    throw Error("frontend: q must be positive or infinite");
  if (!(c_db > 0.0)) throw Error("frontend: c must be positive");
  if (!(au_lo_db < au_hi_db)) throw Error("frontend: need a < b for LOG-AU");
  if (!(log_floor > 0.0)) throw Error("frontend: log_floor must be positive");
  if (!(pcen.alpha > 0.0 && pcen.alpha <= 1.0))
    throw Error("frontend: pcen alpha must be in (0, 1]");
  if (!(pcen.r > 0.0 && pcen.r <= 1.0))
    throw Error("frontend: pcen r must be in (0, 1]");
  if (!(pcen.delta > 0.0 && pcen.eps > 0.0 && pcen.time_constant_s > 0.0))
    throw Error("frontend: pcen constants must be positive");
}

TFSample inject_noise(const TFSample& s, const TFSample& noise, double q_db) {
  if (std::isinf(q_db)) return s;
  if (!s.same_shape(noise)) throw Error("inject_noise: shape mismatch");
  check_not_silent(s, "inject_noise");

  const double p_n = kernels::mean_sq(noise.values.data(), noise.size());
  if (p_n == 0.0) throw Error("inject_noise: noise is identically zero");
  const double p_s = kernels::mean_sq(s.values.data(), s.size());

  const double scale = p_s / (p_n * std::pow(10.0, q_db / 10.0));
  TFSample out(s.rows, s.cols);
  kernels::inject(out.values.data(), s.values.data(), noise.values.data(),
                  scale, s.size());
  return out;
}

NormalizedSample log_compress(const TFSample& s, double log_floor) {
  NormalizedSample out = make_output(s, FrontEndKind::log);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.values[i] = std::log10(s.values[i] + log_floor);
  }
  return out;
}

void mean_subtract(NormalizedSample& x) {
  const double m = kernels::mean(x.values.data(), x.size());
  kernels::add_scalar(x.values.data(), x.size(), -m);
}

NormalizedSample persa(const TFSample& s, const FrontEndConfig& cfg) {
  NormalizedSample out = log_compress(s, cfg.log_floor);
  mean_subtract(out);
  out.kind = FrontEndKind::persa;
  return out;
}

NormalizedSample persa_plus(const TFSample& s, const TFSample& noise,
                            const FrontEndConfig& cfg, double gain_draw) {
  NormalizedSample out =
      log_compress(inject_noise(s, noise, cfg.q_db), cfg.log_floor);
  mean_subtract(out);
  out.kind = FrontEndKind::persa_plus;
  // Random gain goes after mean subtraction; applied before, Eq.-style mean
  // removal would cancel it.
  if (cfg.augment) {
    const double g = -cfg.persa_plus_gain_db +
                     2.0 * cfg.persa_plus_gain_db * gain_draw;
    kernels::add_scalar(out.values.data(), out.size(), g / 20.0);
    out.applied_gain_db = g;
  }
  return out;
}

NormalizedSample log_frontend(const TFSample& s, const FrontEndConfig& cfg) {
  return log_compress(s, cfg.log_floor);
}

NormalizedSample log_au(const TFSample& s, const FrontEndConfig& cfg,
                        double gain_draw) {
  NormalizedSample out = log_compress(s, cfg.log_floor);
  out.kind = FrontEndKind::log_au;
  if (cfg.augment) {
    const double g = cfg.au_lo_db + (cfg.au_hi_db - cfg.au_lo_db) * gain_draw;
    kernels::add_scalar(out.values.data(), out.size(), g / 20.0);
    out.applied_gain_db = g;
  }
  return out;
}

NormalizedSample log_t(const TFSample& s, const FrontEndConfig& cfg) {
  check_not_silent(s, "log_t");
  const double peak = kernels::peak_abs(s.values.data(), s.size());
  const double floor = std::pow(10.0, -cfg.c_db / 20.0);
  NormalizedSample out = make_output(s, FrontEndKind::log_t);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.values[i] = std::log10(s.values[i] / peak + floor);
  }
  return out;
}

NormalizedSample pcen_frontend(const TFSample& s, const FrontEndConfig& cfg,
                               const PipelineConfig& pipeline) {
  const int l_frames = s.rows, m_bands = s.cols;
  const PcenParams& p = cfg.pcen;

  // Smoothing coefficient from the time constant, in frames.
  const double t_frames =
      p.time_constant_s * pipeline.sample_rate_hz / pipeline.hop_len;
  const double b =
      (std::sqrt(1.0 + 4.0 * t_frames * t_frames) - 1.0) /
      (2.0 * t_frames * t_frames);

  std::vector<double> energy(s.size());
  kernels::multiply(energy.data(), s.values.data(), s.values.data(), s.size());

  NormalizedSample out = make_output(s, FrontEndKind::pcen);
  std::vector<double> smoother(energy.begin(), energy.begin() + m_bands);
  const double delta_r = std::pow(p.delta, p.r);
  for (int t = 0; t < l_frames; ++t) {
    const double* e_row = energy.data() + static_cast<std::size_t>(t) * m_bands;
    if (t > 0) kernels::ema_step(smoother.data(), e_row, b, m_bands);
    double* o_row = out.values.data() + static_cast<std::size_t>(t) * m_bands;
    for (int m = 0; m < m_bands; ++m) {
      const double agc = e_row[m] / std::pow(p.eps + smoother[m], p.alpha);
      o_row[m] = std::pow(agc + p.delta, p.r) - delta_r;
    }
  }
  return out;
}

std::uint64_t FrontEndContext::noise_seed() const {
  return derive_seed(master_seed, kStreamNoise, sample_index);
}

double FrontEndContext::gain_draw() const {
  Rng rng(derive_seed(master_seed, kStreamGain, sample_index));
  return rng.next_unit();
}

NormalizedSample apply_frontend(const TFSample& s, const FrontEndConfig& cfg,
                                const FrontEndContext& ctx) {
  cfg.validate();
  switch (cfg.kind) {
    case FrontEndKind::log:
      return log_frontend(s, cfg);
    case FrontEndKind::log_au:
      return log_au(s, cfg, ctx.gain_draw());
    case FrontEndKind::log_t:
      return log_t(s, cfg);
    case FrontEndKind::persa:
      return persa(s, cfg);
    case FrontEndKind::persa_plus: {
      if (std::isinf(cfg.q_db)) {
        // No injection; synthesizing noise would be wasted work.
        NormalizedSample out = persa(s, cfg);
        out.kind = FrontEndKind::persa_plus;
        if (cfg.augment) {
          const double g = -cfg.persa_plus_gain_db +
                           2.0 * cfg.persa_plus_gain_db * ctx.gain_draw();
          kernels::add_scalar(out.values.data(), out.size(), g / 20.0);
          out.applied_gain_db = g;
        }
        return out;
      }
      if (ctx.pipeline == nullptr || ctx.filterbank == nullptr) {
        throw Error("persa-plus: context needs pipeline and filterbank");
      }
      NoiseSpec spec{cfg.noise_kind, ctx.pipeline->slice_ms, ctx.noise_seed()};
      const TFSample noise = noise_tf(spec, *ctx.pipeline, *ctx.filterbank);
      if (noise.rows != s.rows || noise.cols != s.cols) {
        throw Error("persa-plus: sample shape does not match the pipeline");
      }
      return persa_plus(s, noise, cfg, ctx.gain_draw());
    }
    case FrontEndKind::pcen: {
      if (ctx.pipeline == nullptr) {
        throw Error("pcen: context needs the pipeline config");
      }
      return pcen_frontend(s, cfg, *ctx.pipeline);
    }
  }
  throw Error("apply_frontend: unhandled kind");
}

}  // namespace persakit
