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

#include "persakit/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "persakit/degrade.hpp"
#include "persakit/noise.hpp"
#include "persakit/probe.hpp"
#include "persakit/rng.hpp"

namespace persakit {

namespace {

// Seed-stream tags; shared by benchmark and sweep so matching cells see
// identical data.
constexpr std::uint64_t kTagTrainData = 0x7472ULL;
constexpr std::uint64_t kTagTestData = 0x7465ULL;
constexpr std::uint64_t kTagTrainFeat = 0x6674ULL;
constexpr std::uint64_t kTagTestFeat = 0x6665ULL;
constexpr std::uint64_t kTagScenario = 0x7363ULL;

const double kGainLevels[] = {0.0, -10.0, -20.0, -30.0};

struct LabeledFeatures {
  FeatureMatrix x;
  std::vector<int> y;
};

LabeledFeatures featurize(const std::vector<LabeledClip>& clips,
                          const FrontEndConfig& cfg,
                          const PipelineConfig& pipeline,
                          const MelFilterbank& fb, std::uint64_t master_seed) {
  LabeledFeatures out;
  for (std::size_t i = 0; i < clips.size(); ++i) {
    const TFSample tf = mel_magnitude(clips[i].audio, pipeline, fb);
    FrontEndContext ctx;
    ctx.master_seed = master_seed;
    ctx.sample_index = i;
    ctx.pipeline = &pipeline;
    ctx.filterbank = &fb;
    out.x.add_row(pool_features(apply_frontend(tf, cfg, ctx)));
    out.y.push_back(clips[i].label);
  }
  return out;
}

std::vector<LabeledClip> perturb_gain(const std::vector<LabeledClip>& clips,
                                      std::uint64_t seed) {
  std::vector<LabeledClip> out;
  out.reserve(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    Rng rng(derive_seed(seed, i));
    const double level = kGainLevels[rng.below(4)];
    LabeledClip c;
    c.audio = peak_normalize_dbfs(clips[i].audio, level);
    c.label = clips[i].label;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LabeledClip> perturb_noisy(const std::vector<LabeledClip>& clips,
                                       std::uint64_t seed, double snr_mean,
                                       double snr_std) {
  std::vector<LabeledClip> out;
  out.reserve(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    Rng rng(derive_seed(seed, i));
    // Interferer: a clip of a different class from the same set.
    std::size_t pick;
    do {
      pick = static_cast<std::size_t>(rng.below(clips.size()));
    } while (clips[pick].label == clips[i].label);
    double snr = snr_mean + snr_std * rng.gaussian();
    snr = std::clamp(snr, snr_mean - 3.0 * snr_std, snr_mean + 3.0 * snr_std);

    LabeledClip c;
    c.audio = mix_at_snr(clips[i].audio, clips[pick].audio, snr);
    c.label = clips[i].label;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LabeledClip> apply_scenario(const std::vector<LabeledClip>& clips,
                                        Scenario scenario,
                                        std::uint64_t seed) {
  switch (scenario) {
    case Scenario::clean:
      return clips;
    case Scenario::gain:
      return perturb_gain(clips, seed);
    case Scenario::noisy:
      return perturb_noisy(clips, seed, 9.0, 3.0);
    case Scenario::mixed: {
      std::vector<LabeledClip> out = clips;
      const auto noisy = perturb_noisy(clips, seed, 9.0, 3.0);
      out.insert(out.end(), noisy.begin(), noisy.end());
      return out;
    }
  }
  throw Error("unhandled scenario");
}

void summarize(const std::vector<double>& runs, double* mean, double* stddev) {
  double m = 0.0;
  for (double r : runs) m += r;
  m /= static_cast<double>(runs.size());
  double var = 0.0;
  for (double r : runs) var += (r - m) * (r - m);
  *mean = m;
  *stddev = runs.size() > 1 ? std::sqrt(var / (runs.size() - 1)) : 0.0;
}

std::string q_label(double q) {
  if (std::isinf(q)) return "inf";
  std::ostringstream os;
  os << q;
  return os.str();
}

nlohmann::json number_or_inf(double v) {
  return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v);
}

}  // namespace

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::clean: return "clean";
    case Scenario::gain: return "gain";
    case Scenario::noisy: return "noisy";
    case Scenario::mixed: return "mixed";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "clean") return Scenario::clean;
  if (name == "gain") return Scenario::gain;
  if (name == "noisy") return Scenario::noisy;
  if (name == "mixed") return Scenario::mixed;
  throw Error("unknown scenario: " + name);
}

BenchResult run_benchmark(const BenchOptions& opts) {
  opts.frontend.validate();
  opts.pipeline.validate();
  if (opts.repeats < 1) throw Error("bench: repeats must be >= 1");
  const MelFilterbank fb = make_mel_filterbank(opts.pipeline);

  BenchResult result;
  for (int r = 0; r < opts.repeats; ++r) {
    const std::uint64_t rs = derive_seed(opts.seed, static_cast<std::uint64_t>(r));

    SynthTaskSpec spec;
    spec.n_per_class = opts.n_per_class;
    spec.duration_ms = opts.pipeline.slice_ms;
    spec.sample_rate_hz = opts.pipeline.sample_rate_hz;
    spec.seed = derive_seed(rs, kTagTrainData);
    const auto train_clips = synth_dataset(spec);
    spec.seed = derive_seed(rs, kTagTestData);
    const auto test_clips = synth_dataset(spec);

    const auto perturbed =
        apply_scenario(test_clips, opts.scenario, derive_seed(rs, kTagScenario));

    // Train featurization keeps the front-end's own augmentation; test
    // featurization is deterministic.
    FrontEndConfig test_cfg = opts.frontend;
    test_cfg.augment = false;

    LabeledFeatures train = featurize(train_clips, opts.frontend,
                                      opts.pipeline, fb,
                                      derive_seed(rs, kTagTrainFeat));
    LabeledFeatures test = featurize(perturbed, test_cfg, opts.pipeline, fb,
                                     derive_seed(rs, kTagTestFeat));

    Standardizer standardizer;
    standardizer.fit(train.x);
    standardizer.transform(train.x);
    standardizer.transform(test.x);

    const ProbeModel model =
        train_probe(train.x, train.y, kSynthClassCount, ProbeHyper{});
    result.runs.push_back(evaluate(model, test.x, test.y));
  }
  summarize(result.runs, &result.mean, &result.stddev);
  return result;
}

SweepReport run_sweep(const SweepOptions& opts) {
  opts.pipeline.validate();
  if (opts.repeats < 1) throw Error("sweep: repeats must be >= 1");
  if (opts.q_list.empty() || opts.snr_list.empty()) {
    throw Error("sweep: empty q or snr grid");
  }
  const MelFilterbank fb = make_mel_filterbank(opts.pipeline);

  const std::size_t nq = opts.q_list.size();
  const std::size_t ns = opts.snr_list.size();
  std::vector<std::vector<std::vector<double>>> cell_runs(
      nq, std::vector<std::vector<double>>(ns));
  std::vector<std::vector<double>> c_runs(opts.c_list.size());

  for (int r = 0; r < opts.repeats; ++r) {
    const std::uint64_t rs = derive_seed(opts.seed, static_cast<std::uint64_t>(r));

    SynthTaskSpec spec;
    spec.n_per_class = opts.n_per_class;
    spec.duration_ms = opts.pipeline.slice_ms;
    spec.sample_rate_hz = opts.pipeline.sample_rate_hz;
    spec.seed = derive_seed(rs, kTagTrainData);
    const auto train_clips = synth_dataset(spec);
    spec.seed = derive_seed(rs, kTagTestData);
    const auto test_clips = synth_dataset(spec);

    // One pink realization per clip, shared across the whole grid and
    // rescaled per SNR.
    std::vector<Waveform> pink(test_clips.size());
    for (std::size_t i = 0; i < pink.size(); ++i) {
      NoiseSpec nspec;
      nspec.kind = NoiseKind::pink;
      nspec.duration_ms = opts.pipeline.slice_ms;
      nspec.seed = derive_seed(rs, kTagScenario, i);
      pink[i] = synth_noise(nspec, opts.pipeline.sample_rate_hz);
    }

    for (std::size_t qi = 0; qi < nq; ++qi) {
      FrontEndConfig cfg;
      cfg.kind = FrontEndKind::persa_plus;
      cfg.q_db = opts.q_list[qi];
      cfg.augment = false;

      LabeledFeatures train = featurize(train_clips, cfg, opts.pipeline, fb,
                                        derive_seed(rs, kTagTrainFeat));
      Standardizer standardizer;
      standardizer.fit(train.x);
      standardizer.transform(train.x);
      const ProbeModel model =
          train_probe(train.x, train.y, kSynthClassCount, ProbeHyper{});

      for (std::size_t si = 0; si < ns; ++si) {
        std::vector<LabeledClip> contaminated;
        contaminated.reserve(test_clips.size());
        for (std::size_t i = 0; i < test_clips.size(); ++i) {
          LabeledClip c;
          c.audio = mix_at_snr(test_clips[i].audio, pink[i], opts.snr_list[si]);
          c.label = test_clips[i].label;
          contaminated.push_back(std::move(c));
        }
        LabeledFeatures test = featurize(contaminated, cfg, opts.pipeline, fb,
                                         derive_seed(rs, kTagTestFeat));
        standardizer.transform(test.x);
        cell_runs[qi][si].push_back(evaluate(model, test.x, test.y));
      }
    }

    // Fig.-style companion: LOG-T against c under the gain scenario.
    const auto gain_test =
        perturb_gain(test_clips, derive_seed(rs, kTagScenario));
    for (std::size_t ci = 0; ci < opts.c_list.size(); ++ci) {
      FrontEndConfig cfg;
      cfg.kind = FrontEndKind::log_t;
      cfg.c_db = opts.c_list[ci];
      cfg.augment = false;

      LabeledFeatures train = featurize(train_clips, cfg, opts.pipeline, fb,
                                        derive_seed(rs, kTagTrainFeat));
      Standardizer standardizer;
      standardizer.fit(train.x);
      standardizer.transform(train.x);
      const ProbeModel model =
          train_probe(train.x, train.y, kSynthClassCount, ProbeHyper{});

      LabeledFeatures test = featurize(gain_test, cfg, opts.pipeline, fb,
                                       derive_seed(rs, kTagTestFeat));
      standardizer.transform(test.x);
      c_runs[ci].push_back(evaluate(model, test.x, test.y));
    }
  }

  SweepReport report;
  report.options = opts;
  report.mean.assign(nq, std::vector<double>(ns, 0.0));
  report.stddev.assign(nq, std::vector<double>(ns, 0.0));
  for (std::size_t qi = 0; qi < nq; ++qi) {
    for (std::size_t si = 0; si < ns; ++si) {
      summarize(cell_runs[qi][si], &report.mean[qi][si],
                &report.stddev[qi][si]);
    }
  }
  report.c_mean.resize(opts.c_list.size());
  report.c_stddev.resize(opts.c_list.size());
  for (std::size_t ci = 0; ci < opts.c_list.size(); ++ci) {
    summarize(c_runs[ci], &report.c_mean[ci], &report.c_stddev[ci]);
  }
  return report;
}

nlohmann::json bench_report_json(const BenchOptions& opts,
                                 const BenchResult& result) {
  return {{"frontend", frontend_name(opts.frontend.kind)},
          {"scenario", scenario_name(opts.scenario)},
          {"q_db", number_or_inf(opts.frontend.q_db)},
          {"c_db", opts.frontend.c_db},
          {"augment", opts.frontend.augment},
          {"repeats", opts.repeats},
          {"seed", opts.seed},
          {"n_per_class", opts.n_per_class},
          {"accuracy_mean", result.mean},
          {"accuracy_std", result.stddev},
          {"runs", result.runs},
          {"rng_scheme", kRngSchemeId}};
}

nlohmann::json sweep_report_json(const SweepReport& report) {
  nlohmann::json q_list = nlohmann::json::array();
  for (double q : report.options.q_list) q_list.push_back(number_or_inf(q));
  nlohmann::json snr_list = nlohmann::json::array();
  for (double s : report.options.snr_list) snr_list.push_back(number_or_inf(s));
  return {{"q_list", q_list},
          {"snr_list", snr_list},
          {"repeats", report.options.repeats},
          {"seed", report.options.seed},
          {"n_per_class", report.options.n_per_class},
          {"accuracy_mean", report.mean},
          {"accuracy_std", report.stddev},
          {"logt_c_sweep",
           {{"c_list", report.options.c_list},
            {"mean", report.c_mean},
            {"std", report.c_stddev}}},
          {"rng_scheme", kRngSchemeId}};
}

std::string sweep_report_table(const SweepReport& report) {
  const std::size_t nq = report.options.q_list.size();
  const std::size_t ns = report.options.snr_list.size();

  // Column-wise best, for the highlight markers.
  std::vector<double> col_best(ns, 0.0);
  for (std::size_t si = 0; si < ns; ++si) {
    for (std::size_t qi = 0; qi < nq; ++qi) {
      col_best[si] = std::max(col_best[si], report.mean[qi][si]);
    }
  }

  std::ostringstream os;
  os << "accuracy % (mean +/- std over " << report.options.repeats
     << " repeats); * marks cells within 1 point of the column best\n\n";
  os << "        SNR (dB)\n";
  char buf[64];
  os << "q (dB) ";
  for (std::size_t si = 0; si < ns; ++si) {
    std::snprintf(buf, sizeof(buf), " %14s",
                  q_label(report.options.snr_list[si]).c_str());
    os << buf;
  }
  os << "\n";
  for (std::size_t qi = 0; qi < nq; ++qi) {
    std::snprintf(buf, sizeof(buf), "%-7s",
                  q_label(report.options.q_list[qi]).c_str());
    os << buf;
    for (std::size_t si = 0; si < ns; ++si) {
      const bool best =
          report.mean[qi][si] >= col_best[si] - 0.01;  // within 1 point
      std::snprintf(buf, sizeof(buf), "  %5.1f +- %4.1f%s",
                    100.0 * report.mean[qi][si],
                    100.0 * report.stddev[qi][si], best ? "*" : " ");
      os << buf;
    }
    os << "\n";
  }

  os << "\nLOG-T against c (dB), gain scenario:\n";
  os << "c      ";
  for (double c : report.options.c_list) {
    std::snprintf(buf, sizeof(buf), " %14.0f", c);
    os << buf;
  }
  os << "\n       ";
  for (std::size_t ci = 0; ci < report.options.c_list.size(); ++ci) {
    std::snprintf(buf, sizeof(buf), "  %5.1f +- %4.1f ",
                  100.0 * report.c_mean[ci], 100.0 * report.c_stddev[ci]);
    os << buf;
  }
  os << "\n";
  return os.str();
}

}  // namespace persakit
