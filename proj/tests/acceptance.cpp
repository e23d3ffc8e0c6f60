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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "persakit/bench.hpp"
#include "persakit/degrade.hpp"
#include "persakit/feature_io.hpp"
#include "persakit/frontends.hpp"
#include "persakit/kernels.hpp"
#include "persakit/noise.hpp"
#include "persakit/probe.hpp"
#include "persakit/rng.hpp"
#include "persakit/wav.hpp"

using namespace persakit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += msg;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]));
  }
  return m;
}

TFSample scale_tf(const TFSample& s, double alpha) {
  TFSample out = s;
  kernels::scale(out.values.data(), out.size(), alpha);
  return out;
}

// --- criterion 1 -----------------------------------------------------------

Outcome gain_invariance() {
  Outcome out;
  PipelineConfig pipeline;
  const MelFilterbank fb = make_mel_filterbank(pipeline);
  const TFSample noise =
      noise_tf({NoiseKind::pink, pipeline.slice_ms, 2718}, pipeline, fb);

  FrontEndConfig cfg;
  cfg.augment = false;

  double worst_persa = 0.0, worst_pp = 0.0, worst_logt = 0.0, worst_log = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // Values well above the log floor, so gain shows up exactly.
    const TFSample s = oracles::random_tf(61, 64, 10'000 + trial, 10.0, 100.0);

    cfg.q_db = 9.0;
    const NormalizedSample persa_base = persa(s, cfg);
    const NormalizedSample pp_base = persa_plus(s, noise, cfg, 0.0);
    const NormalizedSample logt_base = log_t(s, cfg);
    const NormalizedSample log_base = log_frontend(s, cfg);

    for (double alpha : {0.1, 10.0}) {
      const TFSample scaled = scale_tf(s, alpha);
      worst_persa = std::max(
          worst_persa, max_abs_diff(persa(scaled, cfg).values, persa_base.values));
      worst_pp = std::max(
          worst_pp,
          max_abs_diff(persa_plus(scaled, noise, cfg, 0.0).values, pp_base.values));
      worst_logt = std::max(
          worst_logt, max_abs_diff(log_t(scaled, cfg).values, logt_base.values));

      const NormalizedSample log_scaled = log_frontend(scaled, cfg);
      for (std::size_t i = 0; i < log_scaled.values.size(); ++i) {
        worst_log = std::max(worst_log,
                             std::fabs(log_scaled.values[i] -
                                       log_base.values[i] - std::log10(alpha)));
      }
    }
  }
  out.require(worst_persa < 1e-5, "persa moved " + fmt(worst_persa));
  out.require(worst_pp < 1e-5, "persa+ moved " + fmt(worst_pp));
  out.require(worst_logt < 1e-5, "log-t moved " + fmt(worst_logt));
  out.require(worst_log < 1e-5, "log offset error " + fmt(worst_log));
  out.detail = "worst: persa " + fmt(worst_persa) + ", persa+ " + fmt(worst_pp) +
               ", log-t " + fmt(worst_logt) + ", log " + fmt(worst_log);
  return out;
}

// --- criterion 2 -----------------------------------------------------------

Outcome injected_snr_exactness() {
  Outcome out;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const TFSample s = oracles::random_tf(61, 64, 20'000 + trial, 0.01, 1.0);
    const TFSample n = oracles::random_tf(61, 64, 21'000 + trial, 0.05, 1.0);
    const double p_s = kernels::mean_sq(s.values.data(), s.size());
    for (double q : {3.0, 6.0, 9.0, 12.0, 15.0}) {
      const TFSample sn = inject_noise(s, n, q);
      double added = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        added += sn.values[i] * sn.values[i] - s.values[i] * s.values[i];
      }
      added /= static_cast<double>(s.size());
      const double want = p_s * std::pow(10.0, -q / 10.0);
      worst = std::max(worst, std::fabs(added - want) / want);
    }
  }
  out.require(worst < 1e-6, "relative error " + fmt(worst));
  out.detail = "worst relative error " + fmt(worst);
  return out;
}

// --- criterion 3 -----------------------------------------------------------

Outcome degeneration() {
  Outcome out;
  FrontEndConfig cfg;
  cfg.q_db = FrontEndConfig::infinite_q();
  cfg.augment = false;
  const TFSample noise = oracles::random_tf(61, 64, 5, 0.1, 1.0);

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const TFSample s = oracles::random_tf(61, 64, 30'000 + trial, 0.001, 2.0);
    worst = std::max(worst, max_abs_diff(persa_plus(s, noise, cfg, 0.0).values,
                                         persa(s, cfg).values));
  }
  out.require(worst < 1e-6, "max deviation " + fmt(worst));
  out.detail = "max deviation " + fmt(worst);
  return out;
}

// --- criterion 4 -----------------------------------------------------------

Outcome logt_dr_cap() {
  Outcome out;
  FrontEndConfig cfg;
  std::string margins;
  for (double c : {12.0, 30.0, 48.0}) {
    cfg.c_db = c;
    double worst_range_db = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const TFSample s = oracles::random_tf(61, 64, 40'000 + trial);
      const NormalizedSample y = log_t(s, cfg);
      double lo = y.values[0], hi = y.values[0];
      for (double v : y.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      worst_range_db = std::max(worst_range_db, (hi - lo) * 20.0);
    }
    if (!margins.empty()) margins += ", ";
    margins += "c=" + fmt(c) + ": " + fmt(worst_range_db) + " dB";
    out.require(worst_range_db <= c + 0.2,
                "c=" + fmt(c) + " worst range " + fmt(worst_range_db) +
                    " dB > " + fmt(c + 0.2));
  }
  out.detail = margins;
  return out;
}

// --- criterion 5 -----------------------------------------------------------

Outcome mixing_exactness() {
  Outcome out;
  Rng rng(51);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Waveform sig, intf;
    sig.sample_rate_hz = intf.sample_rate_hz = 16000;
    sig.samples.resize(400 + rng.below(400));
    intf.samples.resize(100 + rng.below(600));
    for (auto& s : sig.samples) s = rng.gaussian();
    for (auto& s : intf.samples) s = rng.gaussian();
    const double target = rng.uniform(-10.0, 30.0);
    const Waveform mixed = mix_at_snr(sig, intf, target);

    double p_noise = 0.0;
    for (std::size_t i = 0; i < sig.samples.size(); ++i) {
      const double d = mixed.samples[i] - sig.samples[i];
      p_noise += d * d;
    }
    p_noise /= static_cast<double>(sig.samples.size());
    const double measured = 10.0 * std::log10(
        kernels::mean_sq(sig.samples.data(), sig.samples.size()) / p_noise);
    worst = std::max(worst, std::fabs(measured - target));
  }
  out.require(worst < 0.01, "worst |measured - target| " + fmt(worst) + " dB");
  out.detail = "worst deviation " + fmt(worst) + " dB over 1000 pairs";
  return out;
}

// --- criterion 6 -----------------------------------------------------------

Outcome pink_slope() {
  Outcome out;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Waveform w = synth_noise({NoiseKind::pink, 4000, seed}, 16000);
    const double slope =
        oracles::psd_slope_db_per_decade(w.samples, 16000, 100.0, 4000.0);
    worst = std::max(worst, std::fabs(slope + 10.0));
  }
  out.require(worst <= 1.5, "worst |slope+10| " + fmt(worst) + " dB/decade");
  out.detail = "worst |slope - (-10)| " + fmt(worst) + " dB/decade, 10 seeds";
  return out;
}

// --- criterion 7 -----------------------------------------------------------

Outcome gradient_check() {
  Outcome out;
  Rng rng(99);
  const std::size_t n = 30, d = 9, classes = 3;
  FeatureMatrix x;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (auto& v : row) v = rng.uniform(-2.0, 2.0);
    x.add_row(row);
    y.push_back(static_cast<int>(rng.below(classes)));
  }
  std::vector<double> w(classes * d), b(classes);
  for (auto& v : w) v = rng.uniform(-0.5, 0.5);
  for (auto& v : b) v = rng.uniform(-0.5, 0.5);

  std::vector<double> grad_w, grad_b;
  probe_loss_grad(w, b, x, y, classes, 1e-4, &grad_w, &grad_b);
  double gmax = 0.0;
  for (double g : grad_w) gmax = std::max(gmax, std::fabs(g));
  for (double g : grad_b) gmax = std::max(gmax, std::fabs(g));

  const double h = 1e-5;
  double worst = 0.0;
  const auto check_coord = [&](std::vector<double>& param, std::size_t j,
                               double analytic) {
    const double save = param[j];
    param[j] = save + h;
    const double fp = probe_loss_grad(w, b, x, y, classes, 1e-4, nullptr, nullptr);
    param[j] = save - h;
    const double fm = probe_loss_grad(w, b, x, y, classes, 1e-4, nullptr, nullptr);
    param[j] = save;
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::fabs(analytic - fd) /
                                std::max(std::fabs(fd), 0.01 * gmax));
  };
  for (std::size_t j = 0; j < w.size(); ++j) check_coord(w, j, grad_w[j]);
  for (std::size_t j = 0; j < b.size(); ++j) check_coord(b, j, grad_b[j]);

  out.require(worst < 1e-4, "max relative error " + fmt(worst));
  out.detail = "max relative error " + fmt(worst);
  return out;
}

// --- criterion 8 -----------------------------------------------------------

Outcome trend_reproduction() {
  Outcome out;
  BenchOptions opts;

  const auto bench = [&](FrontEndKind kind, Scenario scenario) {
    opts.frontend = FrontEndConfig{};
    opts.frontend.kind = kind;
    opts.scenario = scenario;
    return run_benchmark(opts);
  };

  const BenchResult log_clean = bench(FrontEndKind::log, Scenario::clean);
  const BenchResult log_gain = bench(FrontEndKind::log, Scenario::gain);
  const BenchResult persa_clean = bench(FrontEndKind::persa, Scenario::clean);
  const BenchResult persa_gain = bench(FrontEndKind::persa, Scenario::gain);
  const BenchResult log_noisy = bench(FrontEndKind::log, Scenario::noisy);
  const BenchResult pp_noisy =
      bench(FrontEndKind::persa_plus, Scenario::noisy);

  const double log_drop = log_clean.mean - log_gain.mean;
  const double persa_drop = persa_clean.mean - persa_gain.mean;
  const double noisy_gap = pp_noisy.mean - log_noisy.mean;

  out.require(log_drop >= 0.10,
              "log clean->gain drop only " + fmt(100 * log_drop) + " pts");
  out.require(persa_drop <= 0.02,
              "persa clean->gain drop " + fmt(100 * persa_drop) + " pts");
  out.require(noisy_gap >= 0.10,
              "persa+ over log under noise only " + fmt(100 * noisy_gap) +
                  " pts");
  std::ostringstream os;
  os << "log " << fmt(100 * log_clean.mean) << "->" << fmt(100 * log_gain.mean)
     << " | persa " << fmt(100 * persa_clean.mean) << "->"
     << fmt(100 * persa_gain.mean) << " | noisy: persa+ "
     << fmt(100 * pp_noisy.mean) << " vs log " << fmt(100 * log_noisy.mean);
  out.detail = os.str();
  return out;
}

// --- criterion 9 -----------------------------------------------------------

Outcome sweep_structure() {
  Outcome out;
  SweepOptions opts;
  const SweepReport report = run_sweep(opts);

  const std::size_t nq = opts.q_list.size();
  const std::size_t ns = opts.snr_list.size();
  out.require(report.mean.size() == nq, "row count off");
  for (const auto& row : report.mean) {
    out.require(row.size() == ns, "column count off");
  }

  double worst_bump = 0.0;
  for (std::size_t qi = 0; qi < nq; ++qi) {
    for (std::size_t si = 1; si < ns; ++si) {
      worst_bump = std::max(worst_bump,
                            report.mean[qi][si] - report.mean[qi][si - 1]);
    }
  }
  out.require(worst_bump <= 0.02,
              "row rises by " + fmt(100 * worst_bump) + " pts as SNR drops");

  BenchOptions bench_opts;
  bench_opts.frontend.kind = FrontEndKind::persa;
  bench_opts.frontend.augment = false;
  bench_opts.scenario = Scenario::clean;
  const BenchResult persa_clean = run_benchmark(bench_opts);

  // q = inf is the last row, snr = inf the first column, per the defaults.
  const double corner = report.mean[nq - 1][0];
  const double gap = std::fabs(corner - persa_clean.mean);
  out.require(gap <= persa_clean.stddev + 1e-12,
              "corner cell " + fmt(100 * corner) + " vs persa clean " +
                  fmt(100 * persa_clean.mean) + " +- " +
                  fmt(100 * persa_clean.stddev));

  std::ostringstream os;
  os << "worst SNR-row bump " << fmt(100 * worst_bump)
     << " pts; corner gap " << fmt(100 * gap) << " pts (std "
     << fmt(100 * persa_clean.stddev) << ")";
  out.detail = os.str();
  return out;
}

// --- criterion 10 ----------------------------------------------------------

Outcome watermark_masking() {
  Outcome out;
  PipelineConfig pipeline;
  const MelFilterbank fb = make_mel_filterbank(pipeline);

  // -20 dB field; the probed bin holds quiet -60 dB detail that the
  // watermark replaces with a -120 dB identifier.
  const int ti = 30, mi = 32;
  TFSample clean(61, 64);
  for (auto& v : clean.values) v = 0.1;
  clean.at(ti, mi) = 1e-3;
  TFSample marked = clean;
  marked.at(ti, mi) = 1e-6;

  FrontEndConfig cfg;
  cfg.kind = FrontEndKind::persa_plus;
  cfg.q_db = 9.0;
  cfg.augment = false;
  const TFSample noise =
      noise_tf({NoiseKind::pink, pipeline.slice_ms, 31337}, pipeline, fb);

  const double pp_shift =
      std::fabs(persa_plus(marked, noise, cfg, 0.0).at(ti, mi) -
                persa_plus(clean, noise, cfg, 0.0).at(ti, mi));
  const double log_shift = std::fabs(log_frontend(marked, cfg).at(ti, mi) -
                                     log_frontend(clean, cfg).at(ti, mi));

  out.require(pp_shift < 0.01, "persa+ shift " + fmt(pp_shift));
  out.require(log_shift > 1.0, "log shift only " + fmt(log_shift));
  out.detail = "persa+ shift " + fmt(pp_shift) + ", log shift " + fmt(log_shift);
  return out;
}

// --- criterion 11 ----------------------------------------------------------

Outcome roundtrip_determinism() {
  Outcome out;

  // Feature container identity.
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    FeatureFile f;
    f.rows = static_cast<std::uint32_t>(rng.below(60) + 1);
    f.cols = static_cast<std::uint32_t>(rng.below(60) + 2);
    f.values.resize(static_cast<std::size_t>(f.rows) * f.cols);
    for (auto& v : f.values) v = static_cast<float>(rng.uniform(-5.0, 5.0));
    const FeatureFile back = decode_feature(encode_feature(f));
    out.require(back.values == f.values && back.rows == f.rows &&
                    back.cols == f.cols,
                "feature round trip not bit-exact");
  }

  // Identical CLI invocations produce identical bytes.
  const fs::path dir = fs::temp_directory_path() /
                       ("persakit_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  Waveform tone;
  tone.sample_rate_hz = 16000;
  tone.samples.resize(16000);
  for (std::size_t i = 0; i < tone.samples.size(); ++i) {
    tone.samples[i] = 0.4 * std::sin(2.0 * 3.14159265358979323846 * 440.0 * i / 16000.0);
  }
  save_wav((dir / "tone.wav").string(), tone);

  const auto run_once = [&](const std::string& out_dir) {
    const std::string cmd = std::string(PERSA_CLI_PATH) +
                            " featurize --input " + (dir / "tone.wav").string() +
                            " --frontend persa-plus --q 9 --seed 17 --out " +
                            (dir / out_dir).string() + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  out.require(run_once("a") == 0, "cli featurize failed");
  out.require(run_once("b") == 0, "cli featurize failed");

  const auto bytes = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  for (const char* name : {"tone_slice0.psaf", "tone_slice0.psaf.json"}) {
    out.require(bytes(dir / "a" / name) == bytes(dir / "b" / name),
                std::string(name) + " differs between identical runs");
  }
  fs::remove_all(dir);
  out.detail = "PSAF identity over 20 shapes; CLI outputs byte-identical";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    double time_limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gain-invariance suite", 10.0, gain_invariance},
      {2, "injected-SNR exactness", 5.0, injected_snr_exactness},
      {3, "persa+ degenerates to persa at q=inf", 0.0, degeneration},
      {4, "LOG-T dynamic-range cap", 0.0, logt_dr_cap},
      {5, "mix_at_snr exactness", 0.0, mixing_exactness},
      {6, "pink-noise spectral slope", 0.0, pink_slope},
      {7, "probe gradient check", 0.0, gradient_check},
      {8, "front-end trend reproduction", 300.0, trend_reproduction},
      {9, "q-versus-SNR sweep structure", 900.0, sweep_structure},
      {10, "watermark masking", 0.0, watermark_masking},
      {11, "round-trip and determinism", 0.0, roundtrip_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s) {
      outcome.ok = false;
      outcome.detail += (outcome.detail.empty() ? "" : "; ");
      outcome.detail += "runtime " + fmt(elapsed) + "s exceeds " +
                        fmt(criterion.time_limit_s) + "s";
    }
    if (!outcome.ok) ++failures;
    std::printf("[%s] criterion %2d: %s  (%.1fs)%s%s\n",
                outcome.ok ? "PASS" : "FAIL", criterion.number,
                criterion.title, elapsed, outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  }
  return failures == 0 ? 0 : 1;
}
