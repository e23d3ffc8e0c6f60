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

// persa: batch front-end for audio featurization, dataset degradation and
// the robustness benchmarks.
//
//   persa featurize --input clip.wav --frontend persa-plus --out feats/
//   persa degrade gain --manifest in.jsonl --out v3/
//   persa degrade mix --manifest in.jsonl --pools pools.json --out v4/
//   persa bench --frontend log --scenario gain --out report/
//   persa sweep --out report/
//
// Exit codes: 0 success, 1 partial failure (some inputs failed), 2 usage or
// configuration error. All commands are deterministic given their flags and
// seeds. PERSA_SEED serves as the default seed when --seed is not given.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persakit/bench.hpp"
#include "persakit/degrade.hpp"
#include "persakit/digest.hpp"
#include "persakit/feature_io.hpp"
#include "persakit/probe.hpp"
#include "persakit/rng.hpp"
#include "persakit/wav.hpp"

namespace fs = std::filesystem;
using namespace persakit;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PERSA_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

double parse_db_or_inf(const std::string& text, const char* flag) {
  if (text == "inf" || text == "+inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("bad value for ") + flag + ": " + text);
  }
}

std::vector<double> parse_db_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(parse_db_or_inf(token, flag));
  }
  if (out.empty()) throw Error(std::string("empty list for ") + flag);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::vector<std::string> collect_wavs(const std::string& input) {
  if (!fs::exists(input)) throw Error("input does not exist: " + input);
  std::vector<std::string> files;
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::recursive_directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".wav") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(input);
  }
  if (files.empty()) throw Error("no .wav files under " + input);
  return files;
}

struct FeaturizeArgs {
  std::string input;
  std::string out_dir;
  std::string frontend = "persa-plus";
  std::string q = "9";
  double c = 30.0;
  std::uint64_t seed = default_seed();
  bool augment = false;
  int jobs = 1;
};

int run_featurize(const FeaturizeArgs& args) {
  FrontEndConfig cfg;
  cfg.kind = parse_frontend(args.frontend);
  cfg.q_db = parse_db_or_inf(args.q, "--q");
  cfg.c_db = args.c;
  cfg.augment = args.augment;
  cfg.validate();

  PipelineConfig pipeline;
  const MelFilterbank fb = make_mel_filterbank(pipeline);
  const std::vector<std::string> files = collect_wavs(args.input);
  fs::create_directories(args.out_dir);

  std::atomic<int> failures{0};
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= files.size()) return;
      const std::string& path = files[idx];
      try {
        const Waveform w = load_wav(path);
        const std::vector<Waveform> slices = slice_samples(w, pipeline);
        const std::string digest = hex_u64(fnv1a64_file(path));
        const std::string stem = fs::path(path).stem().string();
        for (std::size_t k = 0; k < slices.size(); ++k) {
          const TFSample tf = mel_magnitude(slices[k], pipeline, fb);
          // Sample index mixes the file digest so slice streams are stable
          // regardless of batch composition.
          FrontEndContext ctx;
          ctx.master_seed = args.seed;
          ctx.sample_index = derive_seed(fnv1a64_file(path), k);
          ctx.pipeline = &pipeline;
          ctx.filterbank = &fb;
          const NormalizedSample ns = apply_frontend(tf, cfg, ctx);

          const std::string out_path =
              (fs::path(args.out_dir) /
               (stem + "_slice" + std::to_string(k) + ".psaf"))
                  .string();
          write_feature(out_path, to_feature(ns));

          FeatureSidecar sc;
          sc.pipeline = pipeline;
          sc.frontend = cfg;
          sc.master_seed = args.seed;
          sc.sample_index = ctx.sample_index;
          sc.applied_gain_db = ns.applied_gain_db;
          sc.source_path = path;
          sc.source_digest = digest;
          sc.rng_scheme = kRngSchemeId;
          write_sidecar(out_path, sc);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "featurize failed for " << path << ": " << e.what()
                  << "\n";
        failures.fetch_add(1);
      }
    }
  };

  const int jobs = std::max(1, args.jobs);
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  return failures.load() == 0 ? 0 : 1;
}

DegradationPlan load_plan(const std::string& plan_path, std::uint64_t seed) {
  DegradationPlan plan = DegradationPlan::defaults();
  if (!plan_path.empty()) {
    std::ifstream in(plan_path);
    if (!in) throw Error("cannot open plan: " + plan_path);
    nlohmann::json j;
    in >> j;
    plan = plan_from_json(j);
  }
  plan.seed = seed;
  return plan;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PERSA-family audio front-ends, dataset degradation and "
               "robustness benchmarks"};
  app.require_subcommand(1);

  // featurize
  FeaturizeArgs feat;
  auto* featurize = app.add_subcommand("featurize",
                                       "Convert audio to normalized feature "
                                       "files (PSAF + JSON sidecar)");
  featurize->add_option("--input", feat.input, "wav file or directory")
      ->required();
  featurize->add_option("--out", feat.out_dir, "output directory")->required();
  featurize->add_option("--frontend", feat.frontend,
                        "log|log-au|log-t|persa|persa-plus|pcen");
  featurize->add_option("--q", feat.q, "noise injection level in dB, or inf");
  featurize->add_option("--c", feat.c, "LOG-T dynamic range in dB");
  featurize->add_option("--seed", feat.seed, "master seed");
  featurize->add_option("--augment", feat.augment,
                        "enable the front-end's random gains");
  featurize->add_option("--jobs", feat.jobs, "parallel workers");

  // degrade gain / degrade mix
  auto* degrade = app.add_subcommand("degrade", "Build degraded dataset copies");
  degrade->require_subcommand(1);
  std::string manifest_path, plan_path, pools_path, out_dir;
  std::uint64_t degrade_seed = default_seed();
  double snr_std_override = -1.0;

  auto* gain = degrade->add_subcommand("gain",
                                       "peak-gain randomization per fold and "
                                       "class");
  gain->add_option("--manifest", manifest_path, "input manifest (jsonl)")
      ->required();
  gain->add_option("--plan", plan_path, "degradation plan (json)");
  gain->add_option("--out", out_dir, "output directory")->required();
  gain->add_option("--seed", degrade_seed, "plan seed");

  auto* mix = degrade->add_subcommand("mix",
                                      "additive cross-class interference");
  mix->add_option("--manifest", manifest_path, "input manifest (jsonl)")
      ->required();
  mix->add_option("--plan", plan_path, "degradation plan (json)");
  mix->add_option("--pools", pools_path,
                  "json map of interference class -> audio directory")
      ->required();
  mix->add_option("--out", out_dir, "output directory")->required();
  mix->add_option("--seed", degrade_seed, "plan seed");
  mix->add_option("--snr-std", snr_std_override, "override SNR std dev (dB)");

  // bench
  std::string bench_frontend = "persa-plus", bench_scenario = "clean";
  std::string bench_q = "9", bench_out;
  double bench_c = 30.0;
  int bench_repeats = 3, bench_n_per_class = 64;
  std::uint64_t bench_seed = 42;
  auto* bench = app.add_subcommand("bench",
                                   "train/test the probe under a scenario");
  bench->add_option("--frontend", bench_frontend,
                    "log|log-au|log-t|persa|persa-plus|pcen");
  bench->add_option("--scenario", bench_scenario, "clean|gain|noisy|mixed");
  bench->add_option("--q", bench_q, "PERSA+ q in dB, or inf");
  bench->add_option("--c", bench_c, "LOG-T c in dB");
  bench->add_option("--repeats", bench_repeats, "independent repeats");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--n-per-class", bench_n_per_class, "clips per class");
  bench->add_option("--out", bench_out, "report directory")->required();

  // sweep
  std::string sweep_q_list = "3,6,9,12,15,inf";
  std::string sweep_snr_list = "inf,15,12,9,6,3";
  std::string sweep_c_list = "12,18,24,30,36,48";
  std::string sweep_out;
  int sweep_repeats = 3, sweep_n_per_class = 64;
  std::uint64_t sweep_seed = 42;
  auto* sweep = app.add_subcommand("sweep",
                                   "PERSA+ q-versus-SNR accuracy grid");
  sweep->add_option("--q-list", sweep_q_list, "comma list of q values (dB)");
  sweep->add_option("--snr-list", sweep_snr_list,
                    "comma list of test SNRs (dB)");
  sweep->add_option("--c-list", sweep_c_list, "comma list of LOG-T c values");
  sweep->add_option("--repeats", sweep_repeats, "independent repeats");
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--n-per-class", sweep_n_per_class, "clips per class");
  sweep->add_option("--out", sweep_out, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (featurize->parsed()) {
      return run_featurize(feat);
    }

    if (gain->parsed() || mix->parsed()) {
      DegradationPlan plan = load_plan(plan_path, degrade_seed);
      if (snr_std_override >= 0.0) plan.snr_std_db = snr_std_override;
      const Manifest input = load_manifest(manifest_path);
      fs::create_directories(out_dir);

      Manifest result;
      if (gain->parsed()) {
        result = build_v3(input, plan, out_dir);
      } else {
        std::ifstream in(pools_path);
        if (!in) throw Error("cannot open pools file: " + pools_path);
        nlohmann::json j;
        in >> j;
        const auto dirs = j.get<std::map<std::string, std::string>>();
        result = build_v4(input, plan, load_pools(dirs), out_dir);
      }
      save_manifest((fs::path(out_dir) / "manifest.jsonl").string(), result);
      write_text((fs::path(out_dir) / "plan.json").string(),
                 plan_to_json(plan).dump(2) + "\n");
      return 0;
    }

    if (bench->parsed()) {
      BenchOptions opts;
      opts.frontend.kind = parse_frontend(bench_frontend);
      opts.frontend.q_db = parse_db_or_inf(bench_q, "--q");
      opts.frontend.c_db = bench_c;
      opts.scenario = parse_scenario(bench_scenario);
      opts.repeats = bench_repeats;
      opts.seed = bench_seed;
      opts.n_per_class = bench_n_per_class;
      const BenchResult result = run_benchmark(opts);

      fs::create_directories(bench_out);
      write_text((fs::path(bench_out) / "bench.json").string(),
                 bench_report_json(opts, result).dump(2) + "\n");
      std::cout << frontend_name(opts.frontend.kind) << " / "
                << scenario_name(opts.scenario) << ": "
                << 100.0 * result.mean << " +- " << 100.0 * result.stddev
                << " % over " << opts.repeats << " repeats\n";
      return 0;
    }

    if (sweep->parsed()) {
      SweepOptions opts;
      opts.q_list = parse_db_list(sweep_q_list, "--q-list");
      opts.snr_list = parse_db_list(sweep_snr_list, "--snr-list");
      opts.c_list = parse_db_list(sweep_c_list, "--c-list");
      opts.repeats = sweep_repeats;
      opts.seed = sweep_seed;
      opts.n_per_class = sweep_n_per_class;
      const SweepReport report = run_sweep(opts);

      fs::create_directories(sweep_out);
      write_text((fs::path(sweep_out) / "sweep.json").string(),
                 sweep_report_json(report).dump(2) + "\n");
      const std::string table = sweep_report_table(report);
      write_text((fs::path(sweep_out) / "sweep.txt").string(), table);
      std::cout << table;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
