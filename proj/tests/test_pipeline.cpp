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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "persakit/pipeline.hpp"
#include "persakit/rng.hpp"
#include "persakit/wav.hpp"

using namespace persakit;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir =
      fs::temp_directory_path() / ("persakit_pipeline_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

Waveform sine_wave(double freq_hz, double seconds, int rate, double amp = 0.5) {
  Waveform w;
  w.sample_rate_hz = rate;
  const std::size_t n = static_cast<std::size_t>(seconds * rate);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amp * std::sin(2.0 * 3.14159265358979323846 * freq_hz * i / rate);
  }
  return w;
}

}  // namespace

TEST_CASE("config validation") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.hop_len = 600;
  CHECK_THROWS(cfg.validate());
  cfg = PipelineConfig{};
  cfg.slice_ms = 400;
  CHECK_THROWS(cfg.validate());
  cfg = PipelineConfig{};
  cfg.slice_ms = 6000;
  CHECK_THROWS(cfg.validate());
  cfg = PipelineConfig{};
  cfg.fft_len = 640;  // not a power of two
  CHECK_THROWS(cfg.validate());
  cfg = PipelineConfig{};
  cfg.mel_bands = 1;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("wav round trip and scaling") {
  const fs::path dir = temp_dir();
  const std::string path = (dir / "tone.wav").string();

  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = {32767.0 / 32768.0, 0.0, -1.0, 0.5};
  save_wav(path, w);
  const Waveform back = load_wav(path);
  REQUIRE(back.samples.size() == 4);
  CHECK(back.sample_rate_hz == 16000);
  // 16-bit PCM value 32767 reads back as 32767/32768.
  CHECK(back.samples[0] == doctest::Approx(0.99997).epsilon(1e-4));
  CHECK(back.samples[0] == 32767.0 / 32768.0);
  CHECK(back.samples[2] == -1.0);
  fs::remove_all(dir);
}

TEST_CASE("all-zero wav decodes to zeros") {
  const fs::path dir = temp_dir();
  const std::string path = (dir / "silence.wav").string();
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(16000, 0.0);
  save_wav(path, w);
  const Waveform back = load_wav(path);
  CHECK(back.samples.size() == 16000);
  for (double s : back.samples) CHECK(s == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("stereo and non-PCM files are rejected") {
  const fs::path dir = temp_dir();
  const std::string path = (dir / "stereo.wav").string();
  // Minimal stereo header with an empty data chunk.
  std::string bytes;
  bytes += "RIFF";
  const auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  const auto put16 = [&](std::uint16_t v) {
    bytes.push_back(static_cast<char>(v & 0xff));
    bytes.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  put32(36);
  bytes += "WAVEfmt ";
  put32(16);
  put16(1);  // PCM
  put16(2);  // stereo
  put32(16000);
  put32(16000 * 4);
  put16(4);
  put16(16);
  bytes += "data";
  put32(0);
  std::ofstream(path, std::ios::binary) << bytes;

  CHECK_THROWS_WITH_AS(load_wav(path), doctest::Contains("channel count"),
                       Error);
  fs::remove_all(dir);
}

TEST_CASE("slicing") {
  PipelineConfig cfg;
  SUBCASE("2.5 s gives two 1 s slices") {
    const Waveform w = sine_wave(440.0, 2.5, 16000);
    const auto slices = slice_samples(w, cfg);
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].samples.size() == 16000);
    CHECK(slices[1].samples.size() == 16000);
  }
  SUBCASE("shorter than one slice gives an empty list") {
    const Waveform w = sine_wave(440.0, 0.4, 16000);
    CHECK(slice_samples(w, cfg).empty());
  }
  SUBCASE("3 s concatenates back to the original head") {
    const Waveform w = sine_wave(123.0, 3.0, 16000);
    const auto slices = slice_samples(w, cfg);
    REQUIRE(slices.size() == 3);
    std::size_t pos = 0;
    for (const auto& s : slices) {
      for (double v : s.samples) CHECK(v == w.samples[pos++]);
    }
    CHECK(pos == 48000);
  }
  SUBCASE("sample-rate mismatch is an error") {
    const Waveform w = sine_wave(440.0, 1.0, 8000);
    CHECK_THROWS_WITH_AS(slice_samples(w, cfg), doctest::Contains("mismatch"),
                         Error);
  }
}

TEST_CASE("filterbank invariants") {
  PipelineConfig cfg;
  const MelFilterbank fb = make_mel_filterbank(cfg);
  REQUIRE(fb.bands == 64);
  REQUIRE(fb.bins == 257);

  for (int m = 0; m < fb.bands; ++m) {
    double peak = 0.0;
    int positive = 0;
    for (int k = 0; k < fb.bins; ++k) {
      CHECK(fb.row(m)[k] >= 0.0);
      if (fb.row(m)[k] > 0.0) ++positive;
      peak = std::max(peak, fb.row(m)[k]);
    }
    CHECK(positive >= 1);
    CHECK(peak == 1.0);
  }

  // Centers strictly increasing and equally spaced on the mel scale.
  const double mel_step = hz_to_mel(8000.0) / (fb.bands + 1);
  for (int m = 0; m < fb.bands; ++m) {
    if (m > 0) CHECK(fb.center_hz[m] > fb.center_hz[m - 1]);
    CHECK(hz_to_mel(fb.center_hz[m]) ==
          doctest::Approx(mel_step * (m + 1)).epsilon(1e-9));
  }
}

TEST_CASE("mel_magnitude basics") {
  PipelineConfig cfg;
  const MelFilterbank fb = make_mel_filterbank(cfg);

  SUBCASE("zeros in, zeros out, L = 61") {
    Waveform w;
    w.sample_rate_hz = 16000;
    w.samples.assign(16000, 0.0);
    const TFSample tf = mel_magnitude(w, cfg, fb);
    CHECK(tf.rows == 61);
    CHECK(tf.cols == 64);
    for (double v : tf.values) CHECK(v == 0.0);
  }

  SUBCASE("sine at a filter's center lands in that band") {
    const int band = 20;
    const Waveform w = sine_wave(fb.center_hz[band], 1.0, 16000);
    const TFSample tf = mel_magnitude(w, cfg, fb);

    std::vector<double> band_mean(64, 0.0);
    for (int t = 0; t < tf.rows; ++t) {
      for (int m = 0; m < 64; ++m) band_mean[m] += tf.at(t, m);
    }
    int argmax = 0;
    for (int m = 1; m < 64; ++m) {
      if (band_mean[m] > band_mean[argmax]) argmax = m;
    }

    // Oracle: direct DFT of one windowed frame projected through the bank.
    const auto window = hann_window(cfg.window_len);
    std::vector<std::complex<double>> frame(cfg.fft_len, {0.0, 0.0});
    for (int i = 0; i < cfg.window_len; ++i) {
      frame[i] = {w.samples[i] * window[i], 0.0};
    }
    const auto spec = oracles::naive_dft(frame, false);
    int oracle_argmax = 0;
    double oracle_best = -1.0;
    for (int m = 0; m < 64; ++m) {
      double acc = 0.0;
      for (int k = 0; k < fb.bins; ++k) {
        acc += fb.row(m)[k] * std::norm(spec[k]);
      }
      if (acc > oracle_best) {
        oracle_best = acc;
        oracle_argmax = m;
      }
    }
    CHECK(argmax == oracle_argmax);
    CHECK(argmax == band);
  }
}

TEST_CASE("gain linearity of the magnitude pipeline") {
  PipelineConfig cfg;
  const MelFilterbank fb = make_mel_filterbank(cfg);
  Rng rng(99);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.resize(16000);
  for (auto& s : w.samples) s = rng.uniform(-0.05, 0.05);

  const TFSample base = mel_magnitude(w, cfg, fb);
  for (double alpha : {0.1, 2.0, 10.0}) {
    Waveform scaled = w;
    for (auto& s : scaled.samples) s *= alpha;
    const TFSample got = mel_magnitude(scaled, cfg, fb);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      CHECK(got.values[i] ==
            doctest::Approx(alpha * base.values[i]).epsilon(1e-5));
    }
  }
}

TEST_CASE("white-noise energy is positive and finite; output deterministic") {
  PipelineConfig cfg;
  const MelFilterbank fb = make_mel_filterbank(cfg);
  Rng rng(7);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.resize(16000);
  for (auto& s : w.samples) s = 0.1 * rng.gaussian();

  const TFSample a = mel_magnitude(w, cfg, fb);
  const TFSample b = mel_magnitude(w, cfg, fb);
  CHECK(a.values == b.values);  // bit-identical

  double acc = 0.0;
  for (double v : a.values) {
    CHECK(std::isfinite(v));
    acc += v * v;
  }
  CHECK(acc / a.values.size() > 0.0);
  CHECK(std::isfinite(acc));
}
