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

#include "persakit/feature_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "persakit/digest.hpp"
#include "persakit/rng.hpp"

namespace persakit {

namespace {

static_assert(std::endian::native == std::endian::little,
              "PSAF I/O assumes a little-endian host");

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void atomic_write(const std::string& path, const void* data,
                  std::size_t len) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write: " + tmp);
    f.write(static_cast<const char*>(data),
            static_cast<std::streamsize>(len));
    if (!f) throw Error("short write: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("rename failed for " + path + ": " + ec.message());
}

}  // namespace

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for digest: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a64(bytes.data(), bytes.size());
}

std::string hex_u64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

FeatureFile to_feature(const NormalizedSample& s) {
  FeatureFile f;
  f.rows = static_cast<std::uint32_t>(s.rows);
  f.cols = static_cast<std::uint32_t>(s.cols);
  f.values.assign(s.values.begin(), s.values.end());
  return f;
}

std::vector<std::uint8_t> encode_feature(const FeatureFile& f) {
  if (static_cast<std::uint64_t>(f.rows) * f.cols != f.values.size()) {
    throw Error("feature payload does not match header shape");
  }
  std::vector<std::uint8_t> out;
  out.reserve(16 + f.values.size() * 4);
  out.insert(out.end(), {'P', 'S', 'A', 'F'});
  put_u32(out, kFeatureFileVersion);
  put_u32(out, f.rows);
  put_u32(out, f.cols);
  const std::size_t payload = f.values.size() * 4;
  const std::size_t head = out.size();
  out.resize(head + payload);
  std::memcpy(out.data() + head, f.values.data(), payload);
  return out;
}

FeatureFile decode_feature(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "PSAF", 4) != 0) {
    throw Error("not a PSAF feature file");
  }
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kFeatureFileVersion) {
    throw Error("unsupported PSAF version " + std::to_string(version));
  }
  FeatureFile f;
  f.rows = get_u32(bytes.data() + 8);
  f.cols = get_u32(bytes.data() + 12);
  const std::uint64_t count = static_cast<std::uint64_t>(f.rows) * f.cols;
  if (bytes.size() != 16 + count * 4) {
    throw Error("PSAF payload length does not match header");
  }
  f.values.resize(count);
  std::memcpy(f.values.data(), bytes.data() + 16, count * 4);
  return f;
}

void write_feature(const std::string& path, const FeatureFile& f) {
  const std::vector<std::uint8_t> bytes = encode_feature(f);
  atomic_write(path, bytes.data(), bytes.size());
}

FeatureFile read_feature(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open feature file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_feature(bytes);
}

void write_sidecar(const std::string& feature_path, const FeatureSidecar& sc) {
  nlohmann::json j;
  j["pipeline"] = {{"sample_rate_hz", sc.pipeline.sample_rate_hz},
                   {"window_len", sc.pipeline.window_len},
                   {"hop_len", sc.pipeline.hop_len},
                   {"fft_len", sc.pipeline.fft_len},
                   {"mel_bands", sc.pipeline.mel_bands},
                   {"slice_ms", sc.pipeline.slice_ms}};
  j["frontend"] = {
      {"kind", frontend_name(sc.frontend.kind)},
      {"q_db", std::isinf(sc.frontend.q_db) ? nlohmann::json("inf")
                                            : nlohmann::json(sc.frontend.q_db)},
      {"c_db", sc.frontend.c_db},
      {"au_range_db", {sc.frontend.au_lo_db, sc.frontend.au_hi_db}},
      {"persa_plus_gain_db", sc.frontend.persa_plus_gain_db},
      {"augment", sc.frontend.augment},
      {"log_floor", sc.frontend.log_floor},
      {"noise_kind",
       sc.frontend.noise_kind == NoiseKind::pink ? "pink" : "white"},
      {"pcen",
       {{"alpha", sc.frontend.pcen.alpha},
        {"delta", sc.frontend.pcen.delta},
        {"r", sc.frontend.pcen.r},
        {"time_constant_s", sc.frontend.pcen.time_constant_s},
        {"eps", sc.frontend.pcen.eps}}}};
  j["master_seed"] = sc.master_seed;
  j["sample_index"] = sc.sample_index;
  j["applied_gain_db"] = sc.applied_gain_db;
  j["source_path"] = sc.source_path;
  j["source_digest"] = sc.source_digest;
  j["rng_scheme"] = sc.rng_scheme.empty() ? kRngSchemeId : sc.rng_scheme;

  const std::string text = j.dump(2) + "\n";
  atomic_write(feature_path + ".json", text.data(), text.size());
}

FeatureSidecar read_sidecar(const std::string& feature_path) {
  std::ifstream in(feature_path + ".json");
  if (!in) throw Error("cannot open sidecar for " + feature_path);
  nlohmann::json j;
  in >> j;

  FeatureSidecar sc;
  const auto& p = j.at("pipeline");
  sc.pipeline.sample_rate_hz = p.at("sample_rate_hz");
  sc.pipeline.window_len = p.at("window_len");
  sc.pipeline.hop_len = p.at("hop_len");
  sc.pipeline.fft_len = p.at("fft_len");
  sc.pipeline.mel_bands = p.at("mel_bands");
  sc.pipeline.slice_ms = p.at("slice_ms");

  const auto& f = j.at("frontend");
  sc.frontend.kind = parse_frontend(f.at("kind"));
  if (f.at("q_db").is_string()) {
    sc.frontend.q_db = FrontEndConfig::infinite_q();
  } else {
    sc.frontend.q_db = f.at("q_db");
  }
  sc.frontend.c_db = f.at("c_db");
  sc.frontend.au_lo_db = f.at("au_range_db")[0];
  sc.frontend.au_hi_db = f.at("au_range_db")[1];
  sc.frontend.persa_plus_gain_db = f.at("persa_plus_gain_db");
  sc.frontend.augment = f.at("augment");
  sc.frontend.log_floor = f.at("log_floor");
  sc.frontend.noise_kind =
      f.at("noise_kind") == "pink" ? NoiseKind::pink : NoiseKind::white;
  const auto& pc = f.at("pcen");
  sc.frontend.pcen.alpha = pc.at("alpha");
  sc.frontend.pcen.delta = pc.at("delta");
  sc.frontend.pcen.r = pc.at("r");
  sc.frontend.pcen.time_constant_s = pc.at("time_constant_s");
  sc.frontend.pcen.eps = pc.at("eps");

  sc.master_seed = j.at("master_seed");
  sc.sample_index = j.at("sample_index");
  sc.applied_gain_db = j.at("applied_gain_db");
  sc.source_path = j.at("source_path");
  sc.source_digest = j.at("source_digest");
  sc.rng_scheme = j.at("rng_scheme");
  return sc;
}

}  // namespace persakit
