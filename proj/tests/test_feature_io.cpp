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

#include <filesystem>

#include "persakit/digest.hpp"
#include "persakit/feature_io.hpp"
#include "persakit/rng.hpp"

using namespace persakit;
namespace fs = std::filesystem;

namespace {

FeatureFile random_feature(std::uint32_t rows, std::uint32_t cols,
                           std::uint64_t seed) {
  Rng rng(seed);
  FeatureFile f;
  f.rows = rows;
  f.cols = cols;
  f.values.resize(static_cast<std::size_t>(rows) * cols);
  for (auto& v : f.values) v = static_cast<float>(rng.uniform(-4.0, 4.0));
  return f;
}

}  // namespace

TEST_CASE("encode/decode identity over random shapes") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rows = static_cast<std::uint32_t>(rng.below(80) + 1);
    const auto cols = static_cast<std::uint32_t>(rng.below(80) + 2);
    const FeatureFile f = random_feature(rows, cols, 100 + trial);
    const FeatureFile back = decode_feature(encode_feature(f));
    CHECK(back.rows == f.rows);
    CHECK(back.cols == f.cols);
    CHECK(back.values == f.values);  // bit-exact
  }
}

TEST_CASE("header layout is stable") {
  const FeatureFile f = random_feature(2, 3, 9);
  const auto bytes = encode_feature(f);
  REQUIRE(bytes.size() == 16 + 24);
  CHECK(bytes[0] == 'P');
  CHECK(bytes[1] == 'S');
  CHECK(bytes[2] == 'A');
  CHECK(bytes[3] == 'F');
  CHECK(bytes[4] == 1);  // version 1, little-endian
  CHECK(bytes[8] == 2);  // L
  CHECK(bytes[12] == 3); // M
}

TEST_CASE("corrupt inputs are rejected") {
  const FeatureFile f = random_feature(4, 4, 11);
  auto bytes = encode_feature(f);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS(decode_feature(bad_magic));

  auto bad_version = bytes;
  bad_version[4] = 9;
  CHECK_THROWS(decode_feature(bad_version));

  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS(decode_feature(truncated));
}

TEST_CASE("file round trip and sidecar") {
  const fs::path dir = fs::temp_directory_path() /
                       ("persakit_featio_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string path = (dir / "sample.psaf").string();

  const FeatureFile f = random_feature(61, 64, 21);
  write_feature(path, f);
  const FeatureFile back = read_feature(path);
  CHECK(back.values == f.values);
  CHECK_FALSE(fs::exists(path + ".tmp"));  // temp renamed away

  FeatureSidecar sc;
  sc.frontend.kind = FrontEndKind::persa_plus;
  sc.frontend.q_db = FrontEndConfig::infinite_q();
  sc.frontend.augment = false;
  sc.master_seed = 777;
  sc.sample_index = 3;
  sc.applied_gain_db = -1.25;
  sc.source_path = "clip.wav";
  sc.source_digest = "00ff00ff00ff00ff";
  write_sidecar(path, sc);

  const FeatureSidecar got = read_sidecar(path);
  CHECK(got.frontend.kind == FrontEndKind::persa_plus);
  CHECK(std::isinf(got.frontend.q_db));
  CHECK(got.frontend.augment == false);
  CHECK(got.master_seed == 777);
  CHECK(got.sample_index == 3);
  CHECK(got.applied_gain_db == -1.25);
  CHECK(got.source_path == "clip.wav");
  CHECK(got.source_digest == "00ff00ff00ff00ff");
  CHECK(got.rng_scheme == kRngSchemeId);
  CHECK(got.pipeline.sample_rate_hz == 16000);

  fs::remove_all(dir);
}

TEST_CASE("digest helpers") {
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
  const char abc[] = {'a', 'b', 'c'};
  CHECK(fnv1a64(abc, 3) == 0xe71fa2190541574bULL);
  CHECK(hex_u64(0xe71fa2190541574bULL) == "e71fa2190541574b");
}
