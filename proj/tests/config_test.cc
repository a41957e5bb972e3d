/*
 * Copyright 2026 The WCT Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wct/config.h"

#include <gtest/gtest.h>

#include <set>

#include "test_util.h"
#include "wct/errors.h"

namespace wct {
namespace {

TEST(ConfigTest, DefaultsMatchLibraryDefaults) {
  const PipelineConfig c = DefaultConfig();
  EXPECT_EQ(c.experiment.domain, Domain::kWavelet);
  EXPECT_EQ(c.experiment.classifier, ClassifierKind::kSvm);
  EXPECT_EQ(c.experiment.glcm.levels, 64);
  EXPECT_EQ(c.experiment.selection.ga.population_size, 30);
  EXPECT_EQ(c.experiment.selection.ga.target_size, 4);
  EXPECT_DOUBLE_EQ(c.experiment.kernel.gamma, 1.0);
  EXPECT_EQ(c.experiment.cv.k, 10);
  EXPECT_EQ(c.synth.n_normal, 50);
  EXPECT_EQ(c.synth.n_abnormal, 50);
}

TEST(ConfigTest, ShippedDefaultFileMatchesDefaults) {
  PipelineConfig c = DefaultConfig();
  c.experiment.seed = 99;
  ApplyConfigFile(c, std::filesystem::path(WCT_SOURCE_DIR) / "config" / "default.conf");
  EXPECT_EQ(EchoConfig(c), EchoConfig(DefaultConfig()));
}

TEST(ConfigTest, EchoRoundTrips) {
  PipelineConfig c = DefaultConfig();
  ApplyConfigText(c, "seed = 12\nclassifier = bpn\nglcm.angles = 0,90\nselection.fixed = 3,1\n"
                     "ga.penalty_mode = absolute\ncv.scheme = loocv\nsvm.kernel = polynomial\n");
  const std::string echo = EchoConfig(c);
  PipelineConfig back = DefaultConfig();
  ApplyConfigText(back, echo);
  EXPECT_EQ(EchoConfig(back), echo);
  EXPECT_EQ(back.experiment.glcm.angles.size(), 2u);
  EXPECT_EQ(back.experiment.selection.fixed, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(back.experiment.cv.scheme, CvScheme::kLoocv);
}

TEST(ConfigTest, EchoListsEveryKeyOnce) {
  const auto entries = ConfigEntries(DefaultConfig());
  std::set<std::string> keys;
  for (const auto& [k, v] : entries) EXPECT_TRUE(keys.insert(k).second) << k;
  for (const char* k : {"seed", "glcm.levels", "ga.penalty_w", "svm.c", "bpn.momentum",
                        "cv.k", "synth.width", "include_first_level"})
    EXPECT_EQ(keys.count(k), 1u) << k;
}

TEST(ConfigTest, SeedKeySetsBothStreams) {
  PipelineConfig c = DefaultConfig();
  SetConfigValue(c, "seed", "99");
  EXPECT_EQ(c.experiment.seed, 99u);
  EXPECT_EQ(c.synth.seed, 99u);
}

TEST(ConfigTest, CommentsAndBlankLines) {
  const auto kv = ParseConfigText("# header\n\n  block_size = 16   # trailing\nworkers=2\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].first, "block_size");
  EXPECT_EQ(kv[0].second, "16");
  EXPECT_EQ(kv[1].second, "2");
}

TEST(ConfigTest, ErrorsNameLineAndKey) {
  try {
    ParseConfigText("seed = 1\nnot a pair\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  PipelineConfig c = DefaultConfig();
  EXPECT_THROW(SetConfigValue(c, "no.such.key", "1"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "glcm.levels", "sixty"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "svm.c", "1.5x"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "glcm.angles", "0,30"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "domain", "fourier"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "cv.stratified", "maybe"), ConfigError);
  EXPECT_THROW(SetConfigValue(c, "seed", "-3"), ConfigError);
}

TEST(ConfigTest, FileErrors) {
  testing::TempDir tmp;
  PipelineConfig unused = DefaultConfig();
  EXPECT_THROW(ApplyConfigFile(unused, tmp / "missing.conf"), ConfigError);
  testing::WriteFile(tmp / "bad.conf", "cv.k = ten\n");
  PipelineConfig c = DefaultConfig();
  try {
    ApplyConfigFile(c, tmp / "bad.conf");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.conf"), std::string::npos);
  }
}

}  // namespace
}  // namespace wct
