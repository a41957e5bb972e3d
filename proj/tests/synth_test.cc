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

#include "wct/synth.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "wct/errors.h"
#include "wct/imaging.h"
#include "wct/wavelet.h"

namespace wct {
namespace {

using testing::ReadFile;
using testing::TempDir;

double DetailEnergy2(const GrayImage& block) {
  const WaveletPyramid p = Decompose(block, 2);
  const auto& l2 = p.levels[1];
  return l2.horizontal.Energy() + l2.vertical.Energy() + l2.diagonal.Energy();
}

TEST(SynthPlanTest, IdsLabelsAndAlignedPatches) {
  SynthConfig cfg;
  cfg.n_normal = 4;
  cfg.n_abnormal = 30;
  cfg.seed = 3;
  const auto specs = PlanSynthCorpus(cfg);
  ASSERT_EQ(specs.size(), 34u);
  EXPECT_EQ(specs[0].id, "normal_000");
  EXPECT_EQ(specs[4].id, "abnormal_000");
  for (const auto& s : specs) {
    if (s.label == -1) {
      EXPECT_FALSE(s.patch.has_value());
      continue;
    }
    ASSERT_TRUE(s.patch.has_value());
    const PatchRect& p = *s.patch;
    EXPECT_EQ(p.row % cfg.block_size, 0);
    EXPECT_EQ(p.col % cfg.block_size, 0);
    EXPECT_LE(p.row + p.height, cfg.height);
    EXPECT_LE(p.col + p.width, cfg.width);
    const int blocks = (p.height / cfg.block_size) * (p.width / cfg.block_size);
    EXPECT_GE(blocks, 2);
    EXPECT_LE(blocks, 4);
  }
}

TEST(SynthPlanTest, Validation) {
  SynthConfig cfg;
  cfg.n_abnormal = 0;
  EXPECT_THROW(PlanSynthCorpus(cfg), ConfigError);
  cfg = SynthConfig{};
  cfg.width = 40;
  EXPECT_THROW(PlanSynthCorpus(cfg), ConfigError);
}

TEST(SynthRenderTest, PatchChangesOnlyItsRectangle) {
  SynthConfig cfg;
  cfg.n_normal = 1;
  cfg.n_abnormal = 10;
  cfg.seed = 5;
  for (const auto& s : PlanSynthCorpus(cfg)) {
    if (!s.patch) continue;
    const GrayImage plain = RenderBackground(cfg.width, cfg.height, s.field_seed);
    const GrayImage img = RenderSynthImage(s, cfg);
    int changed_inside = 0;
    for (int r = 0; r < cfg.height; ++r) {
      for (int c = 0; c < cfg.width; ++c) {
        if (s.patch->Contains(r, c)) {
          changed_inside += img.at(r, c) != plain.at(r, c);
        } else {
          ASSERT_EQ(img.at(r, c), plain.at(r, c)) << s.id << " at " << r << "," << c;
        }
      }
    }
    EXPECT_GT(changed_inside, s.patch->height * s.patch->width / 2);
  }
}

TEST(SynthRenderTest, PatchDetailEnergyDominatesBackground) {
  SynthConfig cfg;
  cfg.n_normal = 20;
  cfg.n_abnormal = 20;
  cfg.seed = 7;
  double patch_sum = 0.0, normal_sum = 0.0;
  int patch_n = 0, normal_n = 0;
  for (const auto& s : PlanSynthCorpus(cfg)) {
    const GrayImage img = RenderSynthImage(s, cfg);
    for (int r = 0; r + cfg.block_size <= cfg.height; r += cfg.block_size) {
      for (int c = 0; c + cfg.block_size <= cfg.width; c += cfg.block_size) {
        const double e = DetailEnergy2(Crop(img, r, c, cfg.block_size, cfg.block_size));
        if (!s.patch) {
          normal_sum += e;
          ++normal_n;
        } else if (s.patch->Contains(r, c)) {
          patch_sum += e;
          ++patch_n;
        }
      }
    }
  }
  ASSERT_GT(patch_n, 0);
  EXPECT_GE(patch_sum / patch_n, 3.0 * normal_sum / normal_n);
}

TEST(SynthCorpusTest, ByteIdenticalAcrossRuns) {
  TempDir tmp;
  SynthConfig cfg;
  cfg.n_normal = 3;
  cfg.n_abnormal = 3;
  cfg.seed = 11;
  const Manifest a = WriteSynthCorpus(tmp / "a", cfg);
  WriteSynthCorpus(tmp / "b", cfg);
  ASSERT_EQ(a.entries.size(), 6u);
  for (const auto& e : a.entries) {
    const auto name = e.path.filename().string();
    EXPECT_EQ(ReadFile(tmp / "a" / name), ReadFile(tmp / "b" / name)) << name;
  }
  EXPECT_EQ(ReadFile(tmp / "a" / "manifest.csv"), ReadFile(tmp / "b" / "manifest.csv"));
  const auto truth = ReadTruthCsv(tmp / "a" / "truth.csv");
  ASSERT_EQ(truth.size(), 3u);
  EXPECT_EQ(truth[0].id, "abnormal_000");
  const auto m = ReadManifest(tmp / "a" / "manifest.csv");
  EXPECT_EQ(m.entries[0].path, a.entries[0].path);
  EXPECT_EQ(ReadPgmFile(m.entries[5].path).width(), cfg.width);
}

TEST(SynthCorpusTest, SeedChangesImages) {
  SynthConfig a;
  a.seed = 1;
  SynthConfig b = a;
  b.seed = 2;
  const auto sa = PlanSynthCorpus(a);
  const auto sb = PlanSynthCorpus(b);
  EXPECT_NE(RenderSynthImage(sa[0], a), RenderSynthImage(sb[0], b));
}

}  // namespace
}  // namespace wct
