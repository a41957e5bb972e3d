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

#include "wct/features.h"

#include <gtest/gtest.h>

#include "wct/errors.h"

namespace wct {
namespace {

LabeledDataset Small() {
  LabeledDataset d;
  d.vectors = {{0.0, 10.0, 5.0}, {2.0, 20.0, 5.0}, {4.0, 15.0, 5.0}};
  d.labels = {kAbnormal, kNormal, kAbnormal};
  d.ids = {"a", "b", "c"};
  return d;
}

TEST(NormalizerTest, MinMaxPerColumn) {
  const LabeledDataset d = Small();
  const NormalizationParams p = FitNormalizer(d);
  EXPECT_EQ(p.min, (std::vector<double>{0.0, 10.0, 5.0}));
  EXPECT_EQ(p.max, (std::vector<double>{4.0, 20.0, 5.0}));
  const auto n = ApplyNormalizer(p, d);
  EXPECT_EQ(n.vectors[1], (FeatureVector{0.5, 1.0, 0.0}));
  EXPECT_EQ(n.vectors[2], (FeatureVector{1.0, 0.5, 0.0}));
}

TEST(NormalizerTest, ClampsUnseenValues) {
  const NormalizationParams p = FitNormalizer(Small());
  EXPECT_EQ(ApplyNormalizer(p, FeatureVector{-3.0, 40.0, 9.0}),
            (FeatureVector{0.0, 1.0, 0.0}));
  EXPECT_THROW(ApplyNormalizer(p, FeatureVector{1.0}), DataError);
}

TEST(DatasetTest, SubsetProjectCount) {
  const LabeledDataset d = Small();
  EXPECT_EQ(d.CountLabel(kAbnormal), 2u);
  const LabeledDataset s = d.Subset({2, 0});
  EXPECT_EQ(s.ids, (std::vector<std::string>{"c", "a"}));
  const LabeledDataset p = d.Project({2, 0});
  EXPECT_EQ(p.vectors[1], (FeatureVector{5.0, 2.0}));
  EXPECT_THROW(d.Project({3}), DataError);
}

TEST(DatasetTest, Validation) {
  LabeledDataset d = Small();
  EXPECT_NO_THROW(d.Validate());
  d.labels[0] = 0;
  EXPECT_THROW(d.Validate(), DataError);
  d = Small();
  d.vectors[1].pop_back();
  EXPECT_THROW(d.Validate(), DataError);
}

TEST(PathwayTest, JsonRoundTripAndApply) {
  FeaturePathway p{FitNormalizer(Small()), {1, 0}};
  const FeaturePathway back = PathwayFromJson(ToJson(p));
  EXPECT_EQ(back.subset, p.subset);
  EXPECT_EQ(back.normalization.min, p.normalization.min);
  EXPECT_EQ(back.Apply({2.0, 20.0, 5.0}), (FeatureVector{1.0, 0.5}));
  auto j = ToJson(p);
  j["feature_subset"] = {7};
  EXPECT_THROW(PathwayFromJson(j), DataError);
}

}  // namespace
}  // namespace wct
