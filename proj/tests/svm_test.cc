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

#include "wct/svm.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "wct/errors.h"
#include "wct/rng.h"

namespace wct {
namespace {

struct Separable {
  LabeledDataset data;
  std::vector<std::array<double, 2>> points;
};

// Uniform points in the unit square labelled by a random line, with a
// band around the line left empty.
Separable RandomSeparable(Rng& rng, int n, double gap) {
  Separable s;
  const double theta = rng.Uniform(0.0, 6.283185307179586);
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  const double b = rng.Uniform(-0.3, 0.3);
  int pos = 0;
  int neg = 0;
  while (static_cast<int>(s.points.size()) < n) {
    const double x = rng.Uniform(-1.0, 1.0);
    const double y = rng.Uniform(-1.0, 1.0);
    const double d = ux * x + uy * y - b;
    if (std::abs(d) < gap) continue;
    const int label = d > 0 ? kAbnormal : kNormal;
    // Keep both classes represented.
    if (label == kAbnormal && pos >= n - 3 && neg < 3) continue;
    if (label == kNormal && neg >= n - 3 && pos < 3) continue;
    (label == kAbnormal ? pos : neg)++;
    s.points.push_back({x, y});
    s.data.vectors.push_back({x, y});
    s.data.labels.push_back(label);
    s.data.ids.push_back(std::to_string(s.points.size()));
  }
  return s;
}

SvmConfig HardMargin() {
  SvmConfig c;
  c.c = 1e4;
  c.tol = 1e-6;
  c.max_passes = 50;
  return c;
}

TEST(KernelTest, Identities) {
  const FeatureVector x{1.0, 2.0, -1.0};
  const FeatureVector y{0.5, -1.0, 3.0};
  EXPECT_DOUBLE_EQ(KernelEval(KernelSpec::Linear(), x, y), 0.5 - 2.0 - 3.0);
  EXPECT_DOUBLE_EQ(KernelEval(KernelSpec::Polynomial(2, 1.0), x, y), (-4.5 + 1.0) * (-4.5 + 1.0));
  EXPECT_DOUBLE_EQ(KernelEval(KernelSpec::Gaussian(1.0), x, x), 1.0);
  EXPECT_NEAR(KernelEval(KernelSpec::Gaussian(1.0), {0.0, 1.0}, {1.0, 1.0}), std::exp(-1.0), 1e-15);
  const double d2 = 0.25 + 9.0 + 16.0;
  EXPECT_NEAR(KernelEval(KernelSpec::Gaussian(0.1), x, y), std::exp(-0.1 * d2), 1e-15);
  EXPECT_DOUBLE_EQ(KernelEval(KernelSpec::Gaussian(0.7), x, y),
                   KernelEval(KernelSpec::Gaussian(0.7), y, x));
  EXPECT_THROW(KernelEval(KernelSpec::Linear(), x, {1.0}), DataError);
}

TEST(KernelTest, GaussianGramIsPositiveSemidefiniteOnSamples) {
  Rng rng(1);
  std::vector<FeatureVector> pts(8, FeatureVector(3));
  for (auto& p : pts)
    for (double& v : p) v = rng.Normal();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(8);
    for (double& v : c) v = rng.Normal();
    double q = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) q += c[i] * c[j] * KernelEval(KernelSpec::Gaussian(0.5), pts[i], pts[j]);
    EXPECT_GE(q, -1e-12);
  }
}

TEST(KernelTest, ParseAndValidate) {
  EXPECT_EQ(ParseKernelKind("gaussian"), KernelSpec::Kind::kGaussian);
  EXPECT_EQ(ParseKernelKind("linear"), KernelSpec::Kind::kLinear);
  EXPECT_THROW(ParseKernelKind("rbf2"), ConfigError);
  EXPECT_THROW(KernelSpec::Gaussian(0.0).Validate(), ConfigError);
  EXPECT_THROW(KernelSpec::Polynomial(0).Validate(), ConfigError);
}

TEST(SmoTest, XorWithGaussianKernel) {
  LabeledDataset d;
  d.vectors = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  d.labels = {kNormal, kNormal, kAbnormal, kAbnormal};
  d.ids = {"a", "b", "c", "d"};
  const SvmModel m = TrainSvm(d, KernelSpec::Gaussian(1.0), SvmConfig{});
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(Predict(m, d.vectors[i]), d.labels[i]);
  EXPECT_LT(std::abs(DualConstraintResidual(m)), 1e-6);
}

TEST(SmoTest, MarginMatchesBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Separable s = RandomSeparable(rng, 30, 0.05);
    const SvmModel m = TrainSvm(s.data, KernelSpec::Linear(), HardMargin());
    const double margin = 1.0 / std::sqrt(WeightNormSquared(m));
    const double ref = oracle::BruteForceMargin(s.points, s.data.labels);
    EXPECT_NEAR(margin, ref, 0.02 * ref) << "trial " << trial;
    EXPECT_LT(std::abs(DualConstraintResidual(m)), 1e-6);
    for (std::size_t i = 0; i < s.data.size(); ++i)
      EXPECT_EQ(Predict(m, s.data.vectors[i]), s.data.labels[i]);
  }
}

TEST(SmoTest, AlphasRespectBox) {
  Rng rng(3);
  LabeledDataset d;
  for (int i = 0; i < 40; ++i) {
    const int label = i % 2 == 0 ? kAbnormal : kNormal;
    d.vectors.push_back({rng.Normal() + 0.5 * label, rng.Normal()});
    d.labels.push_back(label);
    d.ids.push_back(std::to_string(i));
  }
  SvmConfig cfg;
  cfg.c = 0.5;
  const SvmModel m = TrainSvm(d, KernelSpec::Gaussian(1.0), cfg);
  for (const double a : m.alphas) {
    EXPECT_GT(a, 0.0);
    EXPECT_LE(a, 0.5 + 1e-12);
  }
  EXPECT_LT(std::abs(DualConstraintResidual(m)), 1e-6);
  EXPECT_GT(DualObjective(m), 0.0);
}

TEST(SmoTest, DeterministicForSeed) {
  Rng rng(4);
  const Separable s = RandomSeparable(rng, 25, 0.0);
  SvmConfig cfg;
  cfg.seed = 9;
  const SvmModel a = TrainSvm(s.data, KernelSpec::Gaussian(2.0), cfg);
  const SvmModel b = TrainSvm(s.data, KernelSpec::Gaussian(2.0), cfg);
  EXPECT_EQ(a.alphas, b.alphas);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(SmoTest, RejectsSingleClass) {
  LabeledDataset d;
  d.vectors = {{0.0}, {1.0}};
  d.labels = {kAbnormal, kAbnormal};
  d.ids = {"a", "b"};
  EXPECT_THROW(TrainSvm(d, KernelSpec::Linear(), SvmConfig{}), DataError);
  SvmConfig bad;
  bad.c = 0.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(SvmJsonTest, RoundTripPreservesDecisions) {
  Rng rng(5);
  const Separable s = RandomSeparable(rng, 20, 0.1);
  SvmModel m = TrainSvm(s.data, KernelSpec::Polynomial(2, 1.0), SvmConfig{});
  m.pathway.normalization.min = {-1.0, -1.0};
  m.pathway.normalization.max = {1.0, 1.0};
  m.pathway.subset = {0, 1};
  const SvmModel back = SvmFromJson(ToJson(m));
  for (const auto& v : s.data.vectors)
    EXPECT_EQ(DecisionValueRaw(back, v), DecisionValueRaw(m, v));
  auto j = ToJson(m);
  j["format"] = "other";
  EXPECT_THROW(SvmFromJson(j), DataError);
}

}  // namespace
}  // namespace wct
